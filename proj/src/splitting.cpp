#include <algorithm>
#include <map>

#include "hyinv/numberfield.hpp"

// Splitting-field construction. Fields are built as successive primitive
// extensions Q(theta) -> Q(alpha + c*theta); factorization over a number
// field goes through Trager norms (resultants computed by interpolation).
// Numerics only ever choose between candidates; every choice is certified
// by an exact identity afterwards.

namespace hyinv {
namespace {

constexpr int kNormWorkCap = 64; // hard cap on Trager norm degrees

// Lagrange interpolation through (x_i, y_i).
QPoly lagrange(const std::vector<std::pair<Rational, Rational>>& pts) {
    QPoly acc;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        QPoly num = QPoly::constant(Rational(1));
        Rational den(1);
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            num = num * (QPoly::x() - QPoly::constant(pts[j].first));
            den *= pts[i].first - pts[j].first;
        }
        acc = acc + num * (pts[i].second / den);
    }
    return acc;
}

// Norm from K[x] down to Q[x]: the product over all embeddings of K of the
// coefficient-embedded polynomial. Computed as Res_y(minpoly(y), g~(x,y)) by
// evaluation at rational points and interpolation; specialization commutes
// because minpoly is monic in y.
QPoly trager_norm(const UPoly& g) {
    const FieldPtr& k = g.field();
    int deg_k = k->degree();
    int target = deg_k * g.degree();
    if (target > kNormWorkCap)
        throw CapExceeded("splitting-field work cap: norm degree " + std::to_string(target));
    std::vector<std::pair<Rational, Rational>> pts;
    long x0 = 0;
    while (static_cast<int>(pts.size()) < target + 1) {
        Rational x(x0);
        // A(y) = sum_k coordpoly_k(y) * x^k
        QPoly a;
        Rational pw(1);
        for (int kk = 0; kk <= g.degree(); ++kk) {
            QPoly coordpoly(std::vector<Rational>(g.coeff(kk).coords()));
            a = a + coordpoly * pw;
            pw *= x;
        }
        pts.emplace_back(x, resultant(k->minpoly(), a));
        x0 = x0 > 0 ? -x0 : -x0 + 1;
    }
    QPoly r = lagrange(pts);
    if (r.degree() != target || !r.leading().is_one())
        throw InternalError("norm interpolation produced unexpected degree");
    return r;
}

// Dyadic rational below v (used for box construction).
Rational dyadic_floor(const mpf_class& v, int bits) {
    mpf_class scaled = v;
    mpf_mul_2exp(scaled.get_mpf_t(), scaled.get_mpf_t(), static_cast<unsigned>(bits));
    mpz_class zfloor;
    mpz_set_f(zfloor.get_mpz_t(), scaled.get_mpf_t());
    Integer den = 1;
    den <<= static_cast<unsigned>(bits);
    return Rational(Integer(zfloor), den);
}

NumberField::Box make_box(const BigComplex& center, const mpf_class& separation) {
    // delta = 2^-k < separation/8; center snapped to a finer dyadic grid.
    mpf_class target = separation / 8;
    int kbits = 1;
    mpf_class val(0.5, 320);
    while (val >= target && kbits < 600) {
        val /= 2;
        ++kbits;
    }
    Rational delta(Integer(1), Integer(1) << static_cast<unsigned>(kbits));
    Rational cre = dyadic_floor(center.re, kbits + 24);
    Rational cim = dyadic_floor(center.im, kbits + 24);
    return {cre - delta, cre + delta, cim - delta, cim + delta};
}

mpf_class min_pairwise_distance(const std::vector<BigComplex>& pts) {
    mpf_class best(0, 320);
    bool first = true;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            mpf_class d = (pts[i] - pts[j]).abs();
            if (first || d < best) {
                best = d;
                first = false;
            }
        }
    if (first) best = 1;
    return best;
}

struct Extension {
    FieldPtr field;                      // K2 (no conjugation data yet)
    NFElem alpha;                        // the adjoined root, as an element of K2
    NFElem theta_image;                  // image of the old generator in K2
    Integer comb_coeff;                  // gamma = alpha + comb_coeff * theta_old
};

// Builds K2 = K(alpha) for g irreducible over K, deg g >= 2, as a primitive
// extension. Deterministic: fixed candidate order for the combination
// coefficient and for the numeric root choice.
Extension extend_field(const FieldPtr& k, const UPoly& g, int degree_cap, unsigned prec) {
    int target_deg = k->degree() * g.degree();
    if (target_deg > degree_cap)
        throw CapExceeded("splitting-field degree cap: extension degree " + std::to_string(target_deg) +
                          " > " + std::to_string(degree_cap));

    if (k->is_rational_field()) {
        // K2 is generated by alpha directly; minimal polynomial is g itself.
        QPoly m(std::vector<Rational>([&] {
            std::vector<Rational> c;
            for (int i = 0; i <= g.degree(); ++i) c.push_back(g.coeff(i).rational_value());
            return c;
        }()));
        auto roots = complex_roots(m, prec);
        BigComplex alpha_num = roots.front();
        NumberField::Box box = make_box(alpha_num, min_pairwise_distance(roots));
        FieldPtr k2 = make_field_unchecked(m, box);
        Extension ext{k2, k2->theta(), k2->from_rational(Rational(0)), Integer(0)};
        return ext;
    }

    BigComplex theta_num = k->theta_approx(prec);
    // numeric coefficients of g at theta
    std::vector<BigComplex> gc;
    for (int i = 0; i <= g.degree(); ++i) gc.push_back(g.coeff(i).approx(prec));
    auto g_roots = complex_roots(gc, prec);
    BigComplex alpha_num = g_roots.front();

    const long c_candidates[] = {1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8, -8};
    for (long c : c_candidates) {
        // gamma = alpha + c*theta; R = Norm(g(x - c*theta)) has gamma as a root.
        UPoly inner(k, {k->theta() * Rational(-c), k->one()});
        UPoly gs = g.compose(inner);
        QPoly r = trager_norm(gs);
        if (squarefree_part(r).degree() != r.degree()) continue;
        auto fac = factor_rational_poly(r, std::max(r.degree(), 24));

        BigComplex gamma_num = alpha_num + BigComplex(mpf_class(c, prec), mpf_class(0, prec)) * theta_num;
        // pick the factor vanishing at gamma (numerically), then check degree
        int best = -1;
        mpf_class best_res(0, prec), second_res(0, prec);
        for (std::size_t i = 0; i < fac.factors.size(); ++i) {
            mpf_class res = qpoly_eval(fac.factors[i].first, gamma_num).abs();
            if (best < 0 || res < best_res) {
                second_res = best < 0 ? res : best_res;
                best_res = res;
                best = static_cast<int>(i);
            } else if (res < second_res || fac.factors.size() == 1) {
                second_res = res;
            }
        }
        const QPoly& m = fac.factors[static_cast<std::size_t>(best)].first;
        if (m.degree() != target_deg) continue; // gamma not primitive for this c
        if (fac.factors.size() > 1 && !(best_res * 1000000 < second_res))
            throw InternalError("ambiguous factor selection; raise precision");

        auto m_roots = complex_roots(m, prec);
        NumberField::Box box = make_box(gamma_num, min_pairwise_distance(m_roots));
        FieldPtr k2 = make_field_unchecked(m, box);

        // Recover theta inside K2: the unique common root of minpoly_K(y) and
        // B(y) = g~(gamma - c*y, y).
        UPoly a2 = UPoly::from_qpoly(k2, k->minpoly());
        UPoly inner2(k2, {k2->theta(), k2->from_rational(Rational(-c))}); // gamma - c*y
        UPoly b2(k2);
        UPoly pw(k2, {k2->one()});
        for (int kk = 0; kk <= g.degree(); ++kk) {
            QPoly coordpoly(std::vector<Rational>(g.coeff(kk).coords()));
            b2 = b2 + UPoly::from_qpoly(k2, coordpoly) * pw;
            pw = pw * inner2;
        }
        UPoly gcd = upoly_gcd(a2, b2);
        if (gcd.degree() != 1) continue;
        NFElem theta_image = -(gcd.coeff(0) / gcd.coeff(1));
        if (!UPoly::from_qpoly(k2, k->minpoly()).eval(theta_image).is_zero())
            throw InternalError("theta image fails its minimal polynomial");
        // numeric agreement
        BigComplex ti = theta_image.approx(prec);
        mpf_class tol(1, prec);
        mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec / 3);
        if ((ti - theta_num).abs() > tol) throw InternalError("theta image numeric mismatch");

        NFElem alpha = k2->theta() - theta_image * Rational(c);
        // certify: mapped g vanishes at alpha
        auto embed_one = [&](const NFElem& e) {
            NFElem acc = k2->zero(), p = k2->one();
            for (std::size_t j = 0; j < e.coords().size(); ++j) {
                acc = acc + p * e.coords()[j];
                if (j + 1 < e.coords().size()) p = p * theta_image;
            }
            return acc;
        };
        UPoly g_in_k2 = g.map_coeffs(k2, embed_one);
        if (!g_in_k2.eval(alpha).is_zero())
            throw InternalError("adjoined root fails its defining polynomial");

        return Extension{k2, alpha, theta_image, Integer(c)};
    }
    throw InternalError("no primitive element found for extension");
}

// Embedding of K into K2 given the image of theta, as a coordinate matrix.
struct Embedding {
    FieldPtr from, to;
    QMatrix mat; // deg(to) x deg(from)
    NFElem apply(const NFElem& e) const {
        std::size_t dt = static_cast<std::size_t>(to->degree());
        std::size_t df = static_cast<std::size_t>(from->degree());
        std::vector<Rational> out(dt);
        for (std::size_t j = 0; j < df; ++j) {
            if (e.coords()[j].is_zero()) continue;
            for (std::size_t i = 0; i < dt; ++i) out[i] += mat[i][j] * e.coords()[j];
        }
        return NFElem(to, std::move(out));
    }
};

Embedding make_embedding(const FieldPtr& from, const FieldPtr& to, const NFElem& theta_image) {
    Embedding emb{from, to, {}};
    std::size_t dt = static_cast<std::size_t>(to->degree());
    std::size_t df = static_cast<std::size_t>(from->degree());
    emb.mat.assign(dt, std::vector<Rational>(df));
    NFElem pw = to->one();
    for (std::size_t j = 0; j < df; ++j) {
        for (std::size_t i = 0; i < dt; ++i) emb.mat[i][j] = pw.coords()[i];
        if (j + 1 < df) pw = pw * theta_image;
    }
    return emb;
}

} // namespace

std::vector<UPoly> factor_over_field(const UPoly& g_in, int degree_cap) {
    const FieldPtr& k = g_in.field();
    UPoly g = g_in.monic();
    if (g.degree() <= 0) return {};
    if (g.degree() == 1) return {g};

    if (k->is_rational_field()) {
        std::vector<Rational> c;
        for (int i = 0; i <= g.degree(); ++i) c.push_back(g.coeff(i).rational_value());
        auto fac = factor_rational_poly(QPoly(std::move(c)), std::max(g.degree(), degree_cap));
        std::vector<UPoly> out;
        for (const auto& [f, mult] : fac.factors)
            for (int m = 0; m < mult; ++m) out.push_back(UPoly::from_qpoly(k, f));
        return out;
    }

    const long shifts[] = {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5};
    for (long s : shifts) {
        UPoly inner(k, {k->theta() * Rational(-s), k->one()});
        UPoly gs = s == 0 ? g : g.compose(inner);
        QPoly norm = trager_norm(gs);
        if (squarefree_part(norm).degree() != norm.degree()) continue;
        auto fac = factor_rational_poly(norm, std::max(norm.degree(), degree_cap));
        if (fac.factors.size() == 1) return {g};
        std::vector<UPoly> out;
        UPoly check(k, {k->one()});
        for (const auto& [h, mult] : fac.factors) {
            UPoly hs = UPoly::from_qpoly(k, h);
            if (s != 0) {
                UPoly shift_back(k, {k->theta() * Rational(s), k->one()});
                hs = hs.compose(shift_back);
            }
            UPoly f = upoly_gcd(g, hs).monic();
            if (f.degree() <= 0) throw InternalError("Trager factor recovery failed");
            out.push_back(f);
            check = check * f;
        }
        if (!(check == g)) throw InternalError("Trager factors do not multiply back");
        return out;
    }
    throw InternalError("no squarefree Trager norm found");
}

namespace {

struct TowerState {
    FieldPtr field;
    std::vector<int> root_factor;                      // root index -> q-factor id
    std::vector<NFElem> root_value;                    // root index -> element
    std::vector<std::pair<std::size_t, Integer>> comb; // theta = sum coeff * root
};

} // namespace

SplittingResult split_over_q(const std::vector<QPoly>& polys, int degree_cap) {
    // Distinct irreducible factors over Q across all inputs.
    std::vector<QPoly> qfactors;
    std::vector<std::vector<std::pair<int, int>>> input_factors(polys.size()); // (factor id, multiplicity)
    auto factor_id = [&](const QPoly& f) {
        for (std::size_t i = 0; i < qfactors.size(); ++i)
            if (qfactors[i] == f) return static_cast<int>(i);
        qfactors.push_back(f);
        return static_cast<int>(qfactors.size()) - 1;
    };

    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].is_zero()) throw Error("splitting field of the zero polynomial");
        if (polys[i].degree() == 0) continue;
        auto fac = factor_rational_poly(polys[i], std::max(degree_cap, polys[i].degree()));
        for (const auto& [f, mult] : fac.factors) input_factors[i].emplace_back(factor_id(f), mult);
    }

    bool need_i = false;
    for (const auto& f : qfactors)
        if (count_real_roots(f) < f.degree()) { need_i = true; break; }
    if (need_i) {
        QPoly x2p1({Rational(1), Rational(0), Rational(1)});
        factor_id(x2p1);
    }

    TowerState tw;
    tw.field = NumberField::rationals();
    std::vector<UPoly> remaining;
    for (const auto& f : qfactors) remaining.push_back(UPoly::from_qpoly(tw.field, f));

    auto register_root = [&](int fid, const NFElem& value) {
        tw.root_factor.push_back(fid);
        tw.root_value.push_back(value);
    };

    for (;;) {
        int work = -1;
        for (std::size_t i = 0; i < remaining.size(); ++i)
            if (remaining[i].degree() >= 1) { work = static_cast<int>(i); break; }
        if (work < 0) break;

        auto factors = factor_over_field(remaining[static_cast<std::size_t>(work)], degree_cap);
        UPoly nonlinear(tw.field);
        bool have_nonlinear = false;
        UPoly g_pick(tw.field);
        for (const auto& f : factors) {
            if (f.degree() == 1) {
                register_root(work, -f.coeff(0));
            } else if (!have_nonlinear) {
                g_pick = f;
                have_nonlinear = true;
            } else {
                // keep for later passes
                nonlinear = nonlinear.is_zero() ? f : nonlinear * f;
            }
        }
        if (!have_nonlinear) {
            remaining[static_cast<std::size_t>(work)] = UPoly(tw.field, {tw.field->one()});
            continue;
        }

        Extension ext = extend_field(tw.field, g_pick, degree_cap, 320);
        Embedding emb = make_embedding(tw.field, ext.field, ext.theta_image);

        // migrate state into the new field
        for (auto& rv : tw.root_value) rv = emb.apply(rv);
        for (auto& rp : remaining) rp = rp.map_coeffs(ext.field, [&](const NFElem& e) { return emb.apply(e); });
        std::vector<std::pair<std::size_t, Integer>> new_comb;
        new_comb.emplace_back(tw.root_value.size(), Integer(1)); // the new root, registered below
        if (ext.comb_coeff != 0)
            for (const auto& [idx, coeff] : tw.comb) new_comb.emplace_back(idx, coeff * ext.comb_coeff);
        tw.comb = std::move(new_comb);
        tw.field = ext.field;
        register_root(work, ext.alpha);

        // divide out the adjoined root from its factor product
        UPoly g_embedded = g_pick.map_coeffs(tw.field, [&](const NFElem& e) { return emb.apply(e); });
        UPoly lin(tw.field, {-ext.alpha, tw.field->one()});
        UPoly rest = UPoly::divrem(g_embedded, lin).first;
        UPoly rem_new = rest;
        if (!nonlinear.is_zero()) {
            UPoly nl = nonlinear.map_coeffs(tw.field, [&](const NFElem& e) { return emb.apply(e); });
            rem_new = rem_new * nl;
        }
        remaining[static_cast<std::size_t>(work)] = rem_new;
    }

    // Conjugation: match conj(root) numerically among roots of the same
    // factor, then certify the induced automorphism exactly.
    FieldPtr final_field = tw.field;
    std::vector<Rational> conj_theta;
    std::optional<std::vector<Rational>> i_coords;

    if (final_field->is_rational_field()) {
        conj_theta = {Rational(0)};
    } else {
        unsigned prec = 320;
        std::vector<std::size_t> perm;
        for (;;) {
            std::vector<BigComplex> approx;
            for (const auto& r : tw.root_value) approx.push_back(r.approx(prec));
            mpf_class sep = min_pairwise_distance(approx);
            mpf_class tol = sep / 4;
            perm.assign(tw.root_value.size(), SIZE_MAX);
            bool ok = true;
            for (std::size_t i = 0; i < approx.size() && ok; ++i) {
                BigComplex want = approx[i].conj();
                int hit = -1;
                for (std::size_t j = 0; j < approx.size(); ++j) {
                    if (tw.root_factor[i] != tw.root_factor[j]) continue;
                    if ((approx[j] - want).abs() < tol) {
                        if (hit >= 0) { ok = false; break; }
                        hit = static_cast<int>(j);
                    }
                }
                if (hit < 0) ok = false;
                else perm[i] = static_cast<std::size_t>(hit);
            }
            if (ok) break;
            prec *= 2;
            if (prec > 4096) throw InternalError("cannot separate conjugate roots numerically");
        }
        NFElem conj_gen = final_field->zero();
        for (const auto& [idx, coeff] : tw.comb)
            conj_gen = conj_gen + tw.root_value[perm[idx]] * Rational(coeff);
        conj_theta = conj_gen.coords();

        // i, when adjoined: the x^2+1 root with positive imaginary part.
        for (std::size_t i = 0; i < tw.root_value.size(); ++i) {
            const QPoly& f = qfactors[static_cast<std::size_t>(tw.root_factor[i])];
            if (f.degree() == 2 && f[0].is_one() && f[1].is_zero() && f[2].is_one()) {
                if (tw.root_value[i].approx(320).im > 0) {
                    i_coords = tw.root_value[i].coords();
                    break;
                }
            }
        }
    }

    FieldPtr certified = final_field->is_rational_field()
                             ? final_field
                             : NumberField::make(final_field->minpoly(), final_field->root_box(), conj_theta, i_coords);

    SplittingResult result;
    result.field = certified;
    result.roots_per_input.resize(polys.size());

    // Re-wrap roots onto the certified field and sort per factor.
    std::vector<std::vector<NFElem>> factor_roots(qfactors.size());
    for (std::size_t i = 0; i < tw.root_value.size(); ++i)
        factor_roots[static_cast<std::size_t>(tw.root_factor[i])].push_back(
            NFElem(certified, tw.root_value[i].coords()));
    for (auto& roots : factor_roots) {
        std::vector<std::pair<BigComplex, NFElem>> keyed;
        for (const auto& r : roots) keyed.emplace_back(r.approx(320), r);
        std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
            if (a.first.re != b.first.re) return a.first.re > b.first.re;
            return a.first.im > b.first.im;
        });
        roots.clear();
        for (auto& [k, v] : keyed) roots.push_back(v);
    }

    for (std::size_t i = 0; i < polys.size(); ++i) {
        for (const auto& [fid, mult] : input_factors[i]) {
            const auto& roots = factor_roots[static_cast<std::size_t>(fid)];
            if (static_cast<int>(roots.size()) != qfactors[static_cast<std::size_t>(fid)].degree())
                throw InternalError("factor did not fully split");
            for (const auto& r : roots)
                for (int m = 0; m < mult; ++m) result.roots_per_input[i].push_back(r);
        }
    }
    return result;
}

std::pair<FieldPtr, std::vector<NFElem>> splitting_field(const QPoly& p, int degree_cap) {
    auto res = split_over_q({p}, degree_cap);
    return {res.field, res.roots_per_input.at(0)};
}

} // namespace hyinv
