#include <algorithm>
#include <cstdint>
#include <random>

#include "hyinv/qpoly.hpp"

// Univariate factorization over Q: squarefree decomposition, then for each
// squarefree part a finite-field factorization mod a suitable prime, a
// multifactor quadratic Hensel lift, and exhaustive subset recombination.
// Degrees are capped by the caller, so the subset search stays desk-scale.

namespace hyinv {
namespace {

using ZPoly = std::vector<Integer>; // coeff[i] * x^i, no trailing zeros

void ztrim(ZPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Integer zcontent(const ZPoly& p) {
    Integer g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// Exact division test: does g divide f over Z (as polynomials)? Returns the
// quotient when it does.
bool zdivides(const ZPoly& f, const ZPoly& g, ZPoly* quotient) {
    if (g.empty()) return false;
    ZPoly rem = f;
    ZPoly q(f.size() > g.size() ? f.size() - g.size() + 1 : 1, Integer(0));
    while (zdeg(rem) >= zdeg(g)) {
        Integer lead = rem.back();
        Integer qc, r;
        mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), lead.get_mpz_t(), g.back().get_mpz_t());
        if (sgn(r) != 0) return false;
        int shift = zdeg(rem) - zdeg(g);
        q[shift] = qc;
        for (std::size_t i = 0; i < g.size(); ++i) rem[shift + i] -= qc * g[i];
        ztrim(rem);
        if (rem.empty()) break;
    }
    if (!rem.empty()) return false;
    if (quotient) {
        ztrim(q);
        *quotient = q;
    }
    return true;
}

// --- arithmetic mod m (m = p^k, coefficients as nonnegative mpz) ----------

struct ModCtx {
    Integer m;
    Integer reduce(const Integer& a) const {
        Integer r = a % m;
        if (sgn(r) < 0) r += m;
        return r;
    }
};

ZPoly mod_reduce(const ZPoly& a, const ModCtx& ctx) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ctx.reduce(a[i]);
    ztrim(r);
    return r;
}

ZPoly mod_add(const ZPoly& a, const ZPoly& b, const ModCtx& ctx) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        Integer s = (i < a.size() ? a[i] : Integer(0)) + (i < b.size() ? b[i] : Integer(0));
        r[i] = ctx.reduce(s);
    }
    ztrim(r);
    return r;
}

ZPoly mod_sub(const ZPoly& a, const ZPoly& b, const ModCtx& ctx) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        Integer s = (i < a.size() ? a[i] : Integer(0)) - (i < b.size() ? b[i] : Integer(0));
        r[i] = ctx.reduce(s);
    }
    ztrim(r);
    return r;
}

ZPoly mod_mul(const ZPoly& a, const ZPoly& b, const ModCtx& ctx) {
    return mod_reduce(zmul(a, b), ctx);
}

Integer mod_inv(const Integer& a, const ModCtx& ctx) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), ctx.m.get_mpz_t()) == 0)
        throw InternalError("non-invertible element during Hensel lifting");
    return inv;
}

// Division with remainder by a polynomial whose leading coefficient is a
// unit mod m.
void mod_divrem(const ZPoly& a, const ZPoly& b, const ModCtx& ctx, ZPoly* q_out, ZPoly* r_out) {
    ZPoly rem = mod_reduce(a, ctx);
    ZPoly q;
    if (zdeg(rem) >= zdeg(b)) q.assign(rem.size() - b.size() + 1, Integer(0));
    Integer linv = mod_inv(b.back(), ctx);
    while (zdeg(rem) >= zdeg(b)) {
        Integer coef = ctx.reduce(rem.back() * linv);
        int shift = zdeg(rem) - zdeg(b);
        q[shift] = coef;
        for (std::size_t i = 0; i < b.size(); ++i)
            rem[shift + i] = ctx.reduce(rem[shift + i] - coef * b[i]);
        ztrim(rem);
    }
    if (q_out) { ztrim(q); *q_out = q; }
    if (r_out) *r_out = rem;
}

// --- GF(p) polynomials (p a word-size odd prime) --------------------------

struct GF {
    std::uint64_t p;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { auto s = a + b; return s >= p ? s - p : s; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

using FPoly = std::vector<std::uint64_t>;

void ftrim(FPoly& f) { while (!f.empty() && f.back() == 0) f.pop_back(); }
int fdeg(const FPoly& f) { return static_cast<int>(f.size()) - 1; }

FPoly fmul(const FPoly& a, const FPoly& b, const GF& gf) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = gf.add(r[i + j], gf.mul(a[i], b[j]));
    }
    return r;
}

FPoly fsub(const FPoly& a, const FPoly& b, const GF& gf) {
    FPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = gf.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    ftrim(r);
    return r;
}

void fdivrem(const FPoly& a, const FPoly& b, const GF& gf, FPoly* q_out, FPoly* r_out) {
    FPoly rem = a;
    ftrim(rem);
    FPoly q;
    if (fdeg(rem) >= fdeg(b)) q.assign(rem.size() - b.size() + 1, 0);
    std::uint64_t linv = gf.inv(b.back());
    while (fdeg(rem) >= fdeg(b)) {
        std::uint64_t coef = gf.mul(rem.back(), linv);
        int shift = fdeg(rem) - fdeg(b);
        q[shift] = coef;
        for (std::size_t i = 0; i < b.size(); ++i)
            rem[shift + i] = gf.sub(rem[shift + i], gf.mul(coef, b[i]));
        ftrim(rem);
    }
    if (q_out) { ftrim(q); *q_out = q; }
    if (r_out) *r_out = rem;
}

FPoly fmod(const FPoly& a, const FPoly& b, const GF& gf) {
    FPoly r;
    fdivrem(a, b, gf, nullptr, &r);
    return r;
}

FPoly fmonic(const FPoly& a, const GF& gf) {
    FPoly r = a;
    ftrim(r);
    if (r.empty()) return r;
    std::uint64_t linv = gf.inv(r.back());
    for (auto& c : r) c = gf.mul(c, linv);
    return r;
}

FPoly fgcd(FPoly a, FPoly b, const GF& gf) {
    ftrim(a);
    ftrim(b);
    while (!b.empty()) {
        FPoly r = fmod(a, b, gf);
        a = b;
        b = r;
    }
    return fmonic(a, gf);
}

FPoly fderiv(const FPoly& a, const GF& gf) {
    if (a.size() <= 1) return {};
    FPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = gf.mul(a[i], i % gf.p);
    ftrim(r);
    return r;
}

// a^e mod f, exponent an arbitrary-precision integer.
FPoly fpowmod(const FPoly& a, const Integer& e, const FPoly& f, const GF& gf) {
    FPoly result{1};
    FPoly base = fmod(a, f, gf);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = fmod(fmul(result, result, gf), f, gf);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = fmod(fmul(result, base, gf), f, gf);
    }
    return result;
}

// Cantor-Zassenhaus equal-degree splitting of a monic squarefree f that is a
// product of irreducibles of degree d.
void equal_degree(const FPoly& f, int d, const GF& gf, std::mt19937_64& rng, std::vector<FPoly>& out) {
    if (fdeg(f) == d) {
        out.push_back(f);
        return;
    }
    Integer pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(gf.p), static_cast<unsigned long>(d));
    Integer expo = (pd - 1) / 2;
    for (;;) {
        FPoly a(static_cast<std::size_t>(fdeg(f)), 0);
        for (auto& c : a) c = rng() % gf.p;
        ftrim(a);
        if (a.empty()) continue;
        FPoly g = fgcd(a, f, gf);
        if (fdeg(g) > 0 && fdeg(g) < fdeg(f)) {
            equal_degree(g, d, gf, rng, out);
            FPoly co;
            fdivrem(f, g, gf, &co, nullptr);
            equal_degree(fmonic(co, gf), d, gf, rng, out);
            return;
        }
        FPoly b = fpowmod(a, expo, f, gf);
        if (b.empty()) continue;
        b[0] = gf.sub(b[0], 1);
        ftrim(b);
        g = fgcd(b, f, gf);
        if (fdeg(g) > 0 && fdeg(g) < fdeg(f)) {
            equal_degree(g, d, gf, rng, out);
            FPoly co;
            fdivrem(f, g, gf, &co, nullptr);
            equal_degree(fmonic(co, gf), d, gf, rng, out);
            return;
        }
    }
}

// Full factorization of a monic squarefree f over GF(p).
std::vector<FPoly> factor_mod_p(const FPoly& f, const GF& gf) {
    std::vector<FPoly> out;
    std::mt19937_64 rng(0x5eed0000ULL + gf.p);
    FPoly rem = f;
    FPoly h{0, 1}; // x
    int d = 0;
    while (fdeg(rem) > 0) {
        ++d;
        if (2 * d > fdeg(rem)) {
            out.push_back(rem); // remainder is irreducible
            break;
        }
        h = fpowmod(h, Integer(static_cast<long>(gf.p)), rem, gf);
        FPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = gf.sub(hx[1], 1);
        ftrim(hx);
        FPoly g = fgcd(hx, rem, gf);
        if (fdeg(g) > 0) {
            equal_degree(g, d, gf, rng, out);
            FPoly co;
            fdivrem(rem, g, gf, &co, nullptr);
            rem = fmonic(co, gf);
            h = fmod(h, rem, gf);
        }
    }
    return out;
}

// --- Hensel lifting --------------------------------------------------------

struct PairBezout {
    ZPoly s, t; // s*g + t*h = 1 (mod p)
};

// Extended gcd over GF(p) for coprime g,h; returns s,t lifted to ZPoly form.
PairBezout xgcd_mod_p(const FPoly& g, const FPoly& h, const GF& gf) {
    FPoly r0 = g, r1 = h;
    FPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        FPoly q;
        FPoly r2;
        fdivrem(r0, r1, gf, &q, &r2);
        FPoly s2 = fsub(s0, fmul(q, s1, gf), gf);
        FPoly t2 = fsub(t0, fmul(q, t1, gf), gf);
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (fdeg(r0) != 0) throw InternalError("factors not coprime mod p");
    std::uint64_t linv = gf.inv(r0[0]);
    auto to_z = [&](const FPoly& a) {
        ZPoly z(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) z[i] = Integer(static_cast<unsigned long>(gf.mul(a[i], linv)));
        ztrim(z);
        return z;
    };
    return {to_z(s0), to_z(t0)};
}

// One quadratic Hensel step: from mod m to mod m^2. h monic.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m) {
    ModCtx ctx{m * m};
    ZPoly e = mod_sub(mod_reduce(f, ctx), mod_mul(g, h, ctx), ctx);
    ZPoly q, r;
    mod_divrem(mod_mul(s, e, ctx), h, ctx, &q, &r);
    ZPoly g_new = mod_add(g, mod_add(mod_mul(t, e, ctx), mod_mul(q, g, ctx), ctx), ctx);
    ZPoly h_new = mod_add(h, r, ctx);
    ZPoly one{Integer(1)};
    ZPoly b = mod_sub(mod_add(mod_mul(s, g_new, ctx), mod_mul(t, h_new, ctx), ctx), one, ctx);
    ZPoly c, d;
    mod_divrem(mod_mul(s, b, ctx), h_new, ctx, &c, &d);
    ZPoly s_new = mod_sub(s, d, ctx);
    ZPoly t_new = mod_sub(t, mod_add(mod_mul(t, b, ctx), mod_mul(c, g_new, ctx), ctx), ctx);
    g = g_new;
    h = h_new;
    s = s_new;
    t = t_new;
}

FPoly z_to_fp(const ZPoly& a, const GF& gf) {
    FPoly r(a.size());
    Integer p(static_cast<long>(gf.p));
    for (std::size_t i = 0; i < a.size(); ++i) {
        Integer c = a[i] % p;
        if (sgn(c) < 0) c += p;
        r[i] = c.get_ui();
    }
    ftrim(r);
    return r;
}

// Lifts f = lc(f) * prod(monic factors mod p) to monic factors mod p^(2^steps).
// Returns the factors mod M together with M.
void multifactor_lift(const ZPoly& f, const std::vector<FPoly>& factors, const GF& gf, int steps,
                      const Integer& M, std::vector<ZPoly>& out) {
    if (factors.size() == 1) {
        ModCtx ctx{M};
        ZPoly g = mod_reduce(f, ctx);
        Integer linv = mod_inv(g.back(), ctx);
        for (auto& c : g) c = ctx.reduce(c * linv);
        out.push_back(g);
        return;
    }
    std::size_t half = factors.size() / 2;
    FPoly hp{1};
    for (std::size_t i = 0; i < half; ++i) hp = fmul(hp, factors[i], gf);
    // h = monic left product; g = cofactor (carries the leading coefficient).
    FPoly fp = z_to_fp(f, gf);
    FPoly gp;
    fdivrem(fp, hp, gf, &gp, nullptr);
    PairBezout bz = xgcd_mod_p(gp, hp, gf);
    ZPoly g(gp.size()), h(hp.size());
    for (std::size_t i = 0; i < gp.size(); ++i) g[i] = Integer(static_cast<unsigned long>(gp[i]));
    for (std::size_t i = 0; i < hp.size(); ++i) h[i] = Integer(static_cast<unsigned long>(hp[i]));
    ZPoly s = bz.s, t = bz.t;
    Integer m(static_cast<long>(gf.p));
    for (int i = 0; i < steps; ++i) {
        hensel_step(f, g, h, s, t, m);
        m *= m;
    }
    ModCtx ctx{M};
    g = mod_reduce(g, ctx);
    h = mod_reduce(h, ctx);
    std::vector<FPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<FPoly> right(factors.begin() + static_cast<long>(half), factors.end());
    multifactor_lift(h, left, gf, steps, M, out);
    multifactor_lift(g, right, gf, steps, M, out);
}

// --- recombination ---------------------------------------------------------

Integer symmetric(const Integer& a, const Integer& M) {
    Integer r = a % M;
    if (sgn(r) < 0) r += M;
    if (r * 2 > M) r -= M;
    return r;
}

ZPoly primitive_part(const ZPoly& p) {
    Integer c = zcontent(p);
    if (sgn(c) == 0) return p;
    if (sgn(p.back()) < 0) c = -c;
    ZPoly r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] / c;
    return r;
}

std::vector<ZPoly> factor_squarefree_z(ZPoly f) {
    std::vector<ZPoly> out;
    ztrim(f);
    if (zdeg(f) <= 0) return out;
    if (zdeg(f) == 1) {
        out.push_back(primitive_part(f));
        return out;
    }

    // Prime selection: p odd, not dividing lc, f squarefree mod p.
    Integer pz(1000003);
    GF gf{};
    FPoly fp;
    for (;;) {
        mpz_nextprime(pz.get_mpz_t(), pz.get_mpz_t());
        gf.p = pz.get_ui();
        if (f.back() % pz == 0) continue;
        fp = fmonic(z_to_fp(f, gf), gf);
        if (static_cast<int>(fp.size()) - 1 != zdeg(f)) continue;
        FPoly d = fderiv(fp, gf);
        if (d.empty()) continue;
        FPoly g = fgcd(fp, d, gf);
        if (fdeg(g) == 0) break;
    }

    std::vector<FPoly> modular = factor_mod_p(fp, gf);
    if (modular.size() == 1) {
        out.push_back(primitive_part(f));
        return out;
    }
    std::sort(modular.begin(), modular.end());

    // Lift bound: factors of f have |coeff| <= 2^n * ||f||_2; candidates are
    // multiplied by |lc| before taking primitive parts.
    Integer norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    Integer bound = 1;
    mpz_sqrt(bound.get_mpz_t(), norm2.get_mpz_t());
    bound += 1;
    bound <<= static_cast<unsigned>(zdeg(f) + 1);
    bound *= ::abs(f.back());
    bound = bound * 2 + 1;
    int steps = 0;
    Integer M(static_cast<long>(gf.p));
    while (M < bound) {
        M *= M;
        ++steps;
    }

    std::vector<ZPoly> lifted;
    multifactor_lift(f, modular, gf, steps, M, lifted);

    // Subset recombination with trial division.
    std::vector<int> alive(lifted.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<int>(i);
    ZPoly rem = f;
    ModCtx ctx{M};

    auto try_subset = [&](const std::vector<int>& subset) -> bool {
        ZPoly cand{rem.back() % M};
        if (sgn(cand[0]) < 0) cand[0] += M;
        for (int idx : subset) cand = mod_mul(cand, lifted[static_cast<std::size_t>(idx)], ctx);
        for (auto& c : cand) c = symmetric(c, M);
        ztrim(cand);
        if (cand.empty()) return false;
        ZPoly pp = primitive_part(cand);
        ZPoly quo;
        if (!zdivides(rem, pp, &quo)) return false;
        out.push_back(pp);
        rem = quo;
        return true;
    };

    std::size_t s = 1;
    while (2 * s <= alive.size()) {
        bool found = false;
        std::vector<int> idx(s);
        // enumerate s-subsets of alive
        std::vector<std::size_t> pos(s);
        for (std::size_t i = 0; i < s; ++i) pos[i] = i;
        for (;;) {
            for (std::size_t i = 0; i < s; ++i) idx[i] = alive[pos[i]];
            if (try_subset(idx)) {
                std::vector<int> next_alive;
                for (std::size_t i = 0, j = 0; i < alive.size(); ++i) {
                    if (j < s && pos[j] == i) { ++j; continue; }
                    next_alive.push_back(alive[i]);
                }
                alive = next_alive;
                found = true;
                break;
            }
            // next combination
            std::size_t k = s;
            while (k > 0) {
                --k;
                if (pos[k] != k + alive.size() - s) {
                    ++pos[k];
                    for (std::size_t j = k + 1; j < s; ++j) pos[j] = pos[j - 1] + 1;
                    break;
                }
                if (k == 0) goto subsets_done;
            }
            if (s == 0) break;
        }
    subsets_done:
        if (!found) ++s;
    }
    if (zdeg(rem) > 0) out.push_back(primitive_part(rem));
    return out;
}

ZPoly qpoly_to_primitive_z(const QPoly& p, Rational* constant) {
    Integer den_lcm = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    ZPoly z(p.coeffs().size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        Rational scaled = p.coeffs()[i] * Rational(den_lcm);
        z[i] = scaled.num();
    }
    ztrim(z);
    ZPoly pp = primitive_part(z);
    if (constant) {
        // p = (content/den_lcm) * pp
        Integer cont = zcontent(z);
        if (!z.empty() && sgn(z.back()) < 0) cont = -cont;
        *constant = Rational(cont, den_lcm);
    }
    return pp;
}

QPoly z_to_qpoly(const ZPoly& z) {
    std::vector<Rational> c(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) c[i] = Rational(z[i]);
    return QPoly(std::move(c));
}

} // namespace

QFactorization factor_rational_poly(const QPoly& p, int degree_cap) {
    if (p.is_zero()) throw Error("factorization of the zero polynomial");
    QFactorization result;
    result.constant = p.leading();
    if (p.degree() == 0) return result;
    if (squarefree_part(p).degree() > degree_cap)
        throw CapExceeded("degree cap exceeded: factorization degree " +
                          std::to_string(squarefree_part(p).degree()) + " > " + std::to_string(degree_cap));

    auto sqf = squarefree_decomposition(p);
    std::vector<std::pair<QPoly, int>> factors;
    for (const auto& [g, mult] : sqf) {
        ZPoly z = qpoly_to_primitive_z(g, nullptr);
        for (const auto& zf : factor_squarefree_z(z)) {
            factors.emplace_back(z_to_qpoly(zf).monic(), mult);
        }
    }
    std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i) {
            if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
        }
        return a.second < b.second;
    });
    result.factors = std::move(factors);
    return result;
}

bool is_irreducible(const QPoly& p, int degree_cap) {
    if (p.degree() <= 0) return false;
    auto f = factor_rational_poly(p, degree_cap);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

} // namespace hyinv
