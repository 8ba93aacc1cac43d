#include "hyinv/bigcomplex.hpp"

#include <algorithm>
#include <cmath>

namespace hyinv {

BigComplex bc_from_rational(const Rational& re, const Rational& im, unsigned prec) {
    BigComplex z(prec);
    z.re = mpf_class(re.raw(), prec);
    z.im = mpf_class(im.raw(), prec);
    return z;
}

BigComplex qpoly_eval(const QPoly& p, const BigComplex& z) {
    unsigned prec = z.prec();
    BigComplex acc(prec);
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * z;
        acc.re += mpf_class(p[i].raw(), prec);
    }
    return acc;
}

namespace {

BigComplex ceval(const std::vector<BigComplex>& coeffs, const BigComplex& z) {
    BigComplex acc(z.prec());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<BigComplex> durand_kerner(const std::vector<BigComplex>& monic, unsigned prec, unsigned work_prec) {
    int n = static_cast<int>(monic.size()) - 1;

    // Cauchy bound on root magnitudes.
    mpf_class radius(1, work_prec);
    for (int i = 0; i < n; ++i) {
        mpf_class c = monic[static_cast<std::size_t>(i)].abs();
        if (c > radius) radius = c;
    }
    radius += 1;

    std::vector<BigComplex> w(static_cast<std::size_t>(n), BigComplex(work_prec));
    double pi = 3.14159265358979323846;
    for (int k = 0; k < n; ++k) {
        double ang = (2.0 * pi * k) / n + 0.3941;
        double rr = 0.5 + 0.3 * ((k % 3) + 1);
        mpf_class scale(radius * mpf_class(rr, work_prec));
        w[static_cast<std::size_t>(k)].re = scale * mpf_class(std::cos(ang), work_prec);
        w[static_cast<std::size_t>(k)].im = scale * mpf_class(std::sin(ang), work_prec);
    }

    mpf_class eps(1, work_prec);
    mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), prec);

    const int max_iters = 5000;
    for (int iter = 0; iter < max_iters; ++iter) {
        mpf_class max_step(0, work_prec);
        for (int k = 0; k < n; ++k) {
            BigComplex num = ceval(monic, w[static_cast<std::size_t>(k)]);
            BigComplex den(work_prec);
            den.re = 1;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                den = den * (w[static_cast<std::size_t>(k)] - w[static_cast<std::size_t>(j)]);
            }
            BigComplex step = num / den;
            w[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(k)] - step;
            mpf_class s = step.abs();
            if (s > max_step) max_step = s;
        }
        if (max_step < eps) break;
        if (iter == max_iters - 1) throw InternalError("root iteration did not converge");
    }

    // Residual sanity check, relative to |root|^degree.
    mpf_class tol(1, work_prec);
    mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec / 2);
    for (const auto& root : w) {
        mpf_class res = ceval(monic, root).abs();
        mpf_class mag = root.abs();
        if (mag < 1) mag = 1;
        mpf_class scale(1, work_prec);
        for (int i = 0; i < n; ++i) scale *= mag;
        if (res > tol * scale) throw InternalError("root residual too large");
    }

    std::sort(w.begin(), w.end(), [](const BigComplex& a, const BigComplex& b) {
        if (a.re != b.re) return a.re > b.re;
        return a.im > b.im;
    });
    return w;
}

} // namespace

std::vector<BigComplex> complex_roots(const QPoly& p, unsigned prec) {
    QPoly f = squarefree_part(p);
    int n = f.degree();
    if (n <= 0) return {};
    unsigned work_prec = prec + 64;
    std::vector<BigComplex> monic(static_cast<std::size_t>(n) + 1, BigComplex(work_prec));
    Rational lead = f.leading();
    for (int i = 0; i <= n; ++i) {
        Rational c = f[i] / lead;
        monic[static_cast<std::size_t>(i)].re = mpf_class(c.raw(), work_prec);
    }
    return durand_kerner(monic, prec, work_prec);
}

std::vector<BigComplex> complex_roots(const std::vector<BigComplex>& coeffs, unsigned prec) {
    std::vector<BigComplex> c = coeffs;
    while (!c.empty() && c.back().abs2() == 0) c.pop_back();
    if (c.size() <= 1) return {};
    unsigned work_prec = prec + 64;
    std::vector<BigComplex> monic(c.size(), BigComplex(work_prec));
    BigComplex lead = c.back();
    for (std::size_t i = 0; i < c.size(); ++i) monic[i] = c[i] / lead;
    return durand_kerner(monic, prec, work_prec);
}

} // namespace hyinv
