#pragma once

#include <complex>
#include <vector>

#include "hyinv/qpoly.hpp"

namespace hyinv {

// Arbitrary-precision complex number on top of GMP floats. Used only for
// root isolation and numeric cross-checks; never a source of exact truth.
struct BigComplex {
    mpf_class re, im;

    explicit BigComplex(unsigned prec = 256) : re(0, prec), im(0, prec) {}
    BigComplex(const mpf_class& r, const mpf_class& i) : re(r), im(i) {}

    unsigned prec() const { return static_cast<unsigned>(re.get_prec()); }

    BigComplex operator-() const { return {mpf_class(-re), mpf_class(-im)}; }
    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {mpf_class(a.re + b.re), mpf_class(a.im + b.im)};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {mpf_class(a.re - b.re), mpf_class(a.im - b.im)};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {mpf_class(a.re * b.re - a.im * b.im), mpf_class(a.re * b.im + a.im * b.re)};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        mpf_class d(b.re * b.re + b.im * b.im);
        return {mpf_class((a.re * b.re + a.im * b.im) / d), mpf_class((a.im * b.re - a.re * b.im) / d)};
    }

    mpf_class abs2() const { return re * re + im * im; }
    mpf_class abs() const { mpf_class r(0, prec()); mpf_sqrt(r.get_mpf_t(), mpf_class(abs2()).get_mpf_t()); return r; }
    BigComplex conj() const { return {re, mpf_class(-im)}; }

    std::complex<double> to_double() const { return {re.get_d(), im.get_d()}; }
};

BigComplex bc_from_rational(const Rational& re, const Rational& im, unsigned prec);

// Evaluates p at a complex point (Horner).
BigComplex qpoly_eval(const QPoly& p, const BigComplex& z);

// All complex roots of the squarefree part of p, via Durand-Kerner at the
// given precision. Deterministic; roots sorted by (re desc, im desc).
// Convergence is verified a posteriori (small residual, pairwise separation).
std::vector<BigComplex> complex_roots(const QPoly& p, unsigned prec = 256);

// Same iteration for a squarefree polynomial given by complex coefficients
// (coeffs[i] belongs to x^i; leading coefficient nonzero).
std::vector<BigComplex> complex_roots(const std::vector<BigComplex>& coeffs, unsigned prec);

} // namespace hyinv
