#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyinv/rational.hpp"

namespace hyinv {

// Dense univariate polynomial over Q; coeffs[i] is the coefficient of x^i.
// Invariant: no trailing zero coefficient (the zero polynomial is empty).
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static QPoly constant(const Rational& r);
    static QPoly x();                    // the monomial x
    static QPoly monomial(int k, const Rational& c);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const Rational& operator[](int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly operator*(const Rational& s) const;
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    // Euclidean division; b must be nonzero.
    static std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b);

    QPoly monic() const;
    QPoly derivative() const;
    Rational eval(const Rational& x) const;
    QPoly compose(const QPoly& inner) const; // this(inner(x))
    QPoly scale_arg(const Rational& s) const; // p(s*x)

    // "x^3 - 2*x + 1/2" style; '^' exponents, explicit '*' optional between
    // coefficient and x for convenience in matrix/model files is NOT allowed:
    // the grammar used everywhere requires explicit '*'.
    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// gcd made monic; gcd(0,0) = 0.
QPoly poly_gcd(const QPoly& a, const QPoly& b);

// p / gcd(p, p'), made monic.
QPoly squarefree_part(const QPoly& p);

// Yun: returns [(g_1,1),(g_2,2),...] with p = lc * prod g_i^i, g_i squarefree,
// pairwise coprime, monic. Factors with g_i = 1 are omitted.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p);

// Resultant of a and b with respect to x.
Rational resultant(const QPoly& a, const QPoly& b);

// Number of distinct real roots in (lo, hi] via Sturm chains; the whole real
// line when lo/hi are not given.
int count_real_roots(const QPoly& p);

// Factorization over Q. Returns irreducible monic factors with multiplicities
// plus the leading rational constant: p = constant * prod f_i^{m_i}.
struct QFactorization {
    Rational constant;
    std::vector<std::pair<QPoly, int>> factors;
};
// Throws CapExceeded when deg(squarefree part) exceeds degree_cap.
QFactorization factor_rational_poly(const QPoly& p, int degree_cap = 16);

bool is_irreducible(const QPoly& p, int degree_cap = 16);

// Parses coefficient-list-free polynomial text in one named variable using
// the shared polynomial grammar (rationals, '+','-','*','^').
QPoly parse_qpoly(const std::string& text, const std::string& var = "x");

} // namespace hyinv
