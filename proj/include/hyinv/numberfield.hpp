#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hyinv/bigcomplex.hpp"
#include "hyinv/qlinalg.hpp"
#include "hyinv/qpoly.hpp"

namespace hyinv {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// An element of Q(theta), stored as rational coordinates over the power
// basis 1, theta, ..., theta^(deg-1). Immutable value type.
class NFElem {
public:
    NFElem() = default;
    NFElem(FieldPtr field, std::vector<Rational> coords);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const; // all coordinates beyond degree 0 vanish
    Rational rational_value() const; // requires is_rational()

    NFElem operator-() const;
    friend NFElem operator+(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a, const NFElem& b);
    friend NFElem operator*(const NFElem& a, const NFElem& b);
    friend NFElem operator/(const NFElem& a, const NFElem& b);
    NFElem operator*(const Rational& s) const;
    NFElem inverse() const;
    friend bool operator==(const NFElem& a, const NFElem& b);
    friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

    NFElem conj() const; // complex conjugation; field must be conjugation-stable

    BigComplex approx(unsigned prec = 256) const;
    std::complex<double> to_complex() const { return approx(128).to_double(); }

    // "(3/2 - theta^2)" when not rational, plain "p/q" otherwise.
    std::string str() const;

private:
    FieldPtr field_;
    std::vector<Rational> coords_;
};

// A number field Q(theta) with a distinguished complex root theta of a monic
// irreducible minimal polynomial, selected by an isolating rectangle with
// rational corners. Shared immutably; all caches are synchronized.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    struct Box {
        Rational re_lo, re_hi, im_lo, im_hi;
        bool contains(const BigComplex& z) const;
    };

    // The degree-1 field (theta = 0); all coordinates are plain rationals.
    static FieldPtr rationals();

    // Builds a field after validating the invariants: minpoly monic
    // irreducible, box isolating exactly one root. conj_theta / i_elem are
    // optional certified data (verified when given).
    static FieldPtr make(const QPoly& minpoly, const Box& box,
                         std::optional<std::vector<Rational>> conj_theta = std::nullopt,
                         std::optional<std::vector<Rational>> i_elem = std::nullopt);

    const QPoly& minpoly() const { return minpoly_; }
    int degree() const { return degree_; }
    const Box& root_box() const { return box_; }
    bool is_rational_field() const { return degree_ == 1; }

    NFElem zero() const;
    NFElem one() const;
    NFElem from_rational(const Rational& r) const;
    NFElem theta() const;
    NFElem element(std::vector<Rational> coords) const;

    bool conjugation_known() const { return conj_matrix_.has_value(); }
    // True when complex conjugation acts as the identity (theta is real).
    bool is_real() const;
    bool has_i() const { return i_coords_.has_value(); }
    NFElem element_i() const;
    const std::vector<Rational>& conj_theta_coords() const;

    BigComplex theta_approx(unsigned prec = 256) const;

    // degree x degree rational matrix applying complex conjugation to
    // coordinate vectors.
    const QMatrix& conj_matrix() const;

    static bool same_field(const FieldPtr& a, const FieldPtr& b);

private:
    friend class NFElem;
    friend FieldPtr make_field_unchecked(const QPoly&, const Box&);

    NumberField(QPoly minpoly, Box box);
    void build_tables();
    std::vector<Rational> reduce(std::vector<Rational> raw) const; // mod minpoly

    QPoly minpoly_;
    Box box_;
    int degree_ = 1;
    // theta^(degree + k) for k = 0..degree-2, as coordinate vectors.
    std::vector<std::vector<Rational>> power_table_;
    std::optional<std::vector<Rational>> conj_theta_;
    mutable std::optional<QMatrix> conj_matrix_;
    std::optional<std::vector<Rational>> i_coords_;

    mutable std::mutex cache_mutex_;
    mutable std::map<unsigned, BigComplex> theta_cache_;
};

// Univariate polynomial over a number field; coefficient i belongs to x^i.
class UPoly {
public:
    explicit UPoly(FieldPtr field) : field_(std::move(field)) {}
    UPoly(FieldPtr field, std::vector<NFElem> coeffs);
    static UPoly from_qpoly(const FieldPtr& field, const QPoly& p);

    const FieldPtr& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    NFElem coeff(int i) const;
    const std::vector<NFElem>& coeffs() const { return c_; }
    const NFElem& leading() const;

    UPoly operator-() const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    UPoly operator*(const NFElem& s) const;
    friend bool operator==(const UPoly& a, const UPoly& b);

    static std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b);
    UPoly monic() const;
    UPoly derivative() const;
    NFElem eval(const NFElem& x) const;
    UPoly compose(const UPoly& inner) const;
    // Applies f to every coefficient (conjugation, embeddings).
    UPoly map_coeffs(const FieldPtr& target, const std::function<NFElem(const NFElem&)>& f) const;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    FieldPtr field_;
    std::vector<NFElem> c_;
};

UPoly upoly_gcd(const UPoly& a, const UPoly& b);
UPoly upoly_squarefree_part(const UPoly& p);

// Spec operations ------------------------------------------------------------

enum class FieldOp { Add, Sub, Mul, Div };
NFElem field_arithmetic(const NFElem& a, const NFElem& b, FieldOp op);

// (re, im) with a = re + i*im, both fixed by conjugation. Requires the field
// to contain i and be conjugation-stable.
std::pair<NFElem, NFElem> real_imag_split(const NFElem& a);

// Rows of the rational coordinate matrix of the tuple: M * n = 0 iff
// sum n_i a_i = 0 for integer vectors n. Zero rows are dropped (one zero row
// is kept when everything vanishes, to keep the shape meaningful).
QMatrix rational_coordinates(const std::vector<NFElem>& elems);

// Minimal polynomial of an element over Q (monic; degree divides the field
// degree). Pure linear algebra, no factorization.
QPoly element_minpoly(const NFElem& a);

// Splitting fields ------------------------------------------------------------

struct SplittingResult {
    FieldPtr field;
    // roots_per_input[k] lists the roots of input polynomial k with
    // multiplicity, ordered deterministically.
    std::vector<std::vector<NFElem>> roots_per_input;
};

// Splitting field of the product of the inputs (squarefree parts), with i
// adjoined whenever some input has a non-real root. Conjugation data is
// always attached to the resulting field. Throws CapExceeded when the field
// degree would exceed degree_cap.
SplittingResult split_over_q(const std::vector<QPoly>& polys, int degree_cap = 24);

// Single-polynomial convenience matching the roots-with-multiplicity contract.
std::pair<FieldPtr, std::vector<NFElem>> splitting_field(const QPoly& p, int degree_cap = 24);

// Factorization over a number field (Trager). Input must be squarefree;
// returns monic irreducible factors.
std::vector<UPoly> factor_over_field(const UPoly& g, int degree_cap = 24);

// Returns the index map: conjugation acting on the distinguished root of K
// (the coordinates of conj(theta)); identity on real fields. Fails with
// an explicit error when the field lacks conjugation data.
NFElem complex_conjugation_image(const FieldPtr& K);

// The real subfield F = fixed field of conjugation, together with maps.
struct RealSubfield {
    FieldPtr sub;                 // F = Q(gamma)
    NFElem gamma_in_k;            // generator of F as an element of K
    // Re-expresses a conjugation-fixed element of K over F.
    NFElem to_sub(const NFElem& a) const;
    // Embeds an element of F back into K.
    NFElem to_ambient(const NFElem& a) const;

    FieldPtr ambient;
    QMatrix gamma_powers; // degree(K) x degree(F): columns are gamma^j coords
};
RealSubfield real_subfield(const FieldPtr& K);

FieldPtr make_field_unchecked(const QPoly& minpoly, const NumberField::Box& box);

} // namespace hyinv
