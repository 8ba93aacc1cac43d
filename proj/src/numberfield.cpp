#include "hyinv/numberfield.hpp"

#include <algorithm>
#include <sstream>

namespace hyinv {

// --- NumberField -------------------------------------------------------------

bool NumberField::Box::contains(const BigComplex& z) const {
    unsigned prec = z.prec();
    auto lo_re = mpf_class(re_lo.raw(), prec), hi_re = mpf_class(re_hi.raw(), prec);
    auto lo_im = mpf_class(im_lo.raw(), prec), hi_im = mpf_class(im_hi.raw(), prec);
    return z.re >= lo_re && z.re <= hi_re && z.im >= lo_im && z.im <= hi_im;
}

NumberField::NumberField(QPoly minpoly, Box box) : minpoly_(std::move(minpoly)), box_(std::move(box)) {
    degree_ = minpoly_.degree();
    build_tables();
}

void NumberField::build_tables() {
    // theta^degree = -(lower coefficients of minpoly); extend inductively.
    power_table_.clear();
    if (degree_ <= 1) return;
    std::vector<Rational> cur(static_cast<std::size_t>(degree_));
    for (int i = 0; i < degree_; ++i) cur[static_cast<std::size_t>(i)] = -minpoly_[i];
    power_table_.push_back(cur);
    for (int k = 1; k <= degree_ - 2; ++k) {
        std::vector<Rational> next(static_cast<std::size_t>(degree_));
        // multiply cur by theta
        Rational top = cur[static_cast<std::size_t>(degree_ - 1)];
        for (int i = degree_ - 1; i >= 1; --i) next[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
        next[0] = Rational(0);
        if (!top.is_zero()) {
            for (int i = 0; i < degree_; ++i)
                next[static_cast<std::size_t>(i)] += top * power_table_[0][static_cast<std::size_t>(i)];
        }
        power_table_.push_back(next);
        cur = power_table_.back();
    }
}

std::vector<Rational> NumberField::reduce(std::vector<Rational> raw) const {
    // raw may have up to 2*degree-1 coordinates; fold the high ones through
    // the power table.
    std::vector<Rational> out(static_cast<std::size_t>(degree_));
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (static_cast<int>(i) < degree_) {
            out[i] += raw[i];
        } else {
            const auto& row = power_table_[i - static_cast<std::size_t>(degree_)];
            if (raw[i].is_zero()) continue;
            for (int j = 0; j < degree_; ++j) out[static_cast<std::size_t>(j)] += raw[i] * row[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

FieldPtr NumberField::rationals() {
    static FieldPtr q = [] {
        Box box{Rational(0), Rational(0), Rational(0), Rational(0)};
        auto f = std::shared_ptr<NumberField>(new NumberField(QPoly::x(), box));
        f->conj_theta_ = std::vector<Rational>{Rational(0)};
        return FieldPtr(f);
    }();
    return q;
}

FieldPtr make_field_unchecked(const QPoly& minpoly, const NumberField::Box& box) {
    return FieldPtr(new NumberField(minpoly, box));
}

FieldPtr NumberField::make(const QPoly& minpoly, const Box& box,
                           std::optional<std::vector<Rational>> conj_theta,
                           std::optional<std::vector<Rational>> i_elem) {
    if (minpoly.degree() < 1) throw Error("number field minimal polynomial must be nonconstant");
    if (!minpoly.leading().is_one()) throw Error("number field minimal polynomial must be monic");
    if (minpoly.degree() > 1 && !is_irreducible(minpoly, std::max(24, minpoly.degree())))
        throw Error("number field minimal polynomial is reducible");
    auto f = std::shared_ptr<NumberField>(new NumberField(minpoly, box));
    if (minpoly.degree() >= 1) {
        auto roots = complex_roots(minpoly, 256);
        int inside = 0;
        for (const auto& r : roots)
            if (box.contains(r)) ++inside;
        if (inside != 1) throw Error("root box does not isolate exactly one root");
    }
    FieldPtr fp(f);
    if (conj_theta) {
        if (static_cast<int>(conj_theta->size()) != f->degree_)
            throw Error("conjugation data has wrong length");
        NFElem cb(fp, *conj_theta);
        UPoly mp = UPoly::from_qpoly(fp, minpoly);
        if (!mp.eval(cb).is_zero()) throw Error("conjugation image is not a root of the minimal polynomial");
        f->conj_theta_ = conj_theta;
        if (!(cb.conj() == fp->theta())) throw Error("conjugation is not an involution");
        // numeric agreement with complex conjugation
        BigComplex th = f->theta_approx(256);
        BigComplex img = cb.approx(256);
        mpf_class d1(th.re - img.re), d2(th.im + img.im);
        mpf_class tol(1, 256);
        mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), 60);
        if (::abs(d1) > tol || ::abs(d2) > tol)
            throw Error("conjugation data does not match complex conjugation");
    } else if (f->degree_ == 1) {
        f->conj_theta_ = std::vector<Rational>{Rational(0)};
    }
    if (i_elem) {
        NFElem ie(fp, *i_elem);
        NFElem sq = ie * ie;
        if (!(sq == fp->from_rational(Rational(-1)))) throw Error("claimed element i does not square to -1");
        if (ie.approx(128).im <= 0) throw Error("element i must have positive imaginary part");
        f->i_coords_ = i_elem;
    }
    return fp;
}

NFElem NumberField::zero() const {
    return NFElem(shared_from_this(), std::vector<Rational>(static_cast<std::size_t>(degree_)));
}

NFElem NumberField::one() const { return from_rational(Rational(1)); }

NFElem NumberField::from_rational(const Rational& r) const {
    std::vector<Rational> c(static_cast<std::size_t>(degree_));
    c[0] = r;
    return NFElem(shared_from_this(), std::move(c));
}

NFElem NumberField::theta() const {
    std::vector<Rational> c(static_cast<std::size_t>(degree_));
    if (degree_ == 1) {
        // theta = 0 in the rational field
    } else {
        c[1] = Rational(1);
    }
    return NFElem(shared_from_this(), std::move(c));
}

NFElem NumberField::element(std::vector<Rational> coords) const {
    if (static_cast<int>(coords.size()) != degree_) throw Error("coordinate vector has wrong length");
    return NFElem(shared_from_this(), std::move(coords));
}

bool NumberField::is_real() const {
    if (!conj_theta_) throw Error("field is not conjugation-stable (no conjugation data)");
    if (degree_ == 1) return true;
    std::vector<Rational> id(static_cast<std::size_t>(degree_));
    id[1] = Rational(1);
    return *conj_theta_ == id;
}

NFElem NumberField::element_i() const {
    if (!i_coords_) throw Error("field does not contain i");
    return NFElem(shared_from_this(), *i_coords_);
}

const std::vector<Rational>& NumberField::conj_theta_coords() const {
    if (!conj_theta_) throw Error("field is not conjugation-stable (no conjugation data)");
    return *conj_theta_;
}

BigComplex NumberField::theta_approx(unsigned prec) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = theta_cache_.find(prec);
        if (it != theta_cache_.end()) return it->second;
    }
    BigComplex result(prec);
    if (degree_ == 1) {
        // theta = 0
    } else {
        auto roots = complex_roots(minpoly_, prec);
        int found = -1;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (box_.contains(roots[i])) {
                if (found >= 0) throw InternalError("root box ambiguity");
                found = static_cast<int>(i);
            }
        }
        if (found < 0) throw InternalError("no root of the minimal polynomial in the root box");
        result = roots[static_cast<std::size_t>(found)];
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    theta_cache_.emplace(prec, result);
    return result;
}

const QMatrix& NumberField::conj_matrix() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!conj_matrix_) {
        if (!conj_theta_) throw Error("field is not conjugation-stable (no conjugation data)");
        // columns: conj(theta^j) = conj(theta)^j
        QMatrix m(static_cast<std::size_t>(degree_), std::vector<Rational>(static_cast<std::size_t>(degree_)));
        NFElem cb(shared_from_this(), *conj_theta_);
        NFElem pw = one();
        for (int j = 0; j < degree_; ++j) {
            for (int i = 0; i < degree_; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pw.coords()[static_cast<std::size_t>(i)];
            if (j + 1 < degree_) pw = pw * cb;
        }
        conj_matrix_ = std::move(m);
    }
    return *conj_matrix_;
}

bool NumberField::same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    return a->minpoly() == b->minpoly() && a->root_box().re_lo == b->root_box().re_lo &&
           a->root_box().re_hi == b->root_box().re_hi && a->root_box().im_lo == b->root_box().im_lo &&
           a->root_box().im_hi == b->root_box().im_hi;
}

// --- NFElem -------------------------------------------------------------------

NFElem::NFElem(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != field_->degree())
        throw Error("coordinate vector has wrong length for field");
}

bool NFElem::is_zero() const {
    for (const auto& c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

bool NFElem::is_one() const {
    if (coords_.empty() || !coords_[0].is_one()) return false;
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return false;
    return true;
}

bool NFElem::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return false;
    return true;
}

Rational NFElem::rational_value() const {
    if (!is_rational()) throw Error("element is not rational");
    return coords_[0];
}

static void check_same(const NFElem& a, const NFElem& b) {
    if (!NumberField::same_field(a.field(), b.field()))
        throw FieldMismatch("operands live in different number fields");
}

NFElem NFElem::operator-() const {
    std::vector<Rational> c = coords_;
    for (auto& x : c) x = -x;
    return NFElem(field_, std::move(c));
}

NFElem operator+(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    std::vector<Rational> c = a.coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
    return NFElem(a.field_, std::move(c));
}

NFElem operator-(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    std::vector<Rational> c = a.coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
    return NFElem(a.field_, std::move(c));
}

NFElem operator*(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    std::size_t d = a.coords_.size();
    std::vector<Rational> raw(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (a.coords_[i].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (b.coords_[j].is_zero()) continue;
            raw[i + j] += a.coords_[i] * b.coords_[j];
        }
    }
    return NFElem(a.field_, a.field_->reduce(std::move(raw)));
}

NFElem NFElem::operator*(const Rational& s) const {
    std::vector<Rational> c = coords_;
    for (auto& x : c) x *= s;
    return NFElem(field_, std::move(c));
}

NFElem NFElem::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero field element");
    if (field_->degree() == 1) return field_->from_rational(coords_[0].inverse());
    // extended Euclid: find u with u * this = 1 (mod minpoly)
    QPoly a(std::vector<Rational>(coords_));
    QPoly m = field_->minpoly();
    QPoly r0 = m, r1 = a;
    QPoly s0, s1 = QPoly::constant(Rational(1)); // coefficients of a
    while (!r1.is_zero()) {
        auto [q, r2] = QPoly::divrem(r0, r1);
        QPoly s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0.degree() != 0) throw InternalError("non-invertible element (minpoly not irreducible?)");
    QPoly inv = s0 * r0[0].inverse();
    std::vector<Rational> c(static_cast<std::size_t>(field_->degree()));
    for (int i = 0; i <= inv.degree() && i < field_->degree(); ++i) c[static_cast<std::size_t>(i)] = inv[i];
    return NFElem(field_, std::move(c));
}

NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

bool operator==(const NFElem& a, const NFElem& b) {
    if (!NumberField::same_field(a.field(), b.field())) return false;
    return a.coords_ == b.coords_;
}

NFElem NFElem::conj() const {
    const QMatrix& m = field_->conj_matrix();
    std::size_t d = coords_.size();
    std::vector<Rational> out(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (coords_[j].is_zero()) continue;
            out[i] += m[i][j] * coords_[j];
        }
    }
    return NFElem(field_, std::move(out));
}

BigComplex NFElem::approx(unsigned prec) const {
    BigComplex th = field_->theta_approx(prec);
    BigComplex acc(prec);
    for (auto it = coords_.rbegin(); it != coords_.rend(); ++it) {
        acc = acc * th;
        acc.re += mpf_class(it->raw(), prec);
    }
    return acc;
}

std::string NFElem::str() const {
    if (is_rational()) return coords_[0].str();
    QPoly p(std::vector<Rational>(coords_));
    return "(" + p.str("theta") + ")";
}

// --- UPoly --------------------------------------------------------------------

UPoly::UPoly(FieldPtr field, std::vector<NFElem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (!NumberField::same_field(c.field(), field_)) throw FieldMismatch("UPoly coefficient field");
    trim();
}

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::from_qpoly(const FieldPtr& field, const QPoly& p) {
    std::vector<NFElem> c;
    c.reserve(static_cast<std::size_t>(p.degree() + 1));
    for (int i = 0; i <= p.degree(); ++i) c.push_back(field->from_rational(p[i]));
    return UPoly(field, std::move(c));
}

NFElem UPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return field_->zero();
    return c_[static_cast<std::size_t>(i)];
}

const NFElem& UPoly::leading() const {
    if (c_.empty()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<NFElem> c;
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i)));
    return UPoly(a.field_, std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<NFElem> c;
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i)));
    return UPoly(a.field_, std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
    std::vector<NFElem> c(a.c_.size() + b.c_.size() - 1, a.field_->zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
    }
    return UPoly(a.field_, std::move(c));
}

UPoly UPoly::operator*(const NFElem& s) const {
    if (s.is_zero()) return UPoly(field_);
    std::vector<NFElem> c = c_;
    for (auto& x : c) x = x * s;
    return UPoly(field_, std::move(c));
}

bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        if (!(a.c_[i] == b.c_[i])) return false;
    return true;
}

std::pair<UPoly, UPoly> UPoly::divrem(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division");
    UPoly rem = a;
    if (a.degree() < b.degree()) return {UPoly(a.field_), rem};
    std::vector<NFElem> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, a.field_->zero());
    NFElem linv = b.leading().inverse();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        NFElem coef = rem.leading() * linv;
        q[static_cast<std::size_t>(shift)] = coef;
        std::vector<NFElem> sub(static_cast<std::size_t>(shift + b.degree() + 1), a.field_->zero());
        for (int i = 0; i <= b.degree(); ++i) sub[static_cast<std::size_t>(shift + i)] = b.coeff(i) * coef;
        rem = rem - UPoly(a.field_, std::move(sub));
    }
    return {UPoly(a.field_, std::move(q)), rem};
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

UPoly UPoly::derivative() const {
    if (degree() <= 0) return UPoly(field_);
    std::vector<NFElem> c;
    c.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * Rational(static_cast<long>(i)));
    return UPoly(field_, std::move(c));
}

NFElem UPoly::eval(const NFElem& x) const {
    NFElem acc = field_->zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UPoly UPoly::compose(const UPoly& inner) const {
    UPoly acc(field_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * inner + UPoly(field_, {*it});
    }
    return acc;
}

UPoly UPoly::map_coeffs(const FieldPtr& target, const std::function<NFElem(const NFElem&)>& f) const {
    std::vector<NFElem> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(f(x));
    return UPoly(target, std::move(c));
}

std::string UPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        NFElem c = coeff(i);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << c.str();
        if (i >= 1) os << "*" << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
    UPoly f = a, g = b;
    while (!g.is_zero()) {
        UPoly r = UPoly::divrem(f, g).second;
        f = g;
        g = r;
    }
    return f.monic();
}

UPoly upoly_squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p.monic();
    UPoly g = upoly_gcd(p, p.derivative());
    return UPoly::divrem(p, g).first.monic();
}

// --- spec operations -----------------------------------------------------------

NFElem field_arithmetic(const NFElem& a, const NFElem& b, FieldOp op) {
    switch (op) {
        case FieldOp::Add: return a + b;
        case FieldOp::Sub: return a - b;
        case FieldOp::Mul: return a * b;
        case FieldOp::Div: return a / b;
    }
    throw Error("unknown field operation");
}

std::pair<NFElem, NFElem> real_imag_split(const NFElem& a) {
    const FieldPtr& k = a.field();
    if (k->is_rational_field()) return {a, k->zero()};
    if (!k->conjugation_known()) throw Error("field is not conjugation-stable (no conjugation data)");
    NFElem cb = a.conj();
    NFElem re = (a + cb) * Rational(Integer(1), Integer(2));
    if (k->is_real()) {
        // purely real field: imaginary part is zero by definition
        return {re, k->zero()};
    }
    if (!k->has_i()) throw Error("field does not contain i; cannot split into real and imaginary parts");
    NFElem i = k->element_i();
    NFElem im = (a - cb) / (i * Rational(2));
    return {re, im};
}

QMatrix rational_coordinates(const std::vector<NFElem>& elems) {
    if (elems.empty()) return {};
    const FieldPtr& k = elems[0].field();
    for (const auto& e : elems)
        if (!NumberField::same_field(e.field(), k)) throw FieldMismatch("tuple spans several fields");
    std::size_t deg = static_cast<std::size_t>(k->degree());
    QMatrix rows;
    for (std::size_t r = 0; r < deg; ++r) {
        std::vector<Rational> row(elems.size());
        bool nonzero = false;
        for (std::size_t c = 0; c < elems.size(); ++c) {
            row[c] = elems[c].coords()[r];
            nonzero = nonzero || !row[c].is_zero();
        }
        if (nonzero) rows.push_back(std::move(row));
    }
    if (rows.empty()) rows.push_back(std::vector<Rational>(elems.size()));
    return rows;
}

QPoly element_minpoly(const NFElem& a) {
    const FieldPtr& k = a.field();
    std::size_t deg = static_cast<std::size_t>(k->degree());
    // Krylov sequence 1, a, a^2, ... until linearly dependent.
    std::vector<NFElem> powers{k->one()};
    for (;;) {
        // solve: sum_j x_j * powers[j] = powers.back() * a ?
        NFElem next = powers.back() * a;
        QMatrix m(deg, std::vector<Rational>(powers.size()));
        for (std::size_t j = 0; j < powers.size(); ++j)
            for (std::size_t i = 0; i < deg; ++i) m[i][j] = powers[j].coords()[i];
        std::vector<Rational> rhs(deg);
        for (std::size_t i = 0; i < deg; ++i) rhs[i] = next.coords()[i];
        std::vector<Rational> x;
        if (solve_linear(m, rhs, x)) {
            // minpoly = t^k - sum x_j t^j
            std::vector<Rational> c(powers.size() + 1);
            for (std::size_t j = 0; j < powers.size(); ++j) c[j] = -x[j];
            c[powers.size()] = Rational(1);
            return QPoly(std::move(c));
        }
        powers.push_back(next);
        if (powers.size() > deg + 1) throw InternalError("minimal polynomial search exceeded field degree");
    }
}

NFElem complex_conjugation_image(const FieldPtr& K) {
    if (!K->conjugation_known())
        throw Error("field is not conjugation-stable (no conjugation data)");
    return NFElem(K, K->conj_theta_coords());
}

// --- real subfield --------------------------------------------------------------

NFElem RealSubfield::to_sub(const NFElem& a) const {
    if (!NumberField::same_field(a.field(), ambient)) throw FieldMismatch("real subfield conversion");
    std::vector<Rational> rhs(a.coords());
    std::vector<Rational> x;
    if (!solve_linear(gamma_powers, rhs, x))
        throw Error("element is not fixed by conjugation; cannot express over the real subfield");
    return NFElem(sub, std::move(x));
}

NFElem RealSubfield::to_ambient(const NFElem& a) const {
    if (!NumberField::same_field(a.field(), sub)) throw FieldMismatch("real subfield conversion");
    NFElem acc = ambient->zero();
    NFElem pw = ambient->one();
    for (std::size_t j = 0; j < a.coords().size(); ++j) {
        acc = acc + pw * a.coords()[j];
        if (j + 1 < a.coords().size()) pw = pw * gamma_in_k;
    }
    return acc;
}

RealSubfield real_subfield(const FieldPtr& K) {
    RealSubfield out;
    out.ambient = K;
    if (K->is_rational_field() || K->is_real()) {
        out.sub = K;
        out.gamma_in_k = K->theta();
        std::size_t d = static_cast<std::size_t>(K->degree());
        out.gamma_powers.assign(d, std::vector<Rational>(d));
        for (std::size_t i = 0; i < d; ++i) out.gamma_powers[i][i] = Rational(1);
        return out;
    }
    std::size_t d = static_cast<std::size_t>(K->degree());
    // fixed space: kernel of (conj - id)
    QMatrix m = K->conj_matrix();
    for (std::size_t i = 0; i < d; ++i) m[i][i] -= Rational(1);
    QMatrix fixed = kernel_basis(m); // rows are coordinate vectors of fixed elements
    std::size_t sub_deg = fixed.size();
    if (sub_deg == 0) throw InternalError("conjugation fixes no elements");

    // Find a primitive element of the fixed field: try basis vectors, then
    // small integer combinations.
    auto mk_elem = [&](const std::vector<Rational>& coords) { return NFElem(K, coords); };
    std::vector<NFElem> basis;
    for (const auto& row : fixed) basis.push_back(mk_elem(row));

    NFElem gamma = K->zero();
    QPoly gamma_min;
    bool found = false;
    auto try_candidate = [&](const NFElem& cand) {
        QPoly mp = element_minpoly(cand);
        if (mp.degree() == static_cast<int>(sub_deg)) {
            gamma = cand;
            gamma_min = mp;
            found = true;
        }
        return found;
    };
    for (const auto& b : basis)
        if (try_candidate(b)) break;
    if (!found) {
        for (long w = 1; w <= 16 && !found; ++w) {
            // combination with weights 1, w, w^2, ... over the fixed basis
            NFElem cand = K->zero();
            Rational mult(1);
            for (const auto& b : basis) {
                cand = cand + b * mult;
                mult *= Rational(w + 1);
            }
            try_candidate(cand);
        }
    }
    if (!found) throw InternalError("no primitive element found for the real subfield");

    // Real root box for gamma.
    BigComplex g_ap = gamma.approx(320);
    mpq_class center_q(g_ap.re);
    Rational center = Rational(Integer(center_q.get_num()), Integer(center_q.get_den()));
    // separation of the real roots of gamma_min
    auto roots = complex_roots(gamma_min, 320);
    mpf_class sep(1, 320);
    bool first = true;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            mpf_class dd = (roots[i] - roots[j]).abs();
            if (first || dd < sep) { sep = dd; first = false; }
        }
    Rational delta(Integer(1), Integer(1));
    if (!first) {
        // delta = 2^-k < sep/8
        mpf_class target = sep / 8;
        int k = 1;
        mpf_class val(0.5, 320);
        while (val >= target && k < 400) { val /= 2; ++k; }
        Integer den = 1;
        den <<= static_cast<unsigned>(k);
        delta = Rational(Integer(1), den);
    } else {
        delta = Rational(Integer(1), Integer(1024));
    }
    NumberField::Box box{center - delta, center + delta, -delta, delta};
    FieldPtr sub = make_field_unchecked(gamma_min, box);
    // the subfield is real: conjugation is the identity
    {
        std::vector<Rational> id(static_cast<std::size_t>(sub->degree()));
        if (sub->degree() >= 2) id[1] = Rational(1);
        sub = NumberField::make(sub->minpoly(), sub->root_box(), id, std::nullopt);
    }

    out.sub = sub;
    out.gamma_in_k = gamma;
    out.gamma_powers.assign(d, std::vector<Rational>(sub_deg));
    NFElem pw = K->one();
    for (std::size_t j = 0; j < sub_deg; ++j) {
        for (std::size_t i = 0; i < d; ++i) out.gamma_powers[i][j] = pw.coords()[i];
        if (j + 1 < sub_deg) pw = pw * gamma;
    }
    return out;
}

} // namespace hyinv
