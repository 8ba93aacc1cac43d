#include "hyinv/qpoly.hpp"

#include <cctype>
#include <sstream>

namespace hyinv {

namespace {
const Rational kZero;
}

void QPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QPoly QPoly::constant(const Rational& r) {
    if (r.is_zero()) return QPoly();
    return QPoly({r});
}

QPoly QPoly::x() { return QPoly({Rational(0), Rational(1)}); }

QPoly QPoly::monomial(int k, const Rational& c) {
    if (c.is_zero()) return QPoly();
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
    v[k] = c;
    return QPoly(std::move(v));
}

const Rational& QPoly::operator[](int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[i];
}

const Rational& QPoly::leading() const {
    if (c_.empty()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
    return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rational& s) const {
    if (s.is_zero()) return QPoly();
    QPoly r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

std::pair<QPoly, QPoly> QPoly::divrem(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division");
    QPoly rem = a;
    if (a.degree() < b.degree()) return {QPoly(), rem};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    Rational lb_inv = b.leading().inverse();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        Rational coef = rem.leading() * lb_inv;
        q[shift] = coef;
        rem = rem - QPoly::monomial(shift, coef) * b;
    }
    return {QPoly(std::move(q)), rem};
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

QPoly QPoly::derivative() const {
    if (degree() <= 0) return QPoly();
    std::vector<Rational> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return QPoly(std::move(v));
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::compose(const QPoly& inner) const {
    QPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + QPoly::constant(*it);
    return acc;
}

QPoly QPoly::scale_arg(const Rational& s) const {
    QPoly r = *this;
    Rational p(1);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] *= p;
        p *= s;
    }
    r.trim();
    return r;
}

std::string QPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = (*this)[i];
        if (c.is_zero()) continue;
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool unit = a.is_one();
        if (i == 0) {
            os << a.str();
        } else {
            if (!unit) os << a.str() << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
    QPoly f = a, g = b;
    while (!g.is_zero()) {
        QPoly r = QPoly::divrem(f, g).second;
        f = g;
        g = r;
    }
    return f.monic();
}

QPoly squarefree_part(const QPoly& p) {
    if (p.degree() <= 0) return p.monic();
    QPoly g = poly_gcd(p, p.derivative());
    return QPoly::divrem(p, g).first.monic();
}

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
    std::vector<std::pair<QPoly, int>> out;
    if (p.degree() <= 0) return out;
    // Yun's algorithm.
    QPoly f = p.monic();
    QPoly fp = f.derivative();
    QPoly a = poly_gcd(f, fp);
    QPoly b = QPoly::divrem(f, a).first;
    QPoly c = QPoly::divrem(fp, a).first;
    QPoly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        QPoly g = poly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g.monic(), i);
        b = QPoly::divrem(b, g).first;
        c = QPoly::divrem(d, g).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

Rational resultant(const QPoly& a, const QPoly& b) {
    // Euclidean resultant with the standard degree/leading-coefficient
    // bookkeeping. res(f,g) = lc(g)^(deg f - deg r) * (-1)^(deg f * deg g) * res(g, r).
    if (a.is_zero() || b.is_zero()) return Rational(0);
    QPoly f = a, g = b;
    Rational acc(1);
    while (g.degree() > 0) {
        QPoly r = QPoly::divrem(f, g).second;
        int df = f.degree(), dg = g.degree(), dr = r.degree();
        if ((df * dg) % 2 == 1) acc = -acc;
        Rational lg = g.leading();
        Rational pw(1);
        for (int k = 0; k < df - std::max(dr, 0); ++k) pw *= lg;
        if (r.is_zero()) {
            // res(g, 0) = 0 unless deg g == 0.
            return Rational(0);
        }
        acc *= pw;
        f = g;
        g = r;
    }
    // g is a nonzero constant: res(f, c) = c^(deg f).
    Rational c = g[0];
    Rational pw(1);
    for (int k = 0; k < f.degree(); ++k) pw *= c;
    return acc * pw;
}

int count_real_roots(const QPoly& p) {
    QPoly f = squarefree_part(p);
    if (f.degree() <= 0) return 0;
    // Sturm chain; count sign changes at -inf and +inf via leading terms.
    std::vector<QPoly> chain{f, f.derivative()};
    while (!chain.back().is_zero()) {
        const QPoly& s0 = chain[chain.size() - 2];
        const QPoly& s1 = chain.back();
        chain.push_back(-QPoly::divrem(s0, s1).second);
    }
    chain.pop_back();
    auto sign_at_inf = [](const QPoly& q, bool neg) {
        if (q.is_zero()) return 0;
        int s = q.leading().sign();
        if (neg && q.degree() % 2 == 1) s = -s;
        return s;
    };
    auto changes = [&](bool neg) {
        int cnt = 0, prev = 0;
        for (const auto& q : chain) {
            int s = sign_at_inf(q, neg);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++cnt;
            prev = s;
        }
        return cnt;
    };
    return changes(true) - changes(false);
}

QPoly parse_qpoly(const std::string& text, const std::string& var) {
    // Small recursive-descent parser for sums of terms; a term is a '*'
    // product of rationals and var^k factors.
    std::size_t pos = 0;
    auto skip = [&]() { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    auto fail = [&](const std::string& m) -> QPoly {
        throw ParseError(m + " in polynomial '" + text + "' at offset " + std::to_string(pos));
    };

    auto parse_factor = [&]() -> QPoly {
        skip();
        if (pos >= text.size()) return fail("unexpected end");
        char ch = text[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                    return fail("expected denominator");
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            }
            if (pos < text.size() && text[pos] == '.') return fail("float literal rejected");
            return QPoly::constant(Rational::parse(text.substr(start, pos - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            if (name != var) return fail("unknown variable '" + name + "'");
            int exp = 1;
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip();
                std::size_t es = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (es == pos) return fail("expected exponent");
                exp = std::stoi(text.substr(es, pos - es));
            }
            return QPoly::monomial(exp, Rational(1));
        }
        return fail(std::string("unexpected character '") + ch + "'");
    };

    auto parse_term = [&]() -> QPoly {
        QPoly acc = parse_factor();
        for (;;) {
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                acc = acc * parse_factor();
            } else {
                return acc;
            }
        }
    };

    QPoly result;
    skip();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
    }
    for (;;) {
        QPoly t = parse_term();
        result = neg ? result - t : result + t;
        skip();
        if (pos >= text.size()) break;
        if (text[pos] == '+') neg = false;
        else if (text[pos] == '-') neg = true;
        else return fail("expected '+' or '-'");
        ++pos;
    }
    return result;
}

} // namespace hyinv
