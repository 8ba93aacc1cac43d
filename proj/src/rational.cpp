#include "hyinv/rational.hpp"

#include <cctype>
#include <ostream>

namespace hyinv {

Rational::Rational(const Integer& num, const Integer& den) {
    if (sgn(den) == 0) throw DivisionByZero("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero("rational division");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    return Rational(mpq_class(1) / v_);
}

Rational Rational::parse(const std::string& text) {
    // Accept [+-]?digits(/digits)? with no embedded whitespace.
    std::size_t i = 0;
    auto fail = [&]() -> Rational { throw ParseError("invalid rational literal '" + text + "'"); };
    if (text.empty()) return fail();
    if (text[i] == '+' || text[i] == '-') ++i;
    std::size_t num_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == num_start) return fail();
    std::string num = text.substr(0, i);
    if (i == text.size()) return Rational(Integer(num));
    if (text[i] != '/') return fail();
    ++i;
    std::size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size()) return fail();
    Integer den(text.substr(den_start));
    return Rational(Integer(num), den);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace hyinv
