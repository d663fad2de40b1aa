#include "slab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace slab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

long long parse_integer(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer literal: " + s);
    return v;
}

Rational parse_decimal(const std::string& s) {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(parse_integer(s));
    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    if (fp.size() > 15) throw std::invalid_argument("too many decimal digits: " + s);
    for (char c : fp)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad decimal literal: " + s);
    long long den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    long long whole = ip.empty() ? 0 : parse_integer(ip);
    long long frac = fp.empty() ? 0 : parse_integer(fp);
    Rational q(whole * den + frac, den);
    return neg ? -q : q;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const std::string s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s);
    long long num = parse_integer(trim(s.substr(0, slash)));
    long long den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num, den);
}

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

double to_double(const Rational& q) {
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

Exponent Exponent::parse(const std::string& text) {
    const std::string s = trim(text);
    if (s == "inf" || s == "infinity" || s == "oo" || s == "Inf") return infinity();
    return Exponent(parse_rational(s));
}

const Rational& Exponent::rational() const {
    if (inf_) throw std::logic_error("Exponent: infinite exponent has no rational value");
    return value_;
}

double Exponent::value() const {
    if (inf_) throw std::logic_error("Exponent: infinite exponent has no finite value");
    return to_double(value_);
}

Exponent Exponent::conjugate() const {
    if (inf_) return Exponent(1);
    if (value_ == Rational(1)) return infinity();
    if (value_ < Rational(1)) throw std::invalid_argument("Exponent: conjugate needs p >= 1");
    return Exponent(value_ / (value_ - 1));
}

std::string Exponent::str() const { return inf_ ? "inf" : to_string(value_); }

void Exponent::check() const {
    if (!inf_ && value_ <= Rational(0)) throw std::invalid_argument("Exponent: must be positive");
}

}  // namespace slab
