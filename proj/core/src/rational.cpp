#include "dulac/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <cmath>
#include <limits>

namespace dulac {

std::optional<Rational> parse_rational(std::string_view text) {
    size_t i = 0, n = text.size();
    auto skip_ws = [&] { while (i < n && std::isspace((unsigned char)text[i])) ++i; };
    skip_ws();
    bool neg = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) neg = (text[i++] == '-');
    if (i >= n || !std::isdigit((unsigned char)text[i])) return std::nullopt;

    BigInt int_part = 0;
    while (i < n && std::isdigit((unsigned char)text[i])) int_part = int_part * 10 + (text[i++] - '0');

    BigInt frac_num = 0;
    BigInt frac_den = 1;
    if (i < n && text[i] == '.') {
        ++i;
        if (i >= n || !std::isdigit((unsigned char)text[i])) return std::nullopt;
        while (i < n && std::isdigit((unsigned char)text[i])) {
            frac_num = frac_num * 10 + (text[i++] - '0');
            frac_den *= 10;
        }
    }

    long expo = 0;
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) eneg = (text[i++] == '-');
        if (i >= n || !std::isdigit((unsigned char)text[i])) return std::nullopt;
        while (i < n && std::isdigit((unsigned char)text[i])) {
            expo = expo * 10 + (text[i++] - '0');
            if (expo > 100000) return std::nullopt;
        }
        if (eneg) expo = -expo;
    }

    Rational r = Rational(int_part) + Rational(frac_num, frac_den);
    if (expo > 0) {
        BigInt p = 1;
        for (long k = 0; k < expo; ++k) p *= 10;
        r *= Rational(p);
    } else if (expo < 0) {
        BigInt p = 1;
        for (long k = 0; k < -expo; ++k) p *= 10;
        r /= Rational(p);
    }
    if (neg) r = -r;

    skip_ws();
    if (i == n) return r;

    // a single '/' denominator tail: "p/q"
    if (text[i] == '/') {
        ++i;
        auto den = parse_rational(text.substr(i));
        if (!den || den->is_zero()) return std::nullopt;
        return r / *den;
    }
    return std::nullopt;
}

std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += '/';
        s += denominator(q).str();
    }
    return s;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

double to_double_down(const Rational& q) {
    double d = q.convert_to<double>();
    if (std::isnan(d)) return -std::numeric_limits<double>::infinity();
    if (std::isinf(d)) {
        if (d > 0) d = std::numeric_limits<double>::max();
        else return d;
    }
    while (Rational(d) > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
    while (true) {
        double up = std::nextafter(d, std::numeric_limits<double>::infinity());
        if (std::isinf(up) || Rational(up) > q) break;
        d = up;
    }
    return d;
}

double to_double_up(const Rational& q) { return -to_double_down(-q); }

BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }
Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

} // namespace dulac
