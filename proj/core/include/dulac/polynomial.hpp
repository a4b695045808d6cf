#pragma once

// Sparse multivariate polynomials over exact rationals. Variables are named:
// "x1" and "x2" rank first, then parameters alphabetically, then opaque
// transcendental atoms (names starting with "exp(" or "log("). The monomial
// order is graded, then lexicographic in that ranking; it fixes canonical
// printing and the reduction used by exact division and gcd.

#include "dulac/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dulac {

// 0 = x1, 1 = x2, 2 = parameter, 3 = atom
int var_class(const std::string& name);
bool var_less(const std::string& a, const std::string& b);

struct Monomial {
    // sorted by var_less, exponents > 0
    std::vector<std::pair<std::string, long>> factors;

    long total_degree() const;
    long degree_in(const std::string& v) const;
    bool divides(const Monomial& other) const;
    Monomial times(const Monomial& other) const;
    Monomial divided_by(const Monomial& other) const; // requires divides()
    bool operator==(const Monomial& other) const { return factors == other.factors; }
    bool operator<(const Monomial& other) const; // graded-lex
};

class Poly {
public:
    Poly() = default;
    explicit Poly(Rational c);
    static Poly variable(const std::string& name, long exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // requires is_constant()

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    void set_term(const Monomial& m, const Rational& c);

    long total_degree() const;
    long degree_in(const std::string& v) const;
    std::set<std::string> vars() const;

    // coefficient of v^k, as a polynomial in the remaining variables
    Poly coeff_of(const std::string& v, long k) const;
    // leading term in the monomial order
    std::pair<Monomial, Rational> leading() const; // requires !is_zero()

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly pow(long n) const; // n >= 0

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    Rational eval(const std::map<std::string, Rational>& point) const;

    std::string str() const; // debug form

private:
    std::map<Monomial, Rational> terms_;
};

// nullopt if b does not divide a exactly
std::optional<Poly> exact_div(const Poly& a, const Poly& b);

// gcd up to a nonzero rational unit; gcd(0,0) = 0
Poly poly_gcd(const Poly& a, const Poly& b);

// a == c * P where P has coprime integer coefficients and positive leading
// coefficient; integer_primitive(0) == (1, 0)
std::pair<Rational, Poly> integer_primitive(const Poly& a);

} // namespace dulac
