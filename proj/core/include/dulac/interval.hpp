#pragma once

// Closed interval with double endpoints and outward rounding. Every operation
// returns an enclosure of the exact image; endpoints step outward by a few ulp
// after each primitive, which is slightly wider than directed rounding but
// sound. Division and log do not throw: enclosures that cannot exclude the
// singular set are reported through EvalStatus so a prover can split the box.

#include "dulac/rational.hpp"

namespace dulac {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval whole();
    static Interval point(double v) { return {v, v}; }

    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    double width() const { return hi - lo; }
    double mid() const;
};

Interval from_rational(const Rational& lo, const Rational& hi);
Interval from_rational(const Rational& v);

// exact containment test against rational value
bool contains(const Interval& iv, const Rational& v);

Interval operator-(const Interval& a);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);

enum class EvalStatus {
    Ok,
    PossibleDivisionByZero, // denominator enclosure contains 0
    PossibleLogNonpositive, // log argument enclosure reaches <= 0
};

struct IntervalResult {
    EvalStatus status = EvalStatus::Ok;
    Interval value{};

    bool ok() const { return status == EvalStatus::Ok; }
    static IntervalResult of(Interval v) { return {EvalStatus::Ok, v}; }
    static IntervalResult fail(EvalStatus s) { return {s, Interval::whole()}; }
};

IntervalResult div(const Interval& a, const Interval& b);
Interval pow_int(const Interval& a, long n); // n > 0; negative exponents go through div
Interval exp(const Interval& a);
IntervalResult log(const Interval& a);

Interval hull(const Interval& a, const Interval& b);

} // namespace dulac
