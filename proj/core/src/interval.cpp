#include "dulac/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dulac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double step_down(double x) {
    if (std::isnan(x)) return -kInf;
    if (x == -kInf) return x;
    return std::nextafter(x, -kInf);
}

double step_up(double x) {
    if (std::isnan(x)) return kInf;
    if (x == kInf) return x;
    return std::nextafter(x, kInf);
}

// glibc exp/log are documented within 2 ulp; step 3 to be safe.
double step_down_n(double x, int n) {
    for (int i = 0; i < n; ++i) x = step_down(x);
    return x;
}
double step_up_n(double x, int n) {
    for (int i = 0; i < n; ++i) x = step_up(x);
    return x;
}

Interval sanitize(Interval v) {
    if (std::isnan(v.lo) || std::isnan(v.hi) || v.lo > v.hi) return Interval::whole();
    return v;
}

// error-free transforms decide whether an endpoint needs outward stepping;
// exact results (dyadic arithmetic, zeros) keep their exact endpoints, which
// the sign prover relies on for boundary-touching enclosures

struct EndBound {
    double lo, hi; // sound bracket of one exact endpoint product/sum
};

EndBound add_ep(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return {step_down(s), step_up(s)};
    const double bp = s - a;
    const double err = (a - (s - bp)) + (b - bp); // two-sum residue
    if (err == 0.0) return {s, s};
    return {err < 0.0 ? step_down(s) : s, err > 0.0 ? step_up(s) : s};
}

// 0 * inf in endpoint products must mean 0 (the factor set really is {0}).
EndBound mul_ep(double a, double b) {
    if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a))) return {0.0, 0.0};
    const double p = a * b;
    if (!std::isfinite(p)) return {step_down(p), step_up(p)};
    const double err = std::fma(a, b, -p);
    if (err == 0.0) return {p, p};
    return {err < 0.0 ? step_down(p) : p, err > 0.0 ? step_up(p) : p};
}

EndBound div_ep(double a, double b) {
    const double q = a / b;
    if (!std::isfinite(q)) return {step_down(q), step_up(q)};
    const double err = std::fma(q, b, -a);
    if (err == 0.0) return {q, q};
    return {step_down(q), step_up(q)};
}

} // namespace

Interval Interval::whole() { return {-kInf, kInf}; }

double Interval::mid() const {
    if (lo == -kInf && hi == kInf) return 0.0;
    if (lo == -kInf) return hi - 1.0;
    if (hi == kInf) return lo + 1.0;
    double m = 0.5 * (lo + hi);
    if (!std::isfinite(m)) m = 0.5 * lo + 0.5 * hi;
    return m;
}

Interval from_rational(const Rational& lo, const Rational& hi) {
    return {to_double_down(lo), to_double_up(hi)};
}

Interval from_rational(const Rational& v) { return from_rational(v, v); }

bool contains(const Interval& iv, const Rational& v) {
    if (iv.lo != -kInf && Rational(iv.lo) > v) return false;
    if (iv.hi != kInf && Rational(iv.hi) < v) return false;
    return true;
}

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator+(const Interval& a, const Interval& b) {
    return sanitize({add_ep(a.lo, b.lo).lo, add_ep(a.hi, b.hi).hi});
}

Interval operator-(const Interval& a, const Interval& b) {
    return sanitize({add_ep(a.lo, -b.hi).lo, add_ep(a.hi, -b.lo).hi});
}

Interval operator*(const Interval& a, const Interval& b) {
    const EndBound p[] = {mul_ep(a.lo, b.lo), mul_ep(a.lo, b.hi), mul_ep(a.hi, b.lo),
                          mul_ep(a.hi, b.hi)};
    for (const EndBound& e : p)
        if (std::isnan(e.lo) || std::isnan(e.hi)) return Interval::whole();
    return sanitize({std::min({p[0].lo, p[1].lo, p[2].lo, p[3].lo}),
                     std::max({p[0].hi, p[1].hi, p[2].hi, p[3].hi})});
}

IntervalResult div(const Interval& a, const Interval& b) {
    if (b.contains_zero()) return IntervalResult::fail(EvalStatus::PossibleDivisionByZero);
    const EndBound q[] = {div_ep(a.lo, b.lo), div_ep(a.lo, b.hi), div_ep(a.hi, b.lo),
                          div_ep(a.hi, b.hi)};
    for (const EndBound& e : q)
        if (std::isnan(e.lo) || std::isnan(e.hi)) return IntervalResult::of(Interval::whole());
    return IntervalResult::of(sanitize({std::min({q[0].lo, q[1].lo, q[2].lo, q[3].lo}),
                                        std::max({q[0].hi, q[1].hi, q[2].hi, q[3].hi})}));
}

namespace {

bool pow_exact_ep(double x) { return x == 0.0 || x == 1.0 || x == -1.0; }

} // namespace

Interval pow_int(const Interval& a, long n) {
    if (n == 1) return a;
    if (n % 2 == 0) {
        // even: image is [min^n, max^n] over |a|
        double alo = std::max(0.0, std::max(a.lo, -a.hi));
        double ahi = std::max(std::fabs(a.lo), std::fabs(a.hi));
        if (a.contains_zero()) alo = 0.0;
        double lo = std::pow(alo, (double)n), hi = std::pow(ahi, (double)n);
        return sanitize({pow_exact_ep(alo) ? lo : step_down_n(lo, 3),
                         pow_exact_ep(ahi) ? hi : step_up_n(hi, 3)});
    }
    double lo = std::pow(a.lo, (double)n), hi = std::pow(a.hi, (double)n);
    return sanitize({pow_exact_ep(a.lo) ? lo : step_down_n(lo, 3),
                     pow_exact_ep(a.hi) ? hi : step_up_n(hi, 3)});
}

Interval exp(const Interval& a) {
    double lo = a.lo == -kInf ? 0.0 : std::max(0.0, step_down_n(std::exp(a.lo), 3));
    double hi = a.hi == kInf ? kInf : step_up_n(std::exp(a.hi), 3);
    return sanitize({lo, hi});
}

IntervalResult log(const Interval& a) {
    if (a.lo <= 0.0) return IntervalResult::fail(EvalStatus::PossibleLogNonpositive);
    double lo = step_down_n(std::log(a.lo), 3);
    double hi = a.hi == kInf ? kInf : step_up_n(std::log(a.hi), 3);
    return IntervalResult::of(sanitize({lo, hi}));
}

Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

} // namespace dulac
