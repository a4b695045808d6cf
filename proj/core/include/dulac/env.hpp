#pragma once

// Parameter environment: every named parameter carries a sign assumption and
// a closed rational interval. Certification quantifies over the interval;
// point evaluation uses samples drawn from it.

#include "dulac/interval.hpp"
#include "dulac/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace dulac {

enum class SignAssumption { Positive, Negative, Nonneg, Nonpos, Free };

std::string to_string(SignAssumption s);

struct ParamInfo {
    SignAssumption sign = SignAssumption::Free;
    Rational lo{0};
    Rational hi{0};
};

struct EnvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamEnv {
    std::map<std::string, ParamInfo> params;

    // enforces lo <= hi and sign/interval consistency (positive => lo > 0, ...)
    void validate() const;

    bool has(const std::string& name) const { return params.count(name) != 0; }
    std::map<std::string, Rational> midpoint_sample() const;
    std::map<std::string, Interval> interval_map() const;
};

SignAssumption sign_from_interval(const Rational& lo, const Rational& hi);
// default point interval for a bare sign declaration
std::pair<Rational, Rational> default_interval(SignAssumption s);

} // namespace dulac
