#include "dulac/env.hpp"

namespace dulac {

std::string to_string(SignAssumption s) {
    switch (s) {
    case SignAssumption::Positive: return "positive";
    case SignAssumption::Negative: return "negative";
    case SignAssumption::Nonneg: return "nonneg";
    case SignAssumption::Nonpos: return "nonpos";
    case SignAssumption::Free: return "free";
    }
    return "free";
}

void ParamEnv::validate() const {
    for (const auto& [name, info] : params) {
        if (info.lo > info.hi)
            throw EnvError("parameter '" + name + "': empty interval [" + to_string(info.lo) +
                           ", " + to_string(info.hi) + "]");
        bool ok = true;
        switch (info.sign) {
        case SignAssumption::Positive: ok = info.lo > 0; break;
        case SignAssumption::Negative: ok = info.hi < 0; break;
        case SignAssumption::Nonneg: ok = info.lo >= 0; break;
        case SignAssumption::Nonpos: ok = info.hi <= 0; break;
        case SignAssumption::Free: break;
        }
        if (!ok)
            throw EnvError("parameter '" + name + "': interval [" + to_string(info.lo) + ", " +
                           to_string(info.hi) + "] violates sign assumption '" +
                           to_string(info.sign) + "'");
    }
}

std::map<std::string, Rational> ParamEnv::midpoint_sample() const {
    std::map<std::string, Rational> out;
    for (const auto& [name, info] : params)
        out[name] = (info.lo + info.hi) / 2;
    return out;
}

std::map<std::string, Interval> ParamEnv::interval_map() const {
    std::map<std::string, Interval> out;
    for (const auto& [name, info] : params)
        out[name] = from_rational(info.lo, info.hi);
    return out;
}

SignAssumption sign_from_interval(const Rational& lo, const Rational& hi) {
    if (lo > 0) return SignAssumption::Positive;
    if (hi < 0) return SignAssumption::Negative;
    if (lo >= 0) return SignAssumption::Nonneg;
    if (hi <= 0) return SignAssumption::Nonpos;
    return SignAssumption::Free;
}

std::pair<Rational, Rational> default_interval(SignAssumption s) {
    switch (s) {
    case SignAssumption::Positive: return {Rational(1), Rational(1)};
    case SignAssumption::Negative: return {Rational(-1), Rational(-1)};
    case SignAssumption::Nonneg: return {Rational(0), Rational(1)};
    case SignAssumption::Nonpos: return {Rational(-1), Rational(0)};
    case SignAssumption::Free: return {Rational(-1), Rational(1)};
    }
    return {Rational(-1), Rational(1)};
}

} // namespace dulac
