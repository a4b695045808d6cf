#include "dulac/expr.hpp"
#include "dulac/search.hpp"
#include "dulac/system.hpp"

#include <benchmark/benchmark.h>

namespace {

const char* kSis1 = "lambda - mu*x1 - alpha*x2";
const char* kSis2 = "beta*(x1 - x2)*x2 - (alpha + mu + delta)*x2";

std::map<std::string, dulac::Interval> param_boxes() {
    std::map<std::string, dulac::Interval> m;
    for (const char* n : {"lambda", "mu", "alpha", "beta", "delta"})
        m[n] = dulac::Interval{0.5, 2.0};
    return m;
}

void BM_parse_normalize(benchmark::State& state) {
    for (auto _ : state) {
        auto e = dulac::normalize(dulac::parse_expr(kSis2));
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_parse_normalize);

void BM_divergence(benchmark::State& state) {
    dulac::VectorField sys{dulac::parse_expr(kSis1), dulac::parse_expr(kSis2)};
    for (auto _ : state) {
        auto d = dulac::divergence(sys);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_divergence);

void BM_eval_interval(benchmark::State& state) {
    auto params = param_boxes();
    auto e = dulac::div_hF(dulac::VectorField{dulac::parse_expr(kSis1), dulac::parse_expr(kSis2)},
                           dulac::parse_expr("1/x2"));
    dulac::Interval x1{0.1, 10.0}, x2{0.1, 10.0};
    for (auto _ : state) {
        auto r = dulac::eval_interval(e, x1, x2, params);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_eval_interval);

dulac::ParamEnv sis_env() {
    dulac::ParamEnv env;
    for (const char* n : {"lambda", "mu", "alpha", "beta", "delta"})
        env.params[n] = {dulac::SignAssumption::Positive, dulac::Rational(1, 2),
                         dulac::Rational(2)};
    return env;
}

dulac::Region sis_region() {
    return {dulac::RegionKind::PositiveQuadrantBox, dulac::Rational(1, 10), dulac::Rational(10),
            dulac::Rational(1, 10), dulac::Rational(10)};
}

void BM_prove_sign(benchmark::State& state) {
    auto k = dulac::div_hF(dulac::VectorField{dulac::parse_expr(kSis1), dulac::parse_expr(kSis2)},
                           dulac::parse_expr("1/x2"));
    auto env = sis_env();
    auto region = sis_region();
    for (auto _ : state) {
        auto proof = dulac::prove_sign(k, region, env, dulac::SignClaim::NonposAe);
        benchmark::DoNotOptimize(proof);
    }
}
BENCHMARK(BM_prove_sign);

void BM_search(benchmark::State& state) {
    dulac::VectorField sys{dulac::parse_expr(kSis1), dulac::parse_expr(kSis2)};
    auto env = sis_env();
    auto region = sis_region();
    for (auto _ : state) {
        auto res = dulac::search_dulac(sys, region, env, {});
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_search);

} // namespace

BENCHMARK_MAIN();
