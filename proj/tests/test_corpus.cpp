#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dulac/corpus.hpp"
#include "dulac/search.hpp"

#include <set>

using namespace dulac;

namespace {

bool exact_equal(const Expr& a, const Expr& b, const ParamEnv& env) {
    return is_identically_zero(sub(a, b), env).zero;
}

} // namespace

TEST_CASE("registry holds ten well-formed entries") {
    const auto& all = corpus();
    REQUIRE(all.size() == 10);

    std::set<std::string> names;
    for (const auto& e : all) {
        CAPTURE(e.name);
        CHECK(names.insert(e.name).second);
        CHECK(!e.note.empty());
        CHECK_NOTHROW(parse_expr(e.f1));
        CHECK_NOTHROW(parse_expr(e.f2));
        CHECK_NOTHROW(e.env.validate());
        CHECK_NOTHROW(e.region.validate());
        if (e.name == "vanderpol") {
            CHECK(e.expected_h.empty());
        } else {
            CHECK(!e.expected_family.empty());
            CHECK(!e.expected_h.empty());
            CHECK(!e.expected_c.empty());
        }
    }
    CHECK(corpus_find("sis") != nullptr);
    CHECK(corpus_find("does-not-exist") == nullptr);
}

TEST_CASE("expected multiplier and auxiliary function solve the defining equation") {
    for (const auto& e : corpus()) {
        if (e.expected_h.empty()) continue;
        CAPTURE(e.name);
        VectorField F{parse_expr(e.f1), parse_expr(e.f2)};
        Expr h = parse_expr(e.expected_h);
        Expr c = parse_expr(e.expected_c);
        CHECK(is_identically_zero(pde_residual(F, h, c), e.env).zero);
    }
}

TEST_CASE("default search reproduces every expected winner") {
    for (const auto& e : corpus()) {
        if (e.expected_h.empty()) continue;
        CAPTURE(e.name);
        VectorField F{parse_expr(e.f1), parse_expr(e.f2)};
        SearchResult res = search_dulac(F, e.region, e.env, {});
        REQUIRE(res.certificate.has_value());
        CHECK(print_expr(res.certificate->cand.h) == e.expected_h);
        CHECK(ansatz_display(res.certificate->cand.ansatz) == e.expected_family);
        CHECK(exact_equal(res.certificate->cand.c, parse_expr(e.expected_c), e.env));
    }
}

TEST_CASE("epidemic model stays certified when every parameter widens to [1/2, 2]") {
    const CorpusEntry* e = corpus_find("sis");
    REQUIRE(e != nullptr);
    ParamEnv wide = e->env;
    for (auto& [name, info] : wide.params) {
        info.lo = Rational(1, 2);
        info.hi = 2;
    }
    VectorField F{parse_expr(e->f1), parse_expr(e->f2)};
    SearchResult res = search_dulac(F, e->region, wide, {});
    REQUIRE(res.certificate.has_value());
    CHECK(print_expr(res.certificate->cand.h) == "1/x2");
}

TEST_CASE("entries round-trip through the input file format") {
    for (const auto& e : corpus()) {
        CAPTURE(e.name);
        InputFile in = corpus_input(e);
        std::string text = write_input_text(in);
        InputFile back = parse_input_text(text, e.name);

        CHECK(back.f1_text == in.f1_text);
        CHECK(back.f2_text == in.f2_text);
        CHECK(print_expr(back.field.f1) == print_expr(in.field.f1));
        CHECK(print_expr(back.field.f2) == print_expr(in.field.f2));
        CHECK(back.region.kind == in.region.kind);
        CHECK(back.region.x1_lo == in.region.x1_lo);
        CHECK(back.region.x1_hi == in.region.x1_hi);
        CHECK(back.region.x2_lo == in.region.x2_lo);
        CHECK(back.region.x2_hi == in.region.x2_hi);
        REQUIRE(back.env.params.size() == in.env.params.size());
        for (const auto& [name, info] : in.env.params) {
            REQUIRE(back.env.has(name));
            CHECK(back.env.params.at(name).sign == info.sign);
            CHECK(back.env.params.at(name).lo == info.lo);
            CHECK(back.env.params.at(name).hi == info.hi);
        }
        CHECK(write_input_text(back) == text);
    }
}
