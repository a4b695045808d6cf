#pragma once

// Staged candidate enumeration. Separable fast paths run first, then the
// gamma template table is swept stage by stage (kappa/z with negative kappa,
// then positive, then constants, then affine-in-1/z, then polynomials up to
// degree 2), family-major inside each stage. Candidates are screened on a
// deterministic sample schedule before the interval prover is spent on them.
// The first certified candidate in rank order wins; ranks make the result
// independent of the worker count.

#include "dulac/ansatz.hpp"
#include "dulac/certify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dulac {

struct SearchConfig {
    ProveConfig prove;

    // kappa magnitudes; stages derive their grids from these (negated for the
    // negative-kappa stage, both signs interleaved for constants and beyond)
    std::vector<Rational> kappa_grid = {Rational(1), Rational(2), Rational(3),
                                        Rational(4), Rational(1, 2)};
    // LinearZ coefficient pairs tried as family instances
    std::vector<std::pair<Rational, Rational>> linear_grid = {
        {Rational(1), Rational(-1)}, {Rational(2), Rational(1)}, {Rational(1), Rational(2)}};

    bool exhaustive = false;   // keep enumerating after a win, full transcript
    int workers = 1;           // batch width; never changes the outcome
    long max_candidates = 0;   // 0 = unlimited

    // restrict the family instance list (e.g. user-picked family or general
    // z); empty = default [sv1, sv2, product, sum, linear grid..., quotient]
    std::vector<Ansatz> instances;

    // certify a user-supplied c instead of synthesizing one: gamma is
    // recovered per family via the dependence ratio and the template table
    std::optional<Expr> user_c;
};

struct TranscriptEntry {
    long rank = 0;
    std::string stage;   // "separable", "kappa/z < 0", ..., "user c"
    std::string family;  // ansatz display form
    std::string gamma;   // template display form, "-" for separable shapes
    std::string outcome; // "certified", "screened", "unsupported", "refused"
    std::string detail;
};

struct SearchResult {
    std::optional<Certificate> certificate;
    std::vector<TranscriptEntry> transcript; // rank order, cut at the winner
                                             // unless exhaustive
    bool any_disproved = false; // some candidate failed with a sign witness
    long candidates_tried = 0;
};

std::vector<Ansatz> default_instances(const SearchConfig& config);

SearchResult search_dulac(const VectorField& F, const Region& region,
                          const ParamEnv& env, const SearchConfig& config = {});

} // namespace dulac
