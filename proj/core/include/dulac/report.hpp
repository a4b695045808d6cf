#pragma once

// Deterministic rendering of search and verify outcomes: a plain-text report
// made of key: value lines, plus an optional machine block (one JSON object
// with a fixed field list). Output depends only on inputs and config; wall
// time and worker counts never appear, so regeneration is byte-identical.

#include "dulac/certify.hpp"
#include "dulac/input.hpp"
#include "dulac/search.hpp"

#include <string>

namespace dulac {

std::string render_search_report(const InputFile& in, const SearchResult& res);
std::string render_verify_report(const InputFile& in, const DulacCandidate& cand,
                                 const CertifyOutcome& out);

// machine block field list, in order: claim, status, counterexample,
// boxes_total, undecided_volume_fraction, max_depth, h, c, k, region, params.
// Exact rationals are emitted as strings; absent fields are null.
std::string machine_block_search(const InputFile& in, const SearchResult& res);
std::string machine_block_verify(const InputFile& in, const DulacCandidate& cand,
                                 const CertifyOutcome& out);

// outcome word shared by reports, machine blocks, and exit-code mapping:
// "certified", "disproved", "pole", "unknown", "residual-nonzero"
std::string outcome_word(const CertifyOutcome& out);

} // namespace dulac
