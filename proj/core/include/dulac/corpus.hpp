#pragma once

// Built-in example systems with frozen regions, parameter boxes, and the
// multiplier the default search is expected to find. Doubles as regression
// data and as ready-made CLI inputs.

#include "dulac/input.hpp"

#include <string>
#include <vector>

namespace dulac {

struct CorpusEntry {
    std::string name;
    std::string note; // one-line description
    std::string f1, f2;
    ParamEnv env;
    Region region;
    // expected default-search outcome; empty when no certificate exists
    std::string expected_family; // ansatz display form
    std::string expected_h;      // print form of the winning multiplier
    std::string expected_c;      // matching auxiliary function, exact
};

const std::vector<CorpusEntry>& corpus();
const CorpusEntry* corpus_find(const std::string& name);

// entry as a parsed input file (search settings left at defaults)
InputFile corpus_input(const CorpusEntry& e);

} // namespace dulac
