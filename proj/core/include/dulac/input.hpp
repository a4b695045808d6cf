#pragma once

// Sectioned key-value input files: [system] holds the two equations as quoted
// strings, [params] the sign assumptions and intervals, [region] the box, and
// an optional [search] section overrides prover and enumeration knobs. The
// writer emits a canonical form that parses back to the same data.

#include "dulac/search.hpp"
#include "dulac/system.hpp"

#include <stdexcept>
#include <string>

namespace dulac {

struct InputError : std::runtime_error {
    int line; // 1-based; 0 when the problem is not tied to a line
    InputError(const std::string& file, int ln, const std::string& msg)
        : std::runtime_error(file + ":" + std::to_string(ln) + ": " + msg), line(ln) {}
};

struct InputFile {
    std::string f1_text, f2_text; // equation sources as written
    VectorField field;
    ParamEnv env;
    Region region;
    SearchConfig search;
    bool has_region = false; // false when the region was defaulted
};

InputFile parse_input_text(const std::string& text, const std::string& filename = "<input>");
InputFile load_input_file(const std::string& path);

// canonical export; [search] carries only values that differ from defaults
std::string write_input_text(const InputFile& in);

} // namespace dulac
