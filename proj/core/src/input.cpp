#include "dulac/input.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace dulac {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"')
            quoted = !quoted;
        else if (line[i] == '#' && !quoted)
            return line.substr(0, i);
    }
    return line;
}

// elements of "[a, b, c]" split on top-level commas; parens keep
// linear-z(2,1) together
std::optional<std::vector<std::string>> split_list(const std::string& v) {
    std::string s = trim(v);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
    s = s.substr(1, s.size() - 2);
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') depth++;
        if (ch == ')') depth--;
        if (ch == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

std::optional<std::pair<Rational, Rational>> parse_interval(const std::string& v) {
    auto parts = split_list(v);
    if (!parts || parts->size() != 2) return std::nullopt;
    auto lo = parse_rational((*parts)[0]);
    auto hi = parse_rational((*parts)[1]);
    if (!lo || !hi) return std::nullopt;
    return std::make_pair(*lo, *hi);
}

std::optional<SignAssumption> sign_from_word(const std::string& w) {
    if (w == "positive") return SignAssumption::Positive;
    if (w == "negative") return SignAssumption::Negative;
    if (w == "nonneg") return SignAssumption::Nonneg;
    if (w == "nonpos") return SignAssumption::Nonpos;
    if (w == "free") return SignAssumption::Free;
    return std::nullopt;
}

std::optional<Ansatz> family_from_token(const std::string& t) {
    if (t == "single-var-1") return Ansatz::single_var(1);
    if (t == "single-var-2") return Ansatz::single_var(2);
    if (t == "product-z") return Ansatz::product_z();
    if (t == "sum-z") return Ansatz::sum_z();
    if (t == "quotient-z") return Ansatz::quotient_z();
    if (t.rfind("linear-z(", 0) == 0 && t.back() == ')') {
        std::string inner = t.substr(9, t.size() - 10);
        size_t comma = inner.find(',');
        if (comma == std::string::npos) return std::nullopt;
        auto c1 = parse_rational(trim(inner.substr(0, comma)));
        auto c2 = parse_rational(trim(inner.substr(comma + 1)));
        if (!c1 || !c2) return std::nullopt;
        return Ansatz::linear_z(*c1, *c2);
    }
    return std::nullopt;
}

std::optional<double> parse_double(const std::string& s) {
    const char* b = s.c_str();
    char* end = nullptr;
    double v = std::strtod(b, &end);
    if (end == b || *end != '\0') return std::nullopt;
    return v;
}

std::string double_str(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

} // namespace

InputFile parse_input_text(const std::string& text, const std::string& filename) {
    InputFile in;
    enum class Section { None, System, Params, Region, Search } section = Section::None;
    bool region_kind_set = false, region_x1 = false, region_x2 = false;
    int f1_line = 0, f2_line = 0;

    auto fail = [&](int ln, const std::string& msg) -> void { throw InputError(filename, ln, msg); };

    std::istringstream stream(text);
    std::string raw;
    int ln = 0;
    while (std::getline(stream, raw)) {
        ++ln;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line.front() == '[' && line.back() == ']') {
            std::string name = trim(line.substr(1, line.size() - 2));
            if (name == "system")
                section = Section::System;
            else if (name == "params")
                section = Section::Params;
            else if (name == "region") {
                section = Section::Region;
                in.has_region = true;
            } else if (name == "search")
                section = Section::Search;
            else
                fail(ln, "unknown section [" + name + "]");
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(ln, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(ln, "empty key");
        if (value.empty()) fail(ln, "empty value for '" + key + "'");

        switch (section) {
        case Section::None:
            fail(ln, "'" + key + "' appears before any section header");
            break;

        case Section::System: {
            if (key != "x1'" && key != "x2'")
                fail(ln, "unknown system key '" + key + "' (expected x1' or x2')");
            if (value.size() < 2 || value.front() != '"' || value.back() != '"')
                fail(ln, "equation for " + key + " must be a quoted string");
            std::string src = value.substr(1, value.size() - 2);
            Expr e;
            try {
                e = parse_expr(src);
            } catch (const ParseError& pe) {
                fail(ln, key + ": " + pe.what());
            }
            if (key == "x1'") {
                if (f1_line) fail(ln, "x1' already set on line " + std::to_string(f1_line));
                in.f1_text = src;
                in.field.f1 = e;
                f1_line = ln;
            } else {
                if (f2_line) fail(ln, "x2' already set on line " + std::to_string(f2_line));
                in.f2_text = src;
                in.field.f2 = e;
                f2_line = ln;
            }
            break;
        }

        case Section::Params: {
            if (in.env.has(key)) fail(ln, "parameter '" + key + "' declared twice");
            ParamInfo info;
            if (value.front() == '[') {
                auto iv = parse_interval(value);
                if (!iv) fail(ln, "bad interval for '" + key + "'");
                info.lo = iv->first;
                info.hi = iv->second;
                info.sign = sign_from_interval(info.lo, info.hi);
            } else {
                size_t sp = value.find_first_of(" \t");
                std::string word = sp == std::string::npos ? value : trim(value.substr(0, sp));
                auto sgn = sign_from_word(word);
                if (!sgn)
                    fail(ln, "expected a sign assumption or interval for '" + key + "', got '" +
                                 word + "'");
                info.sign = *sgn;
                if (sp == std::string::npos) {
                    auto [lo, hi] = default_interval(*sgn);
                    info.lo = lo;
                    info.hi = hi;
                } else {
                    auto iv = parse_interval(trim(value.substr(sp)));
                    if (!iv) fail(ln, "bad interval for '" + key + "'");
                    info.lo = iv->first;
                    info.hi = iv->second;
                }
            }
            in.env.params[key] = info;
            break;
        }

        case Section::Region: {
            if (key == "kind") {
                if (region_kind_set) fail(ln, "region kind declared twice");
                if (value == "box")
                    in.region.kind = RegionKind::Box;
                else if (value == "positive-quadrant-box")
                    in.region.kind = RegionKind::PositiveQuadrantBox;
                else
                    fail(ln, "unknown region kind '" + value + "'");
                region_kind_set = true;
            } else if (key == "x1" || key == "x2") {
                auto iv = parse_interval(value);
                if (!iv) fail(ln, "bad interval for region " + key);
                if (key == "x1") {
                    if (region_x1) fail(ln, "region x1 declared twice");
                    in.region.x1_lo = iv->first;
                    in.region.x1_hi = iv->second;
                    region_x1 = true;
                } else {
                    if (region_x2) fail(ln, "region x2 declared twice");
                    in.region.x2_lo = iv->first;
                    in.region.x2_hi = iv->second;
                    region_x2 = true;
                }
            } else {
                fail(ln, "unknown region key '" + key + "'");
            }
            break;
        }

        case Section::Search: {
            SearchConfig& sc = in.search;
            auto want_long = [&](long lo) -> long {
                long v = 0;
                auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
                if (ec != std::errc() || p != value.data() + value.size() || v < lo)
                    fail(ln, "bad value for '" + key + "'");
                return v;
            };
            auto want_double = [&]() -> double {
                auto v = parse_double(value);
                if (!v || !(*v > 0)) fail(ln, "bad value for '" + key + "'");
                return *v;
            };
            auto want_bool = [&]() -> bool {
                if (value == "true") return true;
                if (value == "false") return false;
                fail(ln, "expected true or false for '" + key + "'");
                return false;
            };
            if (key == "max_depth")
                sc.prove.max_depth = static_cast<int>(want_long(1));
            else if (key == "rho")
                sc.prove.rho = want_double();
            else if (key == "delta_zero")
                sc.prove.delta_zero = want_double();
            else if (key == "max_boxes")
                sc.prove.max_boxes = want_long(1);
            else if (key == "seed")
                sc.prove.seed = static_cast<std::uint64_t>(want_long(0));
            else if (key == "workers")
                sc.workers = static_cast<int>(want_long(1));
            else if (key == "max_candidates")
                sc.max_candidates = want_long(1);
            else if (key == "exhaustive")
                sc.exhaustive = want_bool();
            else if (key == "kappa_grid") {
                auto parts = split_list(value);
                if (!parts || parts->empty()) fail(ln, "bad kappa_grid list");
                sc.kappa_grid.clear();
                for (const auto& p : *parts) {
                    auto r = parse_rational(p);
                    if (!r || r->is_zero()) fail(ln, "bad kappa_grid entry '" + p + "'");
                    sc.kappa_grid.push_back(*r);
                }
            } else if (key == "families") {
                auto parts = split_list(value);
                if (!parts || parts->empty()) fail(ln, "bad families list");
                sc.instances.clear();
                for (const auto& p : *parts) {
                    auto a = family_from_token(p);
                    if (!a) fail(ln, "unknown family '" + p + "'");
                    sc.instances.push_back(*a);
                }
            } else {
                fail(ln, "unknown search key '" + key + "'");
            }
            break;
        }
        }
    }

    if (!f1_line || !f2_line) fail(ln, "both x1' and x2' equations are required");
    if (in.has_region && (!region_x1 || !region_x2))
        fail(ln, "[region] needs both x1 and x2 bounds");
    if (!in.has_region) {
        in.region.kind = RegionKind::PositiveQuadrantBox;
        in.region.x1_lo = in.region.x2_lo = Rational(1, 100);
        in.region.x1_hi = in.region.x2_hi = Rational(100);
    }

    try {
        in.region.validate();
        in.env.validate();
        require_declared(in.field.f1, in.env, "x1'");
        require_declared(in.field.f2, in.env, "x2'");
    } catch (const EnvError& e) {
        fail(0, e.what());
    }
    return in;
}

InputFile load_input_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError(path, 0, "cannot open file");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_input_text(buf.str(), path);
}

std::string write_input_text(const InputFile& in) {
    std::ostringstream out;
    out << "[system]\n";
    out << "x1' = \"" << in.f1_text << "\"\n";
    out << "x2' = \"" << in.f2_text << "\"\n";

    if (!in.env.params.empty()) {
        out << "\n[params]\n";
        for (const auto& [name, info] : in.env.params)
            out << name << " = " << to_string(info.sign) << " [" << to_string(info.lo) << ", "
                << to_string(info.hi) << "]\n";
    }

    out << "\n[region]\n";
    out << "kind = " << to_string(in.region.kind) << "\n";
    out << "x1 = [" << to_string(in.region.x1_lo) << ", " << to_string(in.region.x1_hi) << "]\n";
    out << "x2 = [" << to_string(in.region.x2_lo) << ", " << to_string(in.region.x2_hi) << "]\n";

    const SearchConfig defaults;
    const SearchConfig& sc = in.search;
    std::ostringstream s;
    if (sc.prove.max_depth != defaults.prove.max_depth)
        s << "max_depth = " << sc.prove.max_depth << "\n";
    if (sc.prove.rho != defaults.prove.rho) s << "rho = " << double_str(sc.prove.rho) << "\n";
    if (sc.prove.delta_zero != defaults.prove.delta_zero)
        s << "delta_zero = " << double_str(sc.prove.delta_zero) << "\n";
    if (sc.prove.max_boxes != defaults.prove.max_boxes)
        s << "max_boxes = " << sc.prove.max_boxes << "\n";
    if (sc.prove.seed != defaults.prove.seed) s << "seed = " << sc.prove.seed << "\n";
    if (sc.workers != defaults.workers) s << "workers = " << sc.workers << "\n";
    if (sc.max_candidates != defaults.max_candidates)
        s << "max_candidates = " << sc.max_candidates << "\n";
    if (sc.exhaustive != defaults.exhaustive)
        s << "exhaustive = " << (sc.exhaustive ? "true" : "false") << "\n";
    if (sc.kappa_grid != defaults.kappa_grid) {
        s << "kappa_grid = [";
        for (size_t i = 0; i < sc.kappa_grid.size(); ++i)
            s << (i ? ", " : "") << to_string(sc.kappa_grid[i]);
        s << "]\n";
    }
    if (!sc.instances.empty()) {
        s << "families = [";
        for (size_t i = 0; i < sc.instances.size(); ++i) {
            const Ansatz& a = sc.instances[i];
            if (a.family == Family::GeneralProduct || a.family == Family::GeneralSum ||
                a.family == Family::GeneralZ)
                throw InputError("<write>", 0,
                                 "general families are not representable in input files");
            s << (i ? ", " : "") << ansatz_display(a);
        }
        s << "]\n";
    }
    if (!s.str().empty()) out << "\n[search]\n" << s.str();
    return out.str();
}

} // namespace dulac
