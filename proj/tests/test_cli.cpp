#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dulac/expr.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "dulac_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int n = 0;
    fs::path out = work_dir() / ("out" + std::to_string(n) + ".txt");
    fs::path err = work_dir() / ("err" + std::to_string(n) + ".txt");
    ++n;
    std::string cmd = std::string(DULAC_CLI_PATH) + " " + args + " > " + out.string() +
                      " 2> " + err.string();
    int rc = std::system(cmd.c_str());
    RunResult r;
    if (WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string export_entry(const std::string& name) {
    fs::path p = work_dir() / (name + ".toml");
    if (!fs::exists(p)) {
        RunResult r = run_cli("corpus " + name + " -o " + p.string());
        REQUIRE(r.code == 0);
    }
    return p.string();
}

std::string write_input(const std::string& name, const std::string& text) {
    fs::path p = work_dir() / name;
    std::ofstream f(p, std::ios::binary);
    f << text;
    return p.string();
}

// the one line of the report that starts with the given key
std::string report_line(const std::string& report, const std::string& key) {
    std::istringstream ss(report);
    std::string line;
    while (std::getline(ss, line))
        if (line.rfind(key, 0) == 0) return line;
    return "";
}

const char* center_system =
    "[system]\n"
    "x1' = \"x2\"\n"
    "x2' = \"-x1\"\n"
    "[region]\n"
    "x1 = [-1, 1]\n"
    "x2 = [-1, 1]\n";

} // namespace

TEST_CASE("corpus lists entries and exports input files") {
    RunResult list = run_cli("corpus");
    CHECK(list.code == 0);
    CHECK(list.out.find("sis") != std::string::npos);
    CHECK(list.out.find("vanderpol") != std::string::npos);

    RunResult exp = run_cli("corpus sis");
    CHECK(exp.code == 0);
    CHECK(exp.out.find("[system]") != std::string::npos);
    CHECK(exp.out.find("x1' = \"") != std::string::npos);

    RunResult missing = run_cli("corpus no-such-entry");
    CHECK(missing.code == 3);
    CHECK(missing.err.find("unknown corpus entry") != std::string::npos);
}

TEST_CASE("search certifies the epidemic model and echoes a reparseable system") {
    std::string file = export_entry("sis");
    fs::path json = work_dir() / "sis.json";
    RunResult r = run_cli("search " + file + " --json " + json.string());
    REQUIRE(r.code == 0);
    CHECK(r.out.find("status: certified") != std::string::npos);
    CHECK(r.out.find("h = 1/x2") != std::string::npos);
    CHECK(r.out.find("conclusion: no periodic orbits") != std::string::npos);

    // echoed equations re-parse to the same field
    std::string l1 = report_line(r.out, "x1' = ");
    std::string l2 = report_line(r.out, "x2' = ");
    REQUIRE(!l1.empty());
    REQUIRE(!l2.empty());
    dulac::Expr f1 = dulac::parse_expr(l1.substr(6));
    dulac::Expr f2 = dulac::parse_expr(l2.substr(6));
    CHECK(dulac::print_expr(f1) == "lambda - mu*x1 - alpha*x2");
    CHECK(dulac::print_expr(f2) == "beta*(x1 - x2)*x2 - (alpha + mu + delta)*x2");

    // machine block: exact field list, in order
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(slurp(json));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"claim", "status", "counterexample", "boxes_total",
                                           "undecided_volume_fraction", "max_depth", "h", "c",
                                           "k", "region", "params"});
    CHECK(j["status"] == "certified");
    CHECK(j["h"] == "1/x2");
    CHECK(j["counterexample"].is_null());
    CHECK(j["region"]["kind"] == "positive-quadrant-box");
    CHECK(j["params"]["mu"]["sign"] == "positive");
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
    std::string file = export_entry("sis");
    fs::path j1 = work_dir() / "det1.json";
    fs::path j2 = work_dir() / "det2.json";
    RunResult a = run_cli("search " + file + " --workers 1 --json " + j1.string());
    RunResult b = run_cli("search " + file + " --workers 4 --json " + j2.string());
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
    CHECK(slurp(j1) == slurp(j2));
}

TEST_CASE("search exit codes distinguish not-found from disproved transcripts") {
    std::string file = export_entry("vanderpol");
    RunResult plain = run_cli("search " + file + " --max-candidates 200");
    CHECK(plain.code == 1);
    CHECK(plain.out.find("status: not-found") != std::string::npos);

    RunResult ex = run_cli("search " + file + " --max-candidates 200 --exhaustive");
    CHECK(ex.code == 2);

    std::string bad = write_input("bad.toml", "[system]\nx1 = \"x2\"\n");
    RunResult mal = run_cli("search " + bad);
    CHECK(mal.code == 3);
    CHECK(mal.err.find("bad.toml:2:") != std::string::npos);
}

TEST_CASE("verify checks a user h and recovers c when omitted") {
    std::string file = export_entry("sis");

    RunResult ok = run_cli("verify " + file + " --h \"1/x2\"");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("status: certified") != std::string::npos);
    CHECK(ok.out.find("c = -beta*x2 - mu") != std::string::npos);

    RunResult with_c = run_cli("verify " + file + " --h \"1/x2\" --c \"-mu - beta*x2\"");
    CHECK(with_c.code == 0);

    RunResult wrong_c = run_cli("verify " + file + " --h \"1/x2\" --c \"-mu\"");
    CHECK(wrong_c.code == 2);
    CHECK(wrong_c.out.find("status: residual-nonzero") != std::string::npos);

    RunResult bad = run_cli("verify " + file + " --h \"1\"");
    CHECK(bad.code == 2);
    CHECK(bad.out.find("status: disproved") != std::string::npos);
    CHECK(bad.out.find("counterexample: x1 = ") != std::string::npos);
}

TEST_CASE("verify rejects poles and degenerate divergences by exit code") {
    std::string file = write_input("center.toml", center_system);

    RunResult pole = run_cli("verify " + file + " --h \"1/x2\"");
    CHECK(pole.code == 3);
    CHECK(pole.err.find("not C1") != std::string::npos);

    RunResult zero = run_cli("verify " + file + " --h \"1\"");
    CHECK(zero.code == 1);
    CHECK(zero.out.find("status: unknown") != std::string::npos);
    CHECK(zero.out.find("identically zero") != std::string::npos);
}

TEST_CASE("sample emits deterministic csv grids") {
    std::string file = export_entry("sis");

    RunResult corners = run_cli("sample " + file + " --expr divF --grid 2");
    CHECK(corners.code == 0);
    CHECK(corners.out == "x1,x2,value\n"
                         "0.1,0.1,-4.1\n"
                         "0.1,10,-23.9\n"
                         "10,0.1,5.8\n"
                         "10,10,-14\n");

    RunResult center = run_cli("sample " + file + " --expr divF --grid 1");
    CHECK(center.code == 0);
    CHECK(center.out.rfind("x1,x2,value\n5.05,5.05,", 0) == 0);

    // k with an explicit h: negative at every grid point
    RunResult k = run_cli("sample " + file + " --expr k --grid 3 --h \"1/x2\"");
    CHECK(k.code == 0);
    std::istringstream ss(k.out);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "x1,x2,value");
    int rows = 0;
    while (std::getline(ss, line)) {
        ++rows;
        CAPTURE(line);
        CHECK(std::stod(line.substr(line.rfind(',') + 1)) < 0.0);
    }
    CHECK(rows == 9);

    // k without --h runs the search inline
    RunResult inline_k = run_cli("sample " + file + " --expr k --grid 1");
    CHECK(inline_k.code == 0);
    CHECK(inline_k.out.rfind("x1,x2,value\n5.05,5.05,-", 0) == 0);
}

TEST_CASE("sample marks poles as nan and reports a missing h") {
    std::string file = write_input("center2.toml", center_system);

    RunResult pole = run_cli("sample " + file + " --expr h --grid 1 --h \"1/x2\"");
    CHECK(pole.code == 0);
    CHECK(pole.out == "x1,x2,value\n0,0,nan\n");

    std::string vdp = export_entry("vanderpol");
    RunResult missing = run_cli("sample " + vdp + " --expr k --grid 1 --max-candidates 8");
    CHECK(missing.code == 1);
    CHECK(missing.err.find("pass --h") != std::string::npos);
}
