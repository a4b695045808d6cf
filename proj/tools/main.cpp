// Command-line front end: search for a Dulac function, verify a user-supplied
// one, sample expressions on a grid, and list or export the built-in systems.
// Reports go to stdout, diagnostics to stderr. Exit codes: 0 certificate,
// 1 nothing found / undecided, 2 definite counterexample evidence (search
// needs --exhaustive to claim this), 3 input or domain errors.

#include "dulac/corpus.hpp"
#include "dulac/report.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>

using namespace dulac;

namespace {

struct CommonOpts {
    int max_depth = 24;
    double rho = 1e-4;
    double delta_zero = 1e-3;
    long max_boxes = 200000;
    std::uint64_t seed = 0;
    int workers = 1;
    long max_candidates = 0;
    bool exhaustive = false;
    std::string kappa;
    std::string json_path;

    CLI::Option *o_max_depth, *o_rho, *o_delta_zero, *o_max_boxes, *o_seed, *o_workers,
        *o_max_candidates, *o_kappa;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->set_help_flag("--help", "print help and exit");
    o.o_max_depth = cmd->add_option("--max-depth", o.max_depth, "bisection depth cap");
    o.o_rho = cmd->add_option("--rho", o.rho, "undecided volume allowance, fraction of the region");
    o.o_delta_zero =
        cmd->add_option("--delta-zero", o.delta_zero, "max side width of an accepted thin box");
    o.o_max_boxes = cmd->add_option("--max-boxes", o.max_boxes, "box budget per sign proof");
    o.o_seed = cmd->add_option("--seed", o.seed, "seed for sample schedules and zero tests");
    o.o_workers = cmd->add_option("--workers", o.workers, "candidate batch width; never changes results");
    o.o_max_candidates =
        cmd->add_option("--max-candidates", o.max_candidates, "candidate budget, 0 = unlimited");
    o.o_kappa = cmd->add_option("--kappa-grid", o.kappa,
                                "comma list of nonzero rational kappa magnitudes");
    cmd->add_flag("--exhaustive", o.exhaustive, "keep enumerating after a win; full transcript");
    cmd->add_option("--json", o.json_path, "write the machine block to this path");
}

std::vector<Rational> parse_kappa_list(const std::string& text) {
    std::vector<Rational> out;
    std::size_t pos = 0;
    for (;;) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ') tok.pop_back();
        auto r = parse_rational(tok);
        if (!r || r->is_zero())
            throw std::runtime_error("--kappa-grid: bad entry '" + tok +
                                     "', need nonzero rationals");
        out.push_back(*r);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void apply_common(const CommonOpts& o, InputFile& in) {
    if (*o.o_max_depth) in.search.prove.max_depth = o.max_depth;
    if (*o.o_rho) in.search.prove.rho = o.rho;
    if (*o.o_delta_zero) in.search.prove.delta_zero = o.delta_zero;
    if (*o.o_max_boxes) in.search.prove.max_boxes = o.max_boxes;
    if (*o.o_seed) in.search.prove.seed = o.seed;
    if (*o.o_workers) in.search.workers = o.workers;
    if (*o.o_max_candidates) in.search.max_candidates = o.max_candidates;
    if (*o.o_kappa) in.search.kappa_grid = parse_kappa_list(o.kappa);
    if (o.exhaustive) in.search.exhaustive = true;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write failed on '" + path + "'");
}

Expr parse_user_expr(const std::string& text, const ParamEnv& env, const char* flag) {
    Expr e;
    try {
        e = parse_expr(text);
    } catch (const ParseError& ex) {
        throw std::runtime_error(std::string(flag) + ": " + ex.what());
    }
    require_declared(e, env, flag);
    return e;
}

int run_search(const std::string& path, const CommonOpts& o) {
    InputFile in = load_input_file(path);
    apply_common(o, in);
    SearchResult res = search_dulac(in.field, in.region, in.env, in.search);
    std::string rep = render_search_report(in, res);
    std::fputs(rep.c_str(), stdout);
    if (!o.json_path.empty()) write_file(o.json_path, machine_block_search(in, res));
    if (res.certificate) return 0;
    if (res.any_disproved && in.search.exhaustive) return 2;
    return 1;
}

int run_verify(const std::string& path, const std::string& h_text, const std::string& c_text,
               const CommonOpts& o) {
    InputFile in = load_input_file(path);
    apply_common(o, in);

    DulacCandidate cand;
    cand.origin = "user";
    cand.h = parse_user_expr(h_text, in.env, "--h");

    SignProof pole = prove_no_poles(cand.h, in.region, in.env, in.search.prove);
    if (pole.status != ProofStatus::Proved) {
        std::string at;
        if (pole.counterexample)
            at = " at x1 = " + to_string(pole.counterexample->x1) +
                 ", x2 = " + to_string(pole.counterexample->x2);
        std::fprintf(stderr, "error: h is not C1 on the region: %s%s\n",
                     pole.unknown_reason.c_str(), at.c_str());
        return 3;
    }

    Expr k = div_hF(in.field, cand.h);
    cand.c = c_text.empty() ? normalize(div(k, cand.h)) : parse_user_expr(c_text, in.env, "--c");

    CertifyOutcome out = certify_dulac(in.field, cand, in.region, in.env, in.search.prove);
    std::string rep = render_verify_report(in, cand, out);
    std::fputs(rep.c_str(), stdout);
    if (!o.json_path.empty()) write_file(o.json_path, machine_block_verify(in, cand, out));

    std::string word = outcome_word(out);
    if (word == "certified") return 0;
    if (word == "disproved" || word == "residual-nonzero") return 2;
    if (word == "pole") return 3;
    return 1;
}

std::string double_text(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

Rational grid_point(const Rational& lo, const Rational& hi, int i, int n) {
    if (n == 1) return (lo + hi) / 2;
    return lo + (hi - lo) * Rational(i) / Rational(n - 1);
}

void emit_csv(const Expr& e, const InputFile& in, int n) {
    const auto params = in.env.midpoint_sample();
    std::string out = "x1,x2,value\n";
    for (int i = 0; i < n; ++i) {
        const Rational x1 = grid_point(in.region.x1_lo, in.region.x1_hi, i, n);
        for (int j = 0; j < n; ++j) {
            const Rational x2 = grid_point(in.region.x2_lo, in.region.x2_hi, j, n);
            out += double_text(to_double(x1)) + ',' + double_text(to_double(x2)) + ',';
            try {
                PointEval v = eval_point(e, x1, x2, params);
                out += v.exact ? double_text(to_double(*v.exact))
                               : double_text(v.enclosure.mid());
            } catch (const DomainError&) {
                out += "nan";
            }
            out += '\n';
        }
    }
    std::fputs(out.c_str(), stdout);
}

int run_sample(const std::string& path, const std::string& what, int grid,
               const std::string& h_text, const CommonOpts& o) {
    InputFile in = load_input_file(path);
    apply_common(o, in);

    Expr target;
    if (what == "divF") {
        target = divergence(in.field);
    } else {
        Expr h;
        if (!h_text.empty()) {
            h = parse_user_expr(h_text, in.env, "--h");
        } else {
            SearchResult res = search_dulac(in.field, in.region, in.env, in.search);
            if (!res.certificate) {
                std::fprintf(stderr, "error: search found no certificate, so '%s' is unavailable; pass --h\n",
                             what.c_str());
                return 1;
            }
            h = res.certificate->cand.h;
        }
        target = what == "h" ? h : div_hF(in.field, h);
    }
    emit_csv(target, in, grid);
    return 0;
}

int run_corpus(const std::string& name, const std::string& out_path) {
    if (name.empty()) {
        std::string out;
        for (const auto& e : corpus()) {
            out += e.name;
            out.append(e.name.size() < 22 ? 22 - e.name.size() : 1, ' ');
            out += e.note + '\n';
        }
        std::fputs(out.c_str(), stdout);
        return 0;
    }
    const CorpusEntry* e = corpus_find(name);
    if (!e) {
        std::fprintf(stderr, "error: unknown corpus entry '%s'\n", name.c_str());
        return 3;
    }
    std::string text = write_input_text(corpus_input(*e));
    if (out_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_file(out_path, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dulac function construction and certification for planar systems"};
    // --h is an option on verify and sample, so help is long-form only
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    CommonOpts so, vo, po;
    std::string s_file, v_file, p_file, v_h, v_c, p_h, p_expr, c_name, c_out;
    int p_grid = 10;

    CLI::App* s = app.add_subcommand("search", "search the ansatz families for a certified Dulac function");
    s->add_option("file", s_file, "system input file")->required();
    add_common(s, so);

    CLI::App* v = app.add_subcommand("verify", "certify a user-supplied Dulac function");
    v->add_option("file", v_file, "system input file")->required();
    v->add_option("--h", v_h, "Dulac function to check")->required();
    v->add_option("--c", v_c, "auxiliary function; omitted: recovered as div(hF)/h");
    add_common(v, vo);

    CLI::App* p = app.add_subcommand("sample", "evaluate an expression on a grid, CSV on stdout");
    p->add_option("file", p_file, "system input file")->required();
    p->add_option("--expr", p_expr, "which expression: k, divF, or h")
        ->required()
        ->check(CLI::IsMember({"k", "divF", "h"}));
    p->add_option("--grid", p_grid, "points per axis")->check(CLI::PositiveNumber);
    p->add_option("--h", p_h, "use this h for k and h instead of searching");
    add_common(p, po);

    CLI::App* c = app.add_subcommand("corpus", "list built-in systems, or export one by name");
    c->set_help_flag("--help", "print help and exit");
    c->add_option("name", c_name, "entry to export as an input file");
    c->add_option("-o,--output", c_out, "write the export here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (s->parsed()) return run_search(s_file, so);
        if (v->parsed()) return run_verify(v_file, v_h, v_c, vo);
        if (p->parsed()) return run_sample(p_file, p_expr, p_grid, p_h, po);
        return run_corpus(c_name, c_out);
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 3;
    }
}
