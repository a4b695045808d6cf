#include "dulac/report.hpp"

#include <json.hpp>

#include <cstdio>

namespace dulac {

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void append_head(std::string& s, const InputFile& in, const char* command) {
    s += "command: ";
    s += command;
    s += '\n';
    s += "x1' = " + print_expr(in.field.f1) + '\n';
    s += "x2' = " + print_expr(in.field.f2) + '\n';
    s += "region: " + to_string(in.region.kind) + ", x1 in [" + to_string(in.region.x1_lo) +
         ", " + to_string(in.region.x1_hi) + "], x2 in [" + to_string(in.region.x2_lo) + ", " +
         to_string(in.region.x2_hi) + "]\n";
    for (const auto& [name, info] : in.env.params)
        s += "param " + name + ": " + to_string(info.sign) + " [" + to_string(info.lo) + ", " +
             to_string(info.hi) + "]\n";
    const ProveConfig& pc = in.search.prove;
    s += "config: max_depth " + std::to_string(pc.max_depth) + ", rho " + fmt_g(pc.rho) +
         ", delta_zero " + fmt_g(pc.delta_zero) + ", max_boxes " + std::to_string(pc.max_boxes) +
         ", seed " + std::to_string(pc.seed);
    if (in.search.exhaustive) s += ", exhaustive";
    s += '\n';
}

void append_proof(std::string& s, const std::string& label, const SignProof& p) {
    s += label + " sign: " + to_string(p.claim) + ", " + to_string(p.status) + ", boxes " +
         std::to_string(p.boxes_total) + ", depth " + std::to_string(p.max_depth_reached);
    if (p.strict) s += ", strict";
    if (!p.undecided_volume_fraction.is_zero())
        s += ", undecided volume fraction " + to_string(p.undecided_volume_fraction);
    s += '\n';
    for (const auto& b : p.thin_boxes)
        s += "  thin box [" + to_string(b.x1_lo) + ", " + to_string(b.x1_hi) + "] x [" +
             to_string(b.x2_lo) + ", " + to_string(b.x2_hi) + "]\n";
    if (p.thin_box_count > static_cast<long>(p.thin_boxes.size()))
        s += "  (and " +
             std::to_string(p.thin_box_count - static_cast<long>(p.thin_boxes.size())) +
             " more thin boxes)\n";
}

void append_counterexample(std::string& s, const Counterexample& cx) {
    s += "counterexample: x1 = " + to_string(cx.x1) + ", x2 = " + to_string(cx.x2) +
         ", value = " + cx.value + '\n';
    if (cx.params.empty()) return;
    s += "counterexample params:";
    bool first = true;
    for (const auto& [name, v] : cx.params) {
        s += first ? " " : ", ";
        s += name + " = " + to_string(v);
        first = false;
    }
    s += '\n';
}

void append_certificate(std::string& s, const Certificate& cert) {
    s += "h = " + print_expr(cert.cand.h) + '\n';
    s += "c = " + print_expr(cert.cand.c) + '\n';
    s += "k = " + print_expr(cert.k) + '\n';
    s += "residual: " + to_string(cert.residual) + '\n';
    append_proof(s, "h", cert.h_proof);
    append_proof(s, "c", cert.c_proof);
    append_proof(s, "k", cert.k_proof);
    s += "conclusion: " + cert.conclusion + '\n';
}

ojson region_json(const Region& r) {
    ojson j;
    j["kind"] = to_string(r.kind);
    j["x1"] = {to_string(r.x1_lo), to_string(r.x1_hi)};
    j["x2"] = {to_string(r.x2_lo), to_string(r.x2_hi)};
    return j;
}

ojson params_json(const ParamEnv& env) {
    ojson j = ojson::object();
    for (const auto& [name, info] : env.params) {
        ojson p;
        p["sign"] = to_string(info.sign);
        p["lo"] = to_string(info.lo);
        p["hi"] = to_string(info.hi);
        j[name] = std::move(p);
    }
    return j;
}

ojson counterexample_json(const Counterexample& cx) {
    ojson j;
    j["x1"] = to_string(cx.x1);
    j["x2"] = to_string(cx.x2);
    ojson ps = ojson::object();
    for (const auto& [name, v] : cx.params) ps[name] = to_string(v);
    j["params"] = std::move(ps);
    j["value"] = cx.value;
    return j;
}

// the fixed field list; fill what the outcome provides, leave the rest null
ojson base_block(const InputFile& in) {
    ojson j;
    j["claim"] = nullptr;
    j["status"] = nullptr;
    j["counterexample"] = nullptr;
    j["boxes_total"] = nullptr;
    j["undecided_volume_fraction"] = nullptr;
    j["max_depth"] = nullptr;
    j["h"] = nullptr;
    j["c"] = nullptr;
    j["k"] = nullptr;
    j["region"] = region_json(in.region);
    j["params"] = params_json(in.env);
    return j;
}

void fill_certificate(ojson& j, const Certificate& cert) {
    j["claim"] = to_string(cert.k_proof.claim);
    j["status"] = "certified";
    j["boxes_total"] = cert.k_proof.boxes_total;
    j["undecided_volume_fraction"] = to_string(cert.k_proof.undecided_volume_fraction);
    j["max_depth"] = cert.k_proof.max_depth_reached;
    j["h"] = print_expr(cert.cand.h);
    j["c"] = print_expr(cert.cand.c);
    j["k"] = print_expr(cert.k);
}

} // namespace

std::string outcome_word(const CertifyOutcome& out) {
    if (out.certificate) return "certified";
    const Refusal& r = *out.refusal;
    if (r.kind == Refusal::Kind::ResidualNonzero) return "residual-nonzero";
    if (r.proof.den_disproved) return "pole";
    if (r.proof.status == ProofStatus::Disproved) return "disproved";
    return "unknown";
}

std::string render_search_report(const InputFile& in, const SearchResult& res) {
    std::string s;
    append_head(s, in, "search");
    s += "candidates tried: " + std::to_string(res.candidates_tried) + '\n';
    if (res.certificate) {
        const Certificate& cert = *res.certificate;
        s += "status: certified\n";
        for (const auto& e : res.transcript) {
            if (e.outcome != "certified") continue;
            s += "winner rank: " + std::to_string(e.rank) + '\n';
            s += "stage: " + e.stage + '\n';
            break;
        }
        s += "family: " + ansatz_display(cert.cand.ansatz) + '\n';
        s += "origin: " + cert.cand.origin + '\n';
        if (cert.cand.has_gamma) s += "gamma: " + cert.cand.gamma.str() + '\n';
        append_certificate(s, cert);
        return s;
    }
    s += "status: not-found\n";
    long screened = 0, unsupported = 0, refused = 0;
    for (const auto& e : res.transcript) {
        if (e.outcome == "screened") ++screened;
        if (e.outcome == "unsupported") ++unsupported;
        if (e.outcome == "refused") ++refused;
    }
    s += "screened: " + std::to_string(screened) + ", unsupported: " +
         std::to_string(unsupported) + ", refused: " + std::to_string(refused) + '\n';
    long shown = 0;
    for (const auto& e : res.transcript) {
        if (e.outcome != "refused") continue;
        if (shown == 20) {
            s += "  (and " + std::to_string(refused - shown) + " more refused)\n";
            break;
        }
        s += "  rank " + std::to_string(e.rank) + ": " + e.family + ", stage " + e.stage +
             ", gamma " + e.gamma + ", " + e.detail + '\n';
        ++shown;
    }
    return s;
}

std::string render_verify_report(const InputFile& in, const DulacCandidate& cand,
                                 const CertifyOutcome& out) {
    std::string s;
    append_head(s, in, "verify");
    s += "status: " + outcome_word(out) + '\n';
    if (out.certificate) {
        append_certificate(s, *out.certificate);
        return s;
    }
    const Refusal& r = *out.refusal;
    s += "stage: " + r.stage + '\n';
    s += "message: " + r.message + '\n';
    s += "h = " + print_expr(cand.h) + '\n';
    s += "c = " + print_expr(cand.c) + '\n';
    s += "k = " + print_expr(div_hF(in.field, cand.h)) + '\n';
    if (r.kind == Refusal::Kind::SignUnproved) {
        append_proof(s, r.stage, r.proof);
        if (!r.proof.unknown_reason.empty()) s += "reason: " + r.proof.unknown_reason + '\n';
        if (r.proof.counterexample) append_counterexample(s, *r.proof.counterexample);
    }
    return s;
}

std::string machine_block_search(const InputFile& in, const SearchResult& res) {
    ojson j = base_block(in);
    if (res.certificate)
        fill_certificate(j, *res.certificate);
    else
        j["status"] = "not-found";
    return j.dump(2) + "\n";
}

std::string machine_block_verify(const InputFile& in, const DulacCandidate& cand,
                                 const CertifyOutcome& out) {
    ojson j = base_block(in);
    if (out.certificate) {
        fill_certificate(j, *out.certificate);
        return j.dump(2) + "\n";
    }
    const Refusal& r = *out.refusal;
    j["status"] = outcome_word(out);
    j["h"] = print_expr(cand.h);
    j["c"] = print_expr(cand.c);
    j["k"] = print_expr(div_hF(in.field, cand.h));
    if (r.kind == Refusal::Kind::SignUnproved) {
        j["claim"] = to_string(r.proof.claim);
        j["boxes_total"] = r.proof.boxes_total;
        j["undecided_volume_fraction"] = to_string(r.proof.undecided_volume_fraction);
        j["max_depth"] = r.proof.max_depth_reached;
        if (r.proof.counterexample) j["counterexample"] = counterexample_json(*r.proof.counterexample);
    }
    return j.dump(2) + "\n";
}

} // namespace dulac
