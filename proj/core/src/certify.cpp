#include "dulac/certify.hpp"

#include "dulac/rng.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <vector>

namespace dulac {

std::string to_string(SignClaim c) {
    switch (c) {
    case SignClaim::NonnegAe: return "nonneg-ae";
    case SignClaim::NonposAe: return "nonpos-ae";
    case SignClaim::Positive: return "positive";
    case SignClaim::Negative: return "negative";
    }
    return "";
}

std::string to_string(ProofStatus s) {
    switch (s) {
    case ProofStatus::Proved: return "Proved";
    case ProofStatus::Disproved: return "Disproved";
    case ProofStatus::Unknown: return "Unknown";
    }
    return "";
}

std::string to_string(ResidualStatus s) {
    switch (s) {
    case ResidualStatus::ExactZero: return "exact-zero";
    case ResidualStatus::ProbabilisticZero: return "probabilistic-zero";
    case ResidualStatus::Nonzero: return "nonzero";
    }
    return "";
}

namespace {

std::string double_str(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string value_string(const PointEval& v) {
    if (v.exact) return to_string(*v.exact);
    return "in [" + double_str(v.enclosure.lo) + ", " + double_str(v.enclosure.hi) + "]";
}

bool violates(SignClaim claim, int s) {
    switch (claim) {
    case SignClaim::NonnegAe: return s < 0;
    case SignClaim::NonposAe: return s > 0;
    case SignClaim::Positive: return s <= 0;
    case SignClaim::Negative: return s >= 0;
    }
    return false;
}

SignClaim flipped(SignClaim c) {
    switch (c) {
    case SignClaim::NonnegAe: return SignClaim::NonposAe;
    case SignClaim::NonposAe: return SignClaim::NonnegAe;
    case SignClaim::Positive: return SignClaim::Negative;
    case SignClaim::Negative: return SignClaim::Positive;
    }
    return c;
}

bool is_ae(SignClaim c) { return c == SignClaim::NonnegAe || c == SignClaim::NonposAe; }

Counterexample make_cex(const Expr& e, const SamplePoint& sp) {
    Counterexample c;
    c.x1 = sp.x1;
    c.x2 = sp.x2;
    c.params = sp.params;
    try {
        c.value = value_string(eval_point(e, sp.x1, sp.x2, sp.params));
    } catch (const DomainError&) {
        c.value = "undefined";
    }
    return c;
}

// 1 = box certified, -1 = box wholly violating, 0 = undecided
int classify(SignClaim claim, const Interval& v, bool& touched) {
    switch (claim) {
    case SignClaim::NonnegAe:
        if (v.lo >= 0.0) {
            touched = touched || v.lo <= 0.0;
            return 1;
        }
        return v.hi < 0.0 ? -1 : 0;
    case SignClaim::NonposAe:
        if (v.hi <= 0.0) {
            touched = touched || v.hi >= 0.0;
            return 1;
        }
        return v.lo > 0.0 ? -1 : 0;
    case SignClaim::Positive:
        if (v.lo > 0.0) return 1;
        return v.hi <= 0.0 ? -1 : 0;
    case SignClaim::Negative:
        if (v.hi < 0.0) return 1;
        return v.lo >= 0.0 ? -1 : 0;
    }
    return 0;
}

// sign of a one-term polynomial over the region, when every factor is sign
// definite there: exp atoms are positive, variables and parameters read their
// intervals; nullopt when any factor can reach zero
std::optional<int> monomial_sign(const RationalForm& rf, const Region& region,
                                 const ParamEnv& env) {
    if (rf.num.terms().size() != 1) return std::nullopt;
    const auto& [mono, coeff] = *rf.num.terms().begin();
    int s = coeff > 0 ? 1 : -1;
    for (const auto& [name, exp] : mono.factors) {
        int base_sign;
        int cls = var_class(name);
        if (cls == 3) {
            auto it = rf.atoms.find(name);
            if (it == rf.atoms.end() || it->second.kind != Kind::Exp) return std::nullopt;
            base_sign = 1;
        } else {
            Rational lo, hi;
            if (cls == 0) {
                lo = region.x1_lo;
                hi = region.x1_hi;
            } else if (cls == 1) {
                lo = region.x2_lo;
                hi = region.x2_hi;
            } else {
                auto it = env.params.find(name);
                if (it == env.params.end()) return std::nullopt;
                lo = it->second.lo;
                hi = it->second.hi;
            }
            if (lo > 0) base_sign = 1;
            else if (hi < 0) base_sign = -1;
            else return std::nullopt;
        }
        if (exp % 2 != 0 && base_sign < 0) s = -s;
    }
    return s;
}

struct BnbBox {
    Rational x1l, x1h, x2l, x2h;
    int depth = 0;
};

struct BnbResult {
    ProofStatus status = ProofStatus::Unknown;
    std::optional<Counterexample> cex;
    std::string reason;
    bool strict = true;
    Rational thin_volume{0};
    std::vector<ThinBox> thin_boxes;
    long thin_count = 0;
};

// one expression form to test per box; the expanded numerator and the original
// tree bound the same sign differently, so the prover checks both
struct EvalSide {
    const Expr* e;
    SignClaim claim;
};

// DFS over rational boxes; a box settles when any side's enclosure decides it,
// counterexamples are confirmed pointwise against the original expression
void run_bnb(const std::vector<EvalSide>& sides, const Expr& orig_e, SignClaim orig_claim,
             const Region& region, const ParamEnv& env, const ProveConfig& config,
             bool allow_thin, SignProof& proof, BnbResult& out) {
    const auto pbox = env.interval_map();
    const auto pmid = env.midpoint_sample();
    const Rational delta(config.delta_zero);
    const Rational vol_total = (region.x1_hi - region.x1_lo) * (region.x2_hi - region.x2_lo);

    std::vector<BnbBox> stack{{region.x1_lo, region.x1_hi, region.x2_lo, region.x2_hi, 0}};
    bool touched = false;
    bool fat = false;
    std::string fat_reason;
    while (!stack.empty()) {
        BnbBox b = stack.back();
        stack.pop_back();
        if (++proof.boxes_total > config.max_boxes) {
            out.status = ProofStatus::Unknown;
            out.reason = "box budget exhausted";
            return;
        }
        proof.max_depth_reached = std::max(proof.max_depth_reached, b.depth);

        const Interval bx1 = from_rational(b.x1l, b.x1h);
        const Interval bx2 = from_rational(b.x2l, b.x2h);
        bool any_eval_ok = false;
        int cls = 0;
        bool box_touch = true;
        for (const EvalSide& side : sides) {
            try {
                auto r = eval_interval(*side.e, bx1, bx2, pbox);
                if (!r.ok()) continue;
                any_eval_ok = true;
                bool t = false;
                int c = classify(side.claim, r.value, t);
                if (c == -1) {
                    cls = -1;
                    break;
                }
                if (c == 1) {
                    cls = 1;
                    box_touch = box_touch && t;
                    if (!t) break;
                }
            } catch (const DomainError&) {
            }
        }
        const bool evalfail = !any_eval_ok;

        if (cls == 1) {
            touched = touched || box_touch;
            continue;
        }
        if (cls == -1) {
            // the whole box violates; confirm a concrete point
            const Rational cx1 = (b.x1l + b.x1h) / 2, cx2 = (b.x2l + b.x2h) / 2;
            const std::pair<Rational, Rational> cand[] = {
                {cx1, cx2}, {b.x1l, b.x2l}, {b.x1l, b.x2h}, {b.x1h, b.x2l}, {b.x1h, b.x2h}};
            for (const auto& [px, py] : cand) {
                SamplePoint sp{px, py, pmid};
                auto s = sign_at(orig_e, sp);
                if (s && violates(orig_claim, *s)) {
                    out.status = ProofStatus::Disproved;
                    out.cex = make_cex(orig_e, sp);
                    return;
                }
            }
            fat = true;
            fat_reason = "an enclosure violates the claim but no witness point confirmed";
            continue;
        }

        const Rational w1 = b.x1h - b.x1l, w2 = b.x2h - b.x2l;
        if (b.depth >= config.max_depth) {
            if (allow_thin && !evalfail && w1 <= delta && w2 <= delta) {
                out.thin_volume += w1 * w2;
                if (out.thin_boxes.size() < 64) out.thin_boxes.push_back({b.x1l, b.x1h, b.x2l, b.x2h});
                ++out.thin_count;
                out.strict = false;
                continue;
            }
            fat = true;
            fat_reason = evalfail ? "enclosure evaluation failed at the depth cap"
                                  : "undecided boxes remain at the depth cap";
            continue;
        }
        if (w1 >= w2) {
            const Rational m = (b.x1l + b.x1h) / 2;
            stack.push_back({m, b.x1h, b.x2l, b.x2h, b.depth + 1});
            stack.push_back({b.x1l, m, b.x2l, b.x2h, b.depth + 1});
        } else {
            const Rational m = (b.x2l + b.x2h) / 2;
            stack.push_back({b.x1l, b.x1h, m, b.x2h, b.depth + 1});
            stack.push_back({b.x1l, b.x1h, b.x2l, m, b.depth + 1});
        }
    }
    if (fat) {
        out.status = ProofStatus::Unknown;
        out.reason = fat_reason;
        return;
    }
    if (out.thin_volume > vol_total * Rational(config.rho)) {
        out.status = ProofStatus::Unknown;
        out.reason = "zero-set allowance exceeded";
        return;
    }
    out.strict = out.strict && !touched && out.thin_count == 0;
    out.status = ProofStatus::Proved;
}

} // namespace

std::vector<SamplePoint> sample_schedule(const Region& region, const ParamEnv& env,
                                         std::uint64_t seed) {
    std::vector<SamplePoint> out;
    const Rational mx1 = (region.x1_lo + region.x1_hi) / 2;
    const Rational mx2 = (region.x2_lo + region.x2_hi) / 2;
    const std::pair<Rational, Rational> pts[] = {
        {mx1, mx2},
        {region.x1_lo, region.x2_lo},
        {region.x1_lo, region.x2_hi},
        {region.x1_hi, region.x2_lo},
        {region.x1_hi, region.x2_hi},
    };

    std::vector<std::string> names;
    for (const auto& [n, info] : env.params) names.push_back(n);
    const std::size_t np = names.size();

    std::vector<std::map<std::string, Rational>> combos;
    auto add_combo = [&](std::map<std::string, Rational> m) {
        if (std::find(combos.begin(), combos.end(), m) == combos.end())
            combos.push_back(std::move(m));
    };
    add_combo(env.midpoint_sample());
    auto corner = [&](auto pick) {
        std::map<std::string, Rational> m;
        for (std::size_t j = 0; j < np; ++j) {
            const ParamInfo& info = env.params.at(names[j]);
            m[names[j]] = pick(j) ? info.hi : info.lo;
        }
        return m;
    };
    if (np > 0 && np <= 5) {
        for (std::uint64_t mask = 0; mask < (1ull << np); ++mask)
            add_combo(corner([&](std::size_t j) { return (mask >> j) & 1u; }));
    } else if (np > 5) {
        add_combo(corner([](std::size_t) { return false; }));
        add_combo(corner([](std::size_t) { return true; }));
        for (std::size_t f = 0; f < np; ++f) {
            add_combo(corner([&](std::size_t j) { return j == f; }));
            add_combo(corner([&](std::size_t j) { return j != f; }));
        }
    }

    for (const auto& pm : combos)
        for (const auto& [a, b] : pts) out.push_back({a, b, pm});

    Rng rng(mix_seed(seed, 0x5a11));
    for (int i = 0; i < 32; ++i) {
        SamplePoint sp;
        sp.x1 = rng.rational_in(region.x1_lo, region.x1_hi);
        sp.x2 = rng.rational_in(region.x2_lo, region.x2_hi);
        for (const auto& [n, info] : env.params)
            sp.params[n] = info.lo == info.hi ? info.lo : rng.rational_in(info.lo, info.hi);
        out.push_back(std::move(sp));
    }
    return out;
}

std::optional<int> sign_at(const Expr& e, const SamplePoint& p) {
    try {
        PointEval v = eval_point(e, p.x1, p.x2, p.params);
        if (v.exact) {
            if (v.exact->is_zero()) return 0;
            return *v.exact > 0 ? 1 : -1;
        }
        if (v.enclosure.lo > 0.0) return 1;
        if (v.enclosure.hi < 0.0) return -1;
        if (v.enclosure.lo == 0.0 && v.enclosure.hi == 0.0) return 0;
        return std::nullopt;
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

SignProof prove_sign(const Expr& e, const Region& region, const ParamEnv& env,
                     SignClaim claim, const ProveConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    SignProof proof;
    proof.claim = claim;
    auto finish = [&]() {
        proof.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return proof;
    };

    ZeroTest zt = is_identically_zero(e, env, config.seed);
    if (zt.zero) {
        proof.unknown_reason = "identically zero";
        return finish();
    }

    const auto schedule = sample_schedule(region, env, config.seed);
    for (const auto& sp : schedule) {
        auto s = sign_at(e, sp);
        if (s && violates(claim, *s)) {
            proof.status = ProofStatus::Disproved;
            proof.counterexample = make_cex(e, sp);
            return finish();
        }
    }

    RationalForm rf;
    try {
        rf = to_rational_form(e);
    } catch (const DomainError& ex) {
        proof.unknown_reason = std::string("domain error: ") + ex.what();
        return finish();
    }

    int den_sign = 1;
    if (!rf.den.is_constant()) {
        RationalForm den_rf{rf.den, Poly(Rational(1)), rf.atoms};
        Expr den_e = to_expr(den_rf);
        auto mono = monomial_sign(den_rf, region, env);
        if (mono) {
            den_sign = *mono;
        } else {
            std::optional<int> ds;
            for (const auto& sp : schedule) {
                auto s = sign_at(den_e, sp);
                if (!s) continue;
                if (*s == 0) {
                    proof.den_disproved = true;
                    proof.unknown_reason = "denominator vanishes in the region";
                    return finish();
                }
                if (!ds) ds = *s;
            }
            if (!ds) {
                proof.unknown_reason = "denominator sign unresolved";
                return finish();
            }
            SignClaim den_claim = *ds > 0 ? SignClaim::Positive : SignClaim::Negative;
            BnbResult denres;
            run_bnb({{&den_e, den_claim}}, den_e, den_claim, region, env, config, false,
                    proof, denres);
            if (denres.status == ProofStatus::Disproved) {
                proof.den_disproved = true;
                proof.unknown_reason = "denominator vanishes or changes sign in the region";
                return finish();
            }
            if (denres.status != ProofStatus::Proved) {
                proof.unknown_reason = "denominator sign unresolved: " + denres.reason;
                return finish();
            }
            den_sign = *ds;
        }
    }

    const SignClaim eval_claim = den_sign > 0 ? claim : flipped(claim);
    RationalForm num_rf{rf.num, Poly(Rational(1)), rf.atoms};
    auto mono = monomial_sign(num_rf, region, env);
    if (mono) {
        bool ok = (*mono > 0 && (eval_claim == SignClaim::NonnegAe ||
                                 eval_claim == SignClaim::Positive)) ||
                  (*mono < 0 && (eval_claim == SignClaim::NonposAe ||
                                 eval_claim == SignClaim::Negative));
        if (ok) {
            proof.status = ProofStatus::Proved;
            proof.strict = true;
            return finish();
        }
        // a definite monomial of the wrong sign: every sample above already
        // passed, which cannot happen; fall through to the prover
    }

    Expr num_e = to_expr(num_rf);
    BnbResult res;
    run_bnb({{&num_e, eval_claim}, {&e, claim}}, e, claim, region, env, config,
            is_ae(claim), proof, res);
    proof.status = res.status;
    proof.counterexample = res.cex;
    proof.unknown_reason = res.reason;
    proof.strict = res.status == ProofStatus::Proved && res.strict;
    proof.thin_boxes = std::move(res.thin_boxes);
    proof.thin_box_count = res.thin_count;
    const Rational vol_total =
        (region.x1_hi - region.x1_lo) * (region.x2_hi - region.x2_lo);
    proof.undecided_volume_fraction = res.thin_volume / vol_total;
    return finish();
}

SignProof prove_no_poles(const Expr& e, const Region& region, const ParamEnv& env,
                         const ProveConfig& config) {
    SignProof proof;
    RationalForm rf;
    try {
        rf = to_rational_form(e);
    } catch (const DomainError& ex) {
        proof.den_disproved = true;
        proof.unknown_reason = std::string("domain error: ") + ex.what();
        return proof;
    }
    if (rf.den.is_constant()) {
        proof.status = ProofStatus::Proved;
        proof.strict = true;
        return proof;
    }
    Expr den_e = to_expr(RationalForm{rf.den, Poly(Rational(1)), rf.atoms});
    std::optional<int> ds;
    for (const auto& sp : sample_schedule(region, env, config.seed)) {
        auto s = sign_at(den_e, sp);
        if (!s) continue;
        if (*s == 0) {
            proof.status = ProofStatus::Disproved;
            proof.den_disproved = true;
            proof.counterexample = make_cex(den_e, sp);
            proof.unknown_reason = "denominator vanishes in the region";
            return proof;
        }
        if (!ds) ds = *s;
    }
    if (!ds) {
        proof.unknown_reason = "denominator sign unresolved";
        return proof;
    }
    proof = prove_sign(den_e, region, env,
                       *ds > 0 ? SignClaim::Positive : SignClaim::Negative, config);
    if (proof.status == ProofStatus::Disproved) {
        proof.den_disproved = true;
        proof.unknown_reason = "denominator vanishes or changes sign in the region";
    }
    return proof;
}

namespace {

std::string conclusion_text(const Region& region, const ParamEnv& env) {
    std::string s = "no periodic orbits in x1 in [" + to_string(region.x1_lo) + ", " +
                    to_string(region.x1_hi) + "], x2 in [" + to_string(region.x2_lo) + ", " +
                    to_string(region.x2_hi) + "]";
    if (!env.params.empty()) s += " for all declared parameter values";
    return s;
}

} // namespace

CertifyOutcome certify_dulac(const VectorField& F, const DulacCandidate& cand,
                             const Region& region, const ParamEnv& env,
                             const ProveConfig& config, std::optional<SignClaim> c_claim) {
    CertifyOutcome out;
    Expr k = div_hF(F, cand.h);

    ZeroTest kz = is_identically_zero(k, env, config.seed);
    if (kz.zero) {
        Refusal r;
        r.stage = "k";
        r.proof.claim = c_claim.value_or(SignClaim::NonnegAe);
        r.proof.unknown_reason = "div(hF) is identically zero";
        r.message = "div(hF) vanishes identically, so no fixed-sign condition can hold";
        out.refusal = std::move(r);
        return out;
    }

    Expr residual = pde_residual(F, cand.h, cand.c);
    ZeroTest rz = is_identically_zero(residual, env, config.seed);
    if (!rz.zero) {
        Refusal r;
        r.kind = Refusal::Kind::ResidualNonzero;
        r.stage = "residual";
        r.message = "div(hF) - h*c is not identically zero";
        out.refusal = std::move(r);
        return out;
    }
    const ResidualStatus rs =
        rz.probabilistic ? ResidualStatus::ProbabilisticZero : ResidualStatus::ExactZero;

    SignProof hp = prove_sign(cand.h, region, env, SignClaim::Positive, config);
    if (hp.status != ProofStatus::Proved) {
        Refusal r;
        r.stage = "h";
        r.proof = std::move(hp);
        r.message = "h positivity not established";
        out.refusal = std::move(r);
        return out;
    }

    SignClaim cc;
    if (c_claim) {
        cc = *c_claim;
    } else {
        std::optional<int> s;
        for (const auto& sp : sample_schedule(region, env, config.seed)) {
            auto v = sign_at(cand.c, sp);
            if (v && *v != 0) {
                s = v;
                break;
            }
        }
        cc = (s && *s < 0) ? SignClaim::NonposAe : SignClaim::NonnegAe;
    }
    SignProof cp = prove_sign(cand.c, region, env, cc, config);
    if (cp.status != ProofStatus::Proved) {
        Refusal r;
        r.stage = "c";
        r.proof = std::move(cp);
        r.message = "the sign of c could not be fixed on the region";
        out.refusal = std::move(r);
        return out;
    }

    const SignClaim kk = (cc == SignClaim::NonposAe || cc == SignClaim::Negative)
                             ? SignClaim::NonposAe
                             : SignClaim::NonnegAe;
    SignProof kp = prove_sign(k, region, env, kk, config);
    if (kp.status != ProofStatus::Proved) {
        Refusal r;
        r.stage = "k";
        r.proof = std::move(kp);
        r.message = "the sign of div(hF) could not be fixed on the region";
        out.refusal = std::move(r);
        return out;
    }

    Certificate cert;
    cert.field = F;
    cert.region = region;
    cert.env = env;
    cert.cand = cand;
    cert.k = std::move(k);
    cert.h_proof = std::move(hp);
    cert.c_proof = std::move(cp);
    cert.k_proof = std::move(kp);
    cert.residual = rs;
    cert.conclusion = conclusion_text(region, env);
    out.certificate = std::move(cert);
    return out;
}

} // namespace dulac
