#include "dulac/search.hpp"

#include "dulac/rng.hpp"

#include <future>
#include <utility>

namespace dulac {

namespace {

struct StagePlan {
    std::string name;
    std::vector<GammaTemplate> gammas;
};

// stage grids all derive from the configured kappa magnitudes
std::vector<StagePlan> build_stages(const SearchConfig& config) {
    const auto& mags = config.kappa_grid;
    std::vector<StagePlan> stages(5);
    stages[0].name = "kappa/z < 0";
    stages[1].name = "kappa/z > 0";
    stages[2].name = "constant";
    stages[3].name = "affine in 1/z";
    stages[4].name = "polynomial";
    for (const auto& m : mags) {
        GammaTemplate t;
        t.km1 = -m;
        stages[0].gammas.push_back(t);
        t.km1 = m;
        stages[1].gammas.push_back(t);
    }
    std::vector<Rational> signed_grid;
    for (const auto& m : mags) {
        signed_grid.push_back(m);
        signed_grid.push_back(-m);
    }
    for (const auto& v : signed_grid) {
        GammaTemplate t;
        t.k0 = v;
        stages[2].gammas.push_back(t);
    }
    for (const auto& k0 : signed_grid)
        for (const auto& km1 : signed_grid) {
            GammaTemplate t;
            t.k0 = k0;
            t.km1 = km1;
            stages[3].gammas.push_back(t);
        }
    std::vector<Rational> with_zero{Rational(0)};
    with_zero.insert(with_zero.end(), signed_grid.begin(), signed_grid.end());
    for (const auto& k0 : with_zero)
        for (const auto& k1 : with_zero)
            for (const auto& k2 : with_zero) {
                if (k1.is_zero() && k2.is_zero()) continue; // covered by the constant stage
                GammaTemplate t;
                t.k0 = k0;
                t.k1 = k1;
                t.k2 = k2;
                stages[4].gammas.push_back(t);
            }
    return stages;
}

struct Job {
    long rank = 0;
    std::string stage;
    bool prebuilt = false;  // separable fast path, candidate already assembled
    DulacCandidate cand;    // only when prebuilt
    Ansatz inst;
    GammaTemplate gamma;
};

struct JobResult {
    TranscriptEntry entry;
    std::optional<Certificate> certificate;
    bool disproved = false;
};

struct ScreenSigns {
    bool pos = false, neg = false;
};

ScreenSigns screen_sign(const Expr& e, const std::vector<SamplePoint>& pts) {
    ScreenSigns s;
    for (const auto& p : pts) {
        auto g = sign_at(e, p);
        if (!g) continue;
        if (*g > 0) s.pos = true;
        if (*g < 0) s.neg = true;
        if (s.pos && s.neg) break;
    }
    return s;
}

JobResult run_job(const VectorField& F, const Region& region, const ParamEnv& env,
                  const SearchConfig& config, const Job& job) {
    JobResult r;
    r.entry.rank = job.rank;
    r.entry.stage = job.stage;
    r.entry.family = ansatz_display(job.prebuilt ? job.cand.ansatz : job.inst);
    r.entry.gamma = job.prebuilt ? "-" : job.gamma.str();

    ProveConfig prove = config.prove;
    prove.seed = mix_seed(config.prove.seed, static_cast<std::uint64_t>(job.rank));

    DulacCandidate cand;
    try {
        if (job.prebuilt) {
            cand = job.cand;
        } else if (config.user_c) {
            // recover gamma for this family from the user's c, then rebuild h
            Expr ratio = dependence_ratio(F, *config.user_c, job.inst, env);
            if (!depends_only_on_z(ratio, job.inst.z, env)) {
                r.entry.outcome = "unsupported";
                r.entry.detail = "(c - div F)/(F . grad z) depends on more than z";
                return r;
            }
            Expr in_z = express_in_z(ratio, job.inst, env);
            auto t = match_template(in_z);
            if (!t) {
                r.entry.outcome = "unsupported";
                r.entry.detail = "gamma falls outside the template table";
                return r;
            }
            r.entry.gamma = t->str();
            cand.h = build_h(*t, job.inst, region, env);
            cand.c = *config.user_c;
            cand.ansatz = job.inst;
            cand.gamma = *t;
            cand.has_gamma = true;
            cand.origin = "user";
        } else {
            cand.c = synthesize_c(F, job.inst, job.gamma);
            cand.ansatz = job.inst;
            cand.gamma = job.gamma;
            cand.has_gamma = true;
            cand.origin = "search";
        }
    } catch (const AnsatzError& e) {
        r.entry.outcome = "unsupported";
        r.entry.detail = e.what();
        return r;
    } catch (const DomainError& e) {
        r.entry.outcome = "unsupported";
        r.entry.detail = e.what();
        return r;
    }

    // cheap sample screen on c before any interval work; exact opposite signs
    // are a definitive rejection of the fixed-sign requirement
    auto pts = sample_schedule(region, env, prove.seed);
    ScreenSigns sc = screen_sign(cand.c, pts);
    if (sc.pos && sc.neg) {
        r.entry.outcome = "screened";
        r.entry.detail = "c takes both signs on the sample schedule";
        r.disproved = true;
        return r;
    }
    std::optional<SignClaim> hint;
    if (sc.neg)
        hint = SignClaim::NonposAe;
    else if (sc.pos)
        hint = SignClaim::NonnegAe;

    if (!job.prebuilt && !config.user_c) {
        try {
            cand.h = build_h(job.gamma, job.inst, region, env);
        } catch (const AnsatzError& e) {
            r.entry.outcome = "unsupported";
            r.entry.detail = e.what();
            return r;
        }
    }

    CertifyOutcome out = certify_dulac(F, cand, region, env, prove, hint);
    if (out.ok()) {
        r.entry.outcome = "certified";
        r.entry.detail = "h = " + print_expr(out.certificate->cand.h);
        r.certificate = std::move(out.certificate);
        return r;
    }
    r.entry.outcome = "refused";
    r.entry.detail = out.refusal->stage + ": " + out.refusal->message;
    r.disproved = out.refusal->kind == Refusal::Kind::SignUnproved &&
                  out.refusal->proof.status == ProofStatus::Disproved;
    return r;
}

std::vector<Job> build_jobs(const VectorField& F, const Region& region, const ParamEnv& env,
                            const SearchConfig& config) {
    std::vector<Job> jobs;
    std::vector<Ansatz> instances = default_instances(config);
    long rank = 0;
    if (config.user_c) {
        for (const auto& inst : instances) {
            Job j;
            j.rank = rank++;
            j.stage = "user c";
            j.inst = inst;
            jobs.push_back(std::move(j));
        }
        return jobs;
    }
    for (auto& cand : detect_separable(F, region, env)) {
        Job j;
        j.rank = rank++;
        j.stage = "separable";
        j.prebuilt = true;
        j.cand = std::move(cand);
        jobs.push_back(std::move(j));
    }
    for (const auto& stage : build_stages(config))
        for (const auto& inst : instances)
            for (const auto& g : stage.gammas) {
                Job j;
                j.rank = rank++;
                j.stage = stage.name;
                j.inst = inst;
                j.gamma = g;
                jobs.push_back(std::move(j));
            }
    return jobs;
}

} // namespace

std::vector<Ansatz> default_instances(const SearchConfig& config) {
    if (!config.instances.empty()) return config.instances;
    std::vector<Ansatz> v;
    v.push_back(Ansatz::single_var(1));
    v.push_back(Ansatz::single_var(2));
    v.push_back(Ansatz::product_z());
    v.push_back(Ansatz::sum_z());
    for (const auto& [c1, c2] : config.linear_grid) v.push_back(Ansatz::linear_z(c1, c2));
    v.push_back(Ansatz::quotient_z());
    return v;
}

SearchResult search_dulac(const VectorField& F, const Region& region, const ParamEnv& env,
                          const SearchConfig& config) {
    SearchResult res;
    std::vector<Job> jobs = build_jobs(F, region, env, config);
    if (config.max_candidates > 0 &&
        jobs.size() > static_cast<std::size_t>(config.max_candidates))
        jobs.resize(static_cast<std::size_t>(config.max_candidates));

    const std::size_t width = config.workers > 1 ? static_cast<std::size_t>(config.workers) : 1;
    long winner = -1;
    for (std::size_t base = 0; base < jobs.size(); base += width) {
        const std::size_t n = std::min(width, jobs.size() - base);
        // batch peers run concurrently; results are consumed in rank order so
        // the transcript and the winner never depend on the worker count
        std::vector<std::future<JobResult>> futs;
        for (std::size_t i = 1; i < n; ++i)
            futs.push_back(std::async(std::launch::async, run_job, std::cref(F),
                                      std::cref(region), std::cref(env), std::cref(config),
                                      std::cref(jobs[base + i])));
        for (std::size_t i = 0; i < n; ++i) {
            JobResult jr = i == 0 ? run_job(F, region, env, config, jobs[base])
                                  : futs[i - 1].get();
            if (winner >= 0 && jr.entry.rank > winner && !config.exhaustive) continue;
            if (jr.certificate && winner < 0) {
                winner = jr.entry.rank;
                res.certificate = std::move(jr.certificate);
            }
            res.transcript.push_back(std::move(jr.entry));
            res.candidates_tried += 1;
            res.any_disproved = res.any_disproved || jr.disproved;
        }
        if (winner >= 0 && !config.exhaustive) break;
    }
    return res;
}

} // namespace dulac
