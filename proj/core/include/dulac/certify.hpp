#pragma once

// Sound sign certification over rectangular regions by interval
// branch-and-bound, and assembly of the full no-periodic-orbits certificate.
// Claims quantify over the whole region and over every parameter value in the
// declared boxes. "-ae" claims tolerate a thin zero set: undecided boxes at
// the depth cap are accepted when each side is at most delta_zero wide and
// their total volume stays under rho times the region volume.

#include "dulac/ansatz.hpp"
#include "dulac/env.hpp"
#include "dulac/expr.hpp"
#include "dulac/system.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dulac {

enum class SignClaim { NonnegAe, NonposAe, Positive, Negative };
std::string to_string(SignClaim c); // "nonneg-ae", "nonpos-ae", "positive", "negative"

enum class ProofStatus { Proved, Disproved, Unknown };
std::string to_string(ProofStatus s);

struct Counterexample {
    Rational x1{0}, x2{0};
    std::map<std::string, Rational> params;
    std::string value; // exact rational, or an enclosure note for exp/log paths
};

struct ProveConfig {
    int max_depth = 24;
    double rho = 1e-4;        // undecided volume allowance, fraction of region
    double delta_zero = 1e-3; // max side width of an accepted thin box
    long max_boxes = 200000;
    std::uint64_t seed = 0;
};

struct ThinBox {
    Rational x1_lo, x1_hi, x2_lo, x2_hi;
};

struct SignProof {
    SignClaim claim = SignClaim::NonnegAe;
    ProofStatus status = ProofStatus::Unknown;
    std::optional<Counterexample> counterexample; // set when Disproved
    std::string unknown_reason;
    bool strict = false;      // Proved with strict enclosures and no thin boxes
    long boxes_total = 0;
    int max_depth_reached = 0;
    Rational undecided_volume_fraction{0};
    std::vector<ThinBox> thin_boxes; // first few accepted thin boxes
    long thin_box_count = 0;
    bool den_disproved = false; // denominator vanishes or flips sign: pole evidence
    double wall_seconds = 0;    // kept for profiling, never printed
};

SignProof prove_sign(const Expr& e, const Region& region, const ParamEnv& env,
                     SignClaim claim, const ProveConfig& config = {});

// C1 precondition: proves the denominator of e is bounded away from zero on
// the region. Trivially Proved for polynomial e; den_disproved marks pole
// evidence (a vanishing or sign-flipping denominator)
SignProof prove_no_poles(const Expr& e, const Region& region, const ParamEnv& env,
                         const ProveConfig& config = {});

// deterministic evaluation schedule shared by the prover's pre-pass and the
// search's candidate screen: region corners and center crossed with parameter
// corner sweeps, then seeded random points
struct SamplePoint {
    Rational x1, x2;
    std::map<std::string, Rational> params;
};
std::vector<SamplePoint> sample_schedule(const Region& region, const ParamEnv& env,
                                         std::uint64_t seed);

// -1, 0, +1, or nullopt when the point is outside the domain or the sign is
// not decided by the enclosure
std::optional<int> sign_at(const Expr& e, const SamplePoint& p);

enum class ResidualStatus { ExactZero, ProbabilisticZero, Nonzero };
std::string to_string(ResidualStatus s);

struct Certificate {
    VectorField field;
    Region region;
    ParamEnv env;
    DulacCandidate cand;
    Expr k; // div(h F)
    SignProof h_proof, c_proof, k_proof;
    ResidualStatus residual = ResidualStatus::ExactZero;
    std::string conclusion;
};

struct Refusal {
    enum class Kind { ResidualNonzero, SignUnproved };
    Kind kind = Kind::SignUnproved;
    std::string stage; // "residual", "h", "c", "k"
    SignProof proof;   // the failing proof when kind == SignUnproved
    std::string message;
};

struct CertifyOutcome {
    std::optional<Certificate> certificate;
    std::optional<Refusal> refusal;
    bool ok() const { return certificate.has_value(); }
};

// full pipeline: k = div(hF); k not identically zero; pde residual vanishes;
// h > 0; c of fixed sign; k of the matching sign (proved independently)
CertifyOutcome certify_dulac(const VectorField& F, const DulacCandidate& cand,
                             const Region& region, const ParamEnv& env,
                             const ProveConfig& config = {},
                             std::optional<SignClaim> c_claim = {});

} // namespace dulac
