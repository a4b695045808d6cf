#pragma once

// Multiplier construction. Every family fixes a section coordinate z(x1, x2);
// candidates have the shape h = exp(int gamma(z) dz) for gamma drawn from a
// small closed-form template table, plus corollary-shape fast paths for
// separable systems. Sign certification of the results lives in certify.

#include "dulac/env.hpp"
#include "dulac/expr.hpp"
#include "dulac/system.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dulac {

enum class Family {
    SingleVar1,     // z = x1
    SingleVar2,     // z = x2
    ProductZ,       // z = x1*x2
    SumZ,           // z = x1 + x2
    LinearZ,        // z = c1*x1 + c2*x2
    QuotientZ,      // z = x1/x2
    GeneralProduct, // z = g1(x1)*g2(x2), user supplied
    GeneralSum,     // z = k1(x1) + k2(x2), user supplied
    GeneralZ,       // z supplied directly
};

std::string family_name(Family f); // "single-var-1", "product-z", ...

struct Ansatz {
    Family family = Family::SingleVar1;
    Rational c1{1}, c2{1}; // LinearZ coefficients
    Expr z;                // section coordinate, set for every family
    Expr g1, g2;           // GeneralProduct factors
    Expr k1, k2;           // GeneralSum addends

    static Ansatz single_var(int i);
    static Ansatz product_z();
    static Ansatz sum_z();
    static Ansatz linear_z(const Rational& c1, const Rational& c2);
    static Ansatz quotient_z();
    static Ansatz general_product(const Expr& g1, const Expr& g2);
    static Ansatz general_sum(const Expr& k1, const Expr& k2);
    static Ansatz general_z(const Expr& z);
};

// display form with LinearZ coefficients spelled out, e.g. "linear-z(1,-1)"
std::string ansatz_display(const Ansatz& a);

struct AnsatzError : std::runtime_error {
    enum class Kind {
        DegenerateDenominator,
        SectionOutsideDomain,
        VerificationFailed,
        UnsupportedGamma,
    };
    Kind kind;
    AnsatzError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// the family's denominator D; QuotientZ keeps the printed f1 - (x1/x2)*f2
// structure (its ratio gets the extra x2 factor in dependence_ratio)
Expr denominator(const Ansatz& a, const VectorField& F);

// F . grad z, the synthesis form; equals the denominator up to the QuotientZ
// x2 bookkeeping
Expr directional_derivative(const Ansatz& a, const VectorField& F);

// (c - div F)/D, with the extra x2 factor for QuotientZ; throws
// DegenerateDenominator when D is identically zero
Expr dependence_ratio(const VectorField& F, const Expr& c, const Ansatz& a,
                      const ParamEnv& env = {});

// true iff grad e is parallel to grad z, i.e. e is locally a function of z
bool depends_only_on_z(const Expr& e, const Expr& z, const ParamEnv& env = {});

// rewrite e as an expression in the symbol "z" along a section curve of the
// family, verified a-posteriori (e == result composed with z, identically)
Expr express_in_z(const Expr& e, const Ansatz& a, const ParamEnv& env = {});

struct GammaTemplate {
    // gamma(z) = km1/z + k0 + k1*z + k2*z^2
    Rational km1{0}, k0{0}, k1{0}, k2{0};

    bool is_zero() const { return km1.is_zero() && k0.is_zero() && k1.is_zero() && k2.is_zero(); }
    Expr gamma_expr() const;  // in the parameter symbol "z"
    std::string str() const;  // deterministic display form, e.g. "-1/z"
};

// match an expression in the symbol "z" against the template table; nullopt
// when it falls outside (nonrational coefficients, higher degree, atoms)
std::optional<GammaTemplate> match_template(const Expr& gamma_in_z);

// c := div F + gamma(z) * (F . grad z), normalized
Expr synthesize_c(const VectorField& F, const Ansatz& a, const GammaTemplate& t);

// h = z^km1 * exp(k0*z + k1*z^2/2 + k2*z^3/3) with z = a.z. Non-integer km1
// goes through exp(km1*log z) and needs z > 0 over the region; negative
// integer km1 needs z bounded away from 0. Violations throw UnsupportedGamma.
Expr build_h(const GammaTemplate& t, const Ansatz& a, const Region& region,
             const ParamEnv& env = {});

struct DulacCandidate {
    Expr h;
    Expr c;
    Ansatz ansatz;
    GammaTemplate gamma;
    bool has_gamma = false; // false for user-supplied or corollary-shape h
    std::string origin;     // "search", "separable", "user"
};

// corollary-shape fast path: f1 = r1(x1)*s1(x2) with f2 either factoring the
// same way or additively separable; returns candidates in deterministic order
std::vector<DulacCandidate> detect_separable(const VectorField& F, const Region& region,
                                             const ParamEnv& env = {});

} // namespace dulac
