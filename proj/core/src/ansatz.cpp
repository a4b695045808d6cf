#include "dulac/ansatz.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace dulac {

std::string family_name(Family f) {
    switch (f) {
    case Family::SingleVar1: return "single-var-1";
    case Family::SingleVar2: return "single-var-2";
    case Family::ProductZ: return "product-z";
    case Family::SumZ: return "sum-z";
    case Family::LinearZ: return "linear-z";
    case Family::QuotientZ: return "quotient-z";
    case Family::GeneralProduct: return "general-product";
    case Family::GeneralSum: return "general-sum";
    case Family::GeneralZ: return "general-z";
    }
    return "";
}

Ansatz Ansatz::single_var(int i) {
    Ansatz a;
    a.family = i == 1 ? Family::SingleVar1 : Family::SingleVar2;
    a.z = variable(i);
    return a;
}

Ansatz Ansatz::product_z() {
    Ansatz a;
    a.family = Family::ProductZ;
    a.z = mul(variable(1), variable(2));
    return a;
}

Ansatz Ansatz::sum_z() {
    Ansatz a;
    a.family = Family::SumZ;
    a.z = add(variable(1), variable(2));
    return a;
}

Ansatz Ansatz::linear_z(const Rational& c1, const Rational& c2) {
    Ansatz a;
    a.family = Family::LinearZ;
    a.c1 = c1;
    a.c2 = c2;
    a.z = add(mul(constant(c1), variable(1)), mul(constant(c2), variable(2)));
    return a;
}

Ansatz Ansatz::quotient_z() {
    Ansatz a;
    a.family = Family::QuotientZ;
    a.z = quotient(variable(1), variable(2));
    return a;
}

Ansatz Ansatz::general_product(const Expr& g1, const Expr& g2) {
    Ansatz a;
    a.family = Family::GeneralProduct;
    a.g1 = g1;
    a.g2 = g2;
    a.z = mul(g1, g2);
    return a;
}

Ansatz Ansatz::general_sum(const Expr& k1, const Expr& k2) {
    Ansatz a;
    a.family = Family::GeneralSum;
    a.k1 = k1;
    a.k2 = k2;
    a.z = add(k1, k2);
    return a;
}

Ansatz Ansatz::general_z(const Expr& z) {
    Ansatz a;
    a.family = Family::GeneralZ;
    a.z = z;
    return a;
}

std::string ansatz_display(const Ansatz& a) {
    if (a.family == Family::LinearZ)
        return "linear-z(" + to_string(a.c1) + "," + to_string(a.c2) + ")";
    return family_name(a.family);
}

Expr directional_derivative(const Ansatz& a, const VectorField& F) {
    return add(mul(F.f1, differentiate(a.z, "x1")), mul(F.f2, differentiate(a.z, "x2")));
}

Expr denominator(const Ansatz& a, const VectorField& F) {
    if (a.family == Family::QuotientZ)
        return sub(F.f1, mul(quotient(variable(1), variable(2)), F.f2));
    return directional_derivative(a, F);
}

Expr dependence_ratio(const VectorField& F, const Expr& c, const Ansatz& a,
                      const ParamEnv& env) {
    Expr D = directional_derivative(a, F);
    if (is_identically_zero(D, env).zero)
        throw AnsatzError(AnsatzError::Kind::DegenerateDenominator,
                          "the family denominator vanishes identically for this system");
    return normalize(quotient(sub(c, divergence(F)), D));
}

bool depends_only_on_z(const Expr& e, const Expr& z, const ParamEnv& env) {
    // grad e parallel to grad z over the whole plane
    Expr w = sub(mul(differentiate(e, "x1"), differentiate(z, "x2")),
                 mul(differentiate(e, "x2"), differentiate(z, "x1")));
    return is_identically_zero(w, env).zero;
}

namespace {

// section curve x(z, t) for the built-in families; substituting it into an
// expression that depends only on z recovers the z-form
void section_curve(const Ansatz& a, const Rational& t, Expr& x1_of, Expr& x2_of) {
    const Expr zs = parameter("z");
    const Expr tc = constant(t);
    switch (a.family) {
    case Family::SingleVar1:
        x1_of = zs;
        x2_of = tc;
        return;
    case Family::SingleVar2:
        x1_of = tc;
        x2_of = zs;
        return;
    case Family::ProductZ:
        x1_of = quotient(zs, tc);
        x2_of = tc;
        return;
    case Family::QuotientZ:
        x1_of = mul(zs, tc);
        x2_of = tc;
        return;
    case Family::SumZ:
    case Family::LinearZ:
        x1_of = quotient(sub(zs, mul(constant(a.c2), tc)), constant(a.c1));
        x2_of = tc;
        return;
    default:
        throw AnsatzError(AnsatzError::Kind::VerificationFailed,
                          "no section curve for a general family");
    }
}

bool needs_nonzero_t(Family f) { return f == Family::ProductZ || f == Family::QuotientZ; }

std::optional<std::array<Rational, 4>> solve4(std::array<std::array<Rational, 4>, 4> m,
                                              std::array<Rational, 4> b) {
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (!m[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < 4; ++r) {
            if (m[r][col].is_zero()) continue;
            const Rational f = m[r][col] / m[col][col];
            for (int c2 = col; c2 < 4; ++c2) m[r][c2] -= f * m[col][c2];
            b[r] -= f * b[col];
        }
    }
    std::array<Rational, 4> x;
    for (int r = 3; r >= 0; --r) {
        Rational acc = b[r];
        for (int c2 = r + 1; c2 < 4; ++c2) acc -= m[r][c2] * x[c2];
        x[r] = acc / m[r][r];
    }
    return x;
}

// fit km1/z + k0 + k1 z + k2 z^2 through exact samples, for families whose
// section curves are not symbolically invertible
Expr fit_general(const Expr& e, const Ansatz& a, const ParamEnv& env) {
    static const Rational pool1[] = {Rational(1),      Rational(2), Rational(3),
                                     Rational(5),      Rational(7), Rational(11),
                                     Rational(1) / 2,  Rational(1) / 3};
    static const Rational pool2[] = {Rational(2), Rational(3), Rational(1) / 2};
    const auto mid = env.midpoint_sample();

    std::vector<Rational> zs, es;
    for (const Rational& p1 : pool1) {
        for (const Rational& p2 : pool2) {
            if (zs.size() == 4) break;
            try {
                PointEval zv = eval_point(a.z, p1, p2, mid);
                if (!zv.exact || zv.exact->is_zero()) continue;
                if (std::find(zs.begin(), zs.end(), *zv.exact) != zs.end()) continue;
                PointEval ev = eval_point(e, p1, p2, mid);
                if (!ev.exact) continue;
                zs.push_back(*zv.exact);
                es.push_back(*ev.exact);
            } catch (const DomainError&) {
            }
        }
    }
    if (zs.size() < 4)
        throw AnsatzError(AnsatzError::Kind::VerificationFailed,
                          "could not sample four distinct section values");

    // multiply the template by z: km1 + k0 z + k1 z^2 + k2 z^3 = e z
    std::array<std::array<Rational, 4>, 4> m;
    std::array<Rational, 4> b;
    for (int i = 0; i < 4; ++i) {
        m[i][0] = Rational(1);
        m[i][1] = zs[i];
        m[i][2] = zs[i] * zs[i];
        m[i][3] = zs[i] * zs[i] * zs[i];
        b[i] = es[i] * zs[i];
    }
    auto sol = solve4(m, b);
    if (!sol)
        throw AnsatzError(AnsatzError::Kind::VerificationFailed,
                          "section samples were degenerate");
    GammaTemplate t;
    t.km1 = (*sol)[0];
    t.k0 = (*sol)[1];
    t.k1 = (*sol)[2];
    t.k2 = (*sol)[3];
    Expr r = t.gamma_expr();
    if (!is_identically_zero(sub(e, substitute(r, "z", a.z)), env).zero)
        throw AnsatzError(AnsatzError::Kind::VerificationFailed,
                          "the fitted z-form does not reproduce the expression");
    return r;
}

} // namespace

Expr express_in_z(const Expr& e, const Ansatz& a, const ParamEnv& env) {
    switch (a.family) {
    case Family::GeneralProduct:
    case Family::GeneralSum:
    case Family::GeneralZ:
        return fit_general(e, a, env);
    default:
        break;
    }

    const Rational primary = (a.family == Family::SumZ || a.family == Family::LinearZ)
                                 ? Rational(0)
                                 : Rational(1);
    std::vector<Rational> ts{primary};
    for (const Rational& t : {Rational(1), Rational(2), Rational(1) / 2, Rational(3)})
        if (t != primary) ts.push_back(t);

    bool attempted = false;
    for (const Rational& t : ts) {
        if (t.is_zero() && needs_nonzero_t(a.family)) continue;
        attempted = true;
        Expr r;
        try {
            Expr x1_of, x2_of;
            section_curve(a, t, x1_of, x2_of);
            r = normalize(substitute(substitute(e, "x1", x1_of), "x2", x2_of));
        } catch (const DomainError&) {
            continue; // the curve met a singularity of e; try another section
        }
        if (!is_identically_zero(sub(e, substitute(r, "z", a.z)), env).zero)
            throw AnsatzError(AnsatzError::Kind::VerificationFailed,
                              "the section rewrite does not reproduce the expression");
        return r;
    }
    (void)attempted;
    throw AnsatzError(AnsatzError::Kind::SectionOutsideDomain,
                      "every section curve met a singularity of the expression");
}

Expr GammaTemplate::gamma_expr() const {
    const Expr z = parameter("z");
    std::vector<Expr> parts;
    if (!k2.is_zero()) parts.push_back(mul(constant(k2), power(z, 2)));
    if (!k1.is_zero()) parts.push_back(mul(constant(k1), z));
    if (!k0.is_zero()) parts.push_back(constant(k0));
    if (!km1.is_zero()) parts.push_back(quotient(constant(km1), z));
    if (parts.empty()) return constant(0);
    return sum(parts);
}

std::string GammaTemplate::str() const {
    // fixed degree-descending layout, independent of expression folding
    std::string out;
    auto piece = [&](const Rational& k, const std::string& pow) {
        if (k.is_zero()) return;
        Rational a = k;
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (a != 1 || pow.empty()) out += to_string(a);
        if (!pow.empty()) {
            if (a != 1) out += "*";
            out += pow;
        }
    };
    piece(k2, "z^2");
    piece(k1, "z");
    piece(k0, "");
    if (!km1.is_zero()) {
        Rational a = km1;
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        out += to_string(a) + "/z";
    }
    if (out.empty()) out = "0";
    return out;
}

std::optional<GammaTemplate> match_template(const Expr& gamma_in_z) {
    RationalForm rf;
    try {
        rf = to_rational_form(gamma_in_z);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    if (!rf.atoms.empty()) return std::nullopt;

    auto only_z = [](const Poly& p) {
        for (const auto& [mono, coeff] : p.terms())
            for (const auto& [name, exp] : mono.factors)
                if (name != "z") return false;
        return true;
    };
    if (!only_z(rf.num) || !only_z(rf.den)) return std::nullopt;

    auto coeff = [&](const Poly& p, long k) -> std::optional<Rational> {
        Poly c = p.coeff_of("z", k);
        if (c.is_zero()) return Rational(0);
        if (!c.is_constant()) return std::nullopt;
        return c.constant_value();
    };

    GammaTemplate t;
    if (rf.den.is_constant()) {
        if (rf.num.degree_in("z") > 2) return std::nullopt;
        const Rational d = rf.den.constant_value();
        auto c0 = coeff(rf.num, 0), c1 = coeff(rf.num, 1), c2 = coeff(rf.num, 2);
        if (!c0 || !c1 || !c2) return std::nullopt;
        t.k0 = *c0 / d;
        t.k1 = *c1 / d;
        t.k2 = *c2 / d;
        return t;
    }
    if (!(rf.den == Poly::variable("z"))) return std::nullopt;
    if (rf.num.degree_in("z") > 3) return std::nullopt;
    auto c0 = coeff(rf.num, 0), c1 = coeff(rf.num, 1), c2 = coeff(rf.num, 2),
         c3 = coeff(rf.num, 3);
    if (!c0 || !c1 || !c2 || !c3) return std::nullopt;
    t.km1 = *c0;
    t.k0 = *c1;
    t.k1 = *c2;
    t.k2 = *c3;
    return t;
}

Expr synthesize_c(const VectorField& F, const Ansatz& a, const GammaTemplate& t) {
    Expr c = divergence(F);
    if (!t.is_zero())
        c = add(c, mul(substitute(t.gamma_expr(), "z", a.z), directional_derivative(a, F)));
    return normalize(c);
}

Expr build_h(const GammaTemplate& t, const Ansatz& a, const Region& region,
             const ParamEnv& env) {
    bool z_pos = false, z_nonzero = false;
    try {
        auto r = eval_interval(a.z, region.x1_interval(), region.x2_interval(),
                               env.interval_map());
        if (r.ok()) {
            z_pos = r.value.lo > 0.0;
            z_nonzero = !r.value.contains_zero();
        }
    } catch (const DomainError&) {
    }

    std::vector<Expr> factors;
    if (!t.km1.is_zero()) {
        if (boost::multiprecision::denominator(t.km1) == 1) {
            const long n = boost::multiprecision::numerator(t.km1).convert_to<long>();
            if (n < 0 && !z_nonzero)
                throw AnsatzError(AnsatzError::Kind::UnsupportedGamma,
                                  "needs z bounded away from 0 on the region");
            factors.push_back(power(a.z, n));
        } else {
            if (!z_pos)
                throw AnsatzError(AnsatzError::Kind::UnsupportedGamma,
                                  "needs z > 0 on the region");
            factors.push_back(make_exp(mul(constant(t.km1), make_log(a.z))));
        }
    }
    std::vector<Expr> arg;
    if (!t.k0.is_zero()) arg.push_back(mul(constant(t.k0), a.z));
    if (!t.k1.is_zero()) arg.push_back(mul(constant(t.k1 / 2), power(a.z, 2)));
    if (!t.k2.is_zero()) arg.push_back(mul(constant(t.k2 / 3), power(a.z, 3)));
    if (!arg.empty()) factors.push_back(make_exp(sum(arg)));
    if (factors.empty()) return constant(1);
    return normalize(product(factors));
}

namespace {

// gcd of the coefficients of v^0..v^deg, which is the v-free factor of p
Poly content_in(const Poly& p, const std::string& v) {
    Poly g;
    for (long k = 0; k <= p.degree_in(v); ++k) {
        Poly c = p.coeff_of(v, k);
        if (!c.is_zero()) g = poly_gcd(g, c);
    }
    return g;
}

struct Split {
    Poly dep;  // the factor carrying the pivot variable
    Poly free; // the pivot-free cofactor
    bool ok = false;
};

// p == dep(x_pivot, params) * free(other var, params), detected by content
// extraction; ok only when the cofactor is clean of the other variable
Split split_poly(const Poly& p, const std::string& pivot, const std::string& other) {
    Split s;
    if (p.is_zero()) return s;
    s.free = content_in(p, pivot);
    auto q = exact_div(p, s.free);
    if (!q) return s;
    s.dep = *q;
    s.ok = s.dep.degree_in(other) == 0;
    return s;
}

bool is_additive(const Poly& p) {
    for (const auto& [mono, coeff] : p.terms())
        if (mono.degree_in("x1") > 0 && mono.degree_in("x2") > 0) return false;
    return true;
}

Expr poly_expr(const Poly& p) { return to_expr(RationalForm{p, Poly(Rational(1)), {}}); }

// h = 1/den with the sign chosen so h is positive at the region center
Expr inverse_h(const Poly& den, const Region& region, const ParamEnv& env) {
    std::map<std::string, Rational> pt = env.midpoint_sample();
    pt["x1"] = (region.x1_lo + region.x1_hi) / 2;
    pt["x2"] = (region.x2_lo + region.x2_hi) / 2;
    const Rational v = den.eval(pt);
    return normalize(quotient(constant(v < 0 ? -1 : 1), poly_expr(den)));
}

DulacCandidate corollary_candidate(const VectorField& F, const Poly& den, int var,
                                   const Region& region, const ParamEnv& env) {
    DulacCandidate cand;
    cand.h = inverse_h(den, region, env);
    cand.c = normalize(quotient(div_hF(F, cand.h), cand.h));
    cand.ansatz = Ansatz::single_var(var);
    cand.origin = "separable";
    return cand;
}

} // namespace

std::vector<DulacCandidate> detect_separable(const VectorField& F, const Region& region,
                                             const ParamEnv& env) {
    std::vector<DulacCandidate> out;
    RationalForm r1, r2;
    try {
        r1 = to_rational_form(F.f1);
        r2 = to_rational_form(F.f2);
    } catch (const DomainError&) {
        return out;
    }
    if (!r1.is_polynomial() || !r2.is_polynomial()) return out;
    if (r1.num.is_zero() || r2.num.is_zero()) return out;

    // f1 = dep1(x1) * free1(x2), f2 = dep2(x1) * free2(x2) up to constants
    const Split s1 = split_poly(r1.num, "x1", "x2");
    const Split s2 = split_poly(r2.num, "x1", "x2");

    if (s1.ok && s2.ok && !s1.dep.is_constant())
        out.push_back(corollary_candidate(F, s1.dep, 1, region, env));
    if (s1.ok && s2.ok && !s2.free.is_constant())
        out.push_back(corollary_candidate(F, s2.free, 2, region, env));
    if (s1.ok && !s1.dep.is_constant() && is_additive(r2.num)) {
        // f2 splits additively, so 1/dep1 still cancels the x1 equation
        out.push_back(corollary_candidate(F, s1.dep, 1, region, env));
    }
    return out;
}

} // namespace dulac
