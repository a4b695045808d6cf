#include "dulac/system.hpp"

namespace dulac {

std::string to_string(RegionKind k) {
    return k == RegionKind::Box ? "box" : "positive-quadrant-box";
}

void Region::validate() const {
    if (!(x1_lo < x1_hi) || !(x2_lo < x2_hi))
        throw EnvError("region is degenerate: need lo < hi on both axes");
    if (kind == RegionKind::PositiveQuadrantBox && (x1_lo <= 0 || x2_lo <= 0))
        throw EnvError("positive-quadrant-box requires strictly positive lower bounds");
}

void require_declared(const Expr& e, const ParamEnv& env, const std::string& where) {
    std::map<std::string, bool> vars, params;
    collect_symbols(e, vars, params);
    for (const auto& [name, _] : params)
        if (!env.has(name))
            throw EnvError("undeclared parameter '" + name + "' in " + where);
}

Expr divergence(const VectorField& sys) {
    return normalize(add(differentiate(sys.f1, "x1"), differentiate(sys.f2, "x2")));
}

Expr div_hF(const VectorField& sys, const Expr& h) {
    Expr a = differentiate(mul(h, sys.f1), "x1");
    Expr b = differentiate(mul(h, sys.f2), "x2");
    return normalize(add(a, b));
}

Expr pde_residual(const VectorField& sys, const Expr& h, const Expr& c) {
    return normalize(sub(div_hF(sys, h), mul(h, c)));
}

} // namespace dulac
