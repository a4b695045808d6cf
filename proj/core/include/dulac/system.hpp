#pragma once

// Planar autonomous system x1' = f1(x1, x2), x2' = f2(x1, x2) together with
// the rectangular region the certification quantifies over.

#include "dulac/env.hpp"
#include "dulac/expr.hpp"

#include <string>

namespace dulac {

struct VectorField {
    Expr f1;
    Expr f2;
};

enum class RegionKind { Box, PositiveQuadrantBox };

std::string to_string(RegionKind k);

struct Region {
    RegionKind kind = RegionKind::Box;
    Rational x1_lo{0}, x1_hi{0};
    Rational x2_lo{0}, x2_hi{0};

    // lo < hi on both axes; positive-quadrant boxes must have lo > 0
    void validate() const;

    Interval x1_interval() const { return from_rational(x1_lo, x1_hi); }
    Interval x2_interval() const { return from_rational(x2_lo, x2_hi); }
};

// throws EnvError naming any parameter mentioned but not declared
void require_declared(const Expr& e, const ParamEnv& env, const std::string& where);

// d f1 / d x1 + d f2 / d x2, normalized
Expr divergence(const VectorField& sys);

// divergence of the scaled field (h f1, h f2)
Expr div_hF(const VectorField& sys, const Expr& h);

// div(h F) - h * c; identically zero exactly when h solves the defining
// equation f1 h_x1 + f2 h_x2 = h (c - div F)
Expr pde_residual(const VectorField& sys, const Expr& h, const Expr& c);

} // namespace dulac
