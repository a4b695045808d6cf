#pragma once

// Symbolic expressions over x1, x2 and named parameters.
//
// Nodes are immutable and shared. Construction through the factory
// functions performs light folding (flattening nested sums/products,
// constant folding, dropping neutral elements); full canonicalization
// goes through the rational-form bridge in normalize().
//
// The rational form represents an expression as num/den where num and
// den are sparse polynomials over x1, x2, parameters, and "atoms":
// opaque indeterminates standing for exp(...) / log(...) subtrees whose
// arguments are themselves normalized expressions. Products of exp atoms
// inside a monomial are merged (exp(a)^i * exp(b)^j -> exp(i*a + j*b)),
// so equalities between the usual exponential combinations reduce to
// exact polynomial identities.

#include "dulac/env.hpp"
#include "dulac/interval.hpp"
#include "dulac/polynomial.hpp"
#include "dulac/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dulac {

enum class Kind { Variable, Parameter, Constant, Sum, Product, Power, Quotient, Exp, Log };

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

class ExprNode {
  public:
    Kind kind;
    std::string name;        // Variable ("x1"/"x2") and Parameter
    Rational value;          // Constant
    std::vector<Expr> kids;  // Sum/Product: n-ary; Power/Exp/Log: 1; Quotient: 2
    long exponent = 0;       // Power, never 0

    ExprNode(Kind k, std::string n, Rational v, std::vector<Expr> c, long e)
        : kind(k), name(std::move(n)), value(std::move(v)), kids(std::move(c)), exponent(e) {}
};

// factories
Expr variable(int i);                    // 1 or 2
Expr variable(const std::string& name);  // "x1" or "x2"
Expr parameter(const std::string& name);
Expr constant(const Rational& v);
Expr constant(long v);
Expr sum(std::vector<Expr> kids);
Expr product(std::vector<Expr> kids);
Expr power(const Expr& base, long exponent);
Expr quotient(const Expr& num, const Expr& den);
Expr make_exp(const Expr& arg);
Expr make_log(const Expr& arg);

Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);
Expr neg(const Expr& a);

bool is_constant_value(const Expr& e, const Rational& v);
std::optional<Rational> constant_of(const Expr& e);

// parsing and printing
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& msg)
        : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

Expr parse_expr(std::string_view text);
std::string print_expr(const Expr& e);

// structural traversal
bool mentions(const Expr& e, const std::string& name);  // true if the symbol occurs in the tree
void collect_symbols(const Expr& e, std::map<std::string, bool>& vars_out,
                     std::map<std::string, bool>& params_out);

// calculus and rewriting
Expr differentiate(const Expr& e, const std::string& var);
Expr substitute(const Expr& e, const std::string& name, const Expr& replacement);
Expr normalize(const Expr& e);

// rational form
struct AtomInfo {
    Kind kind;  // Exp or Log
    Expr arg;   // normalized argument
};

struct RationalForm {
    Poly num;
    Poly den;  // canonical: coprime integer coefficients, positive leading coefficient
    std::map<std::string, AtomInfo> atoms;

    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return den.is_constant() && atoms.empty(); }
};

struct DomainError : std::runtime_error {
    std::string subterm;
    DomainError(const std::string& msg, std::string sub)
        : std::runtime_error(msg + ": " + sub), subterm(std::move(sub)) {}
};

RationalForm to_rational_form(const Expr& e);  // throws DomainError on literal zero denominators
Expr to_expr(const RationalForm& rf);

RationalForm rf_add(const RationalForm& a, const RationalForm& b);
RationalForm rf_sub(const RationalForm& a, const RationalForm& b);
RationalForm rf_mul(const RationalForm& a, const RationalForm& b);
RationalForm rf_div(const RationalForm& a, const RationalForm& b);
RationalForm rf_from_rational(const Rational& v);

// zero test: exact for atom-free forms, sampled otherwise
struct ZeroTest {
    bool zero = false;
    bool probabilistic = false;  // true when the verdict rests on samples only
};

ZeroTest is_identically_zero(const Expr& e, const ParamEnv& env, std::uint64_t seed = 0,
                             int samples = 64);

// evaluation
struct PointEval {
    std::optional<Rational> exact;  // set when no exp/log on the evaluation path
    Interval enclosure;             // always valid
};

// throws DomainError at poles and nonpositive log arguments
PointEval eval_point(const Expr& e, const Rational& x1, const Rational& x2,
                     const std::map<std::string, Rational>& params);

IntervalResult eval_interval(const Expr& e, const Interval& x1, const Interval& x2,
                             const std::map<std::string, Interval>& params);

} // namespace dulac
