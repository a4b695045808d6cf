#include "dulac/expr.hpp"

#include "dulac/rng.hpp"

#include <algorithm>
#include <cassert>

namespace dulac {

static Expr node(Kind k, std::string n, Rational v, std::vector<Expr> kids, long e) {
    return std::make_shared<ExprNode>(k, std::move(n), std::move(v), std::move(kids), e);
}

Expr variable(int i) {
    assert(i == 1 || i == 2);
    return node(Kind::Variable, i == 1 ? "x1" : "x2", Rational(0), {}, 0);
}

Expr variable(const std::string& name) {
    assert(name == "x1" || name == "x2");
    return node(Kind::Variable, name, Rational(0), {}, 0);
}

Expr parameter(const std::string& name) {
    return node(Kind::Parameter, name, Rational(0), {}, 0);
}

Expr constant(const Rational& v) { return node(Kind::Constant, "", v, {}, 0); }
Expr constant(long v) { return constant(Rational(v)); }

std::optional<Rational> constant_of(const Expr& e) {
    if (e->kind == Kind::Constant) return e->value;
    return std::nullopt;
}

bool is_constant_value(const Expr& e, const Rational& v) {
    return e->kind == Kind::Constant && e->value == v;
}

Expr sum(std::vector<Expr> kids) {
    std::vector<Expr> flat;
    Rational c(0);
    for (auto& k : kids) {
        if (k->kind == Kind::Sum) {
            for (auto& kk : k->kids) {
                if (kk->kind == Kind::Constant) c += kk->value;
                else flat.push_back(kk);
            }
        } else if (k->kind == Kind::Constant) {
            c += k->value;
        } else {
            flat.push_back(k);
        }
    }
    if (c != 0 || flat.empty()) flat.push_back(constant(c));
    if (flat.size() == 1) return flat[0];
    return node(Kind::Sum, "", Rational(0), std::move(flat), 0);
}

Expr product(std::vector<Expr> kids) {
    std::vector<Expr> flat;
    Rational c(1);
    for (auto& k : kids) {
        if (k->kind == Kind::Product) {
            for (auto& kk : k->kids) {
                if (kk->kind == Kind::Constant) c *= kk->value;
                else flat.push_back(kk);
            }
        } else if (k->kind == Kind::Constant) {
            c *= k->value;
        } else {
            flat.push_back(k);
        }
    }
    if (c == 0 || flat.empty()) return constant(c);
    if (c != 1) flat.insert(flat.begin(), constant(c));
    if (flat.size() == 1) return flat[0];
    return node(Kind::Product, "", Rational(0), std::move(flat), 0);
}

Expr power(const Expr& base, long exponent) {
    if (exponent == 0) return constant(1);
    if (exponent == 1) return base;
    if (base->kind == Kind::Constant) {
        if (base->value == 0 && exponent < 0)
            throw DomainError("division by zero", print_expr(base) + "^" + std::to_string(exponent));
        Rational b = exponent > 0 ? base->value : Rational(1) / base->value;
        long n = exponent > 0 ? exponent : -exponent;
        Rational r(1);
        for (long i = 0; i < n; ++i) r *= b;
        return constant(r);
    }
    if (base->kind == Kind::Power) return power(base->kids[0], base->exponent * exponent);
    return node(Kind::Power, "", Rational(0), {base}, exponent);
}

Expr quotient(const Expr& num, const Expr& den) {
    if (den->kind == Kind::Constant) {
        if (den->value == 0) throw DomainError("division by zero", print_expr(den));
        return product({num, constant(Rational(1) / den->value)});
    }
    if (num->kind == Kind::Constant && num->value == 0) return constant(0);
    return node(Kind::Quotient, "", Rational(0), {num, den}, 0);
}

Expr make_exp(const Expr& arg) {
    if (is_constant_value(arg, Rational(0))) return constant(1);
    return node(Kind::Exp, "", Rational(0), {arg}, 0);
}

Expr make_log(const Expr& arg) {
    if (is_constant_value(arg, Rational(1))) return constant(0);
    return node(Kind::Log, "", Rational(0), {arg}, 0);
}

Expr add(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr sub(const Expr& a, const Expr& b) { return sum({a, product({constant(-1), b})}); }
Expr mul(const Expr& a, const Expr& b) { return product({a, b}); }
Expr div(const Expr& a, const Expr& b) { return quotient(a, b); }
Expr neg(const Expr& a) { return product({constant(-1), a}); }

// printing
//
// precedence: sum 1, product/quotient 2, power 3, leaves 4; constants that
// are not nonnegative integers get 2 so they parenthesize as power bases

static int prec_of(const Expr& e) {
    switch (e->kind) {
    case Kind::Sum: return 1;
    case Kind::Product:
    case Kind::Quotient: return 2;
    case Kind::Power: return 3;
    case Kind::Constant:
        return (e->value >= 0 && denominator(e->value) == 1) ? 4 : 2;
    default: return 4;
    }
}

static void print_rec(const Expr& e, int min_prec, std::string& out);

// splits a leading minus off a term for sum printing
static bool negative_head(const Expr& e, Expr& positive) {
    if (e->kind == Kind::Constant && e->value < 0) {
        positive = constant(-e->value);
        return true;
    }
    if (e->kind == Kind::Product && e->kids[0]->kind == Kind::Constant &&
        e->kids[0]->value < 0) {
        std::vector<Expr> kids = e->kids;
        kids[0] = constant(-kids[0]->value);
        positive = product(std::move(kids));
        return true;
    }
    if (e->kind == Kind::Quotient) {
        Expr pnum;
        if (negative_head(e->kids[0], pnum)) {
            positive = quotient(pnum, e->kids[1]);
            return true;
        }
    }
    return false;
}

static void print_kind(const Expr& e, std::string& out) {
    switch (e->kind) {
    case Kind::Variable:
    case Kind::Parameter:
        out += e->name;
        break;
    case Kind::Constant:
        out += to_string(e->value);
        break;
    case Kind::Sum: {
        bool first = true;
        for (const auto& k : e->kids) {
            Expr pos;
            if (!first && negative_head(k, pos)) {
                out += " - ";
                print_rec(pos, 2, out);
            } else {
                if (!first) out += " + ";
                print_rec(k, first ? 1 : 2, out);
            }
            first = false;
        }
        break;
    }
    case Kind::Product: {
        std::size_t start = 0;
        if (e->kids[0]->kind == Kind::Constant && e->kids[0]->value == -1 &&
            e->kids.size() > 1) {
            out += "-";
            start = 1;
        }
        for (std::size_t i = start; i < e->kids.size(); ++i) {
            if (i > start) out += "*";
            print_rec(e->kids[i], 2, out);
        }
        break;
    }
    case Kind::Quotient:
        print_rec(e->kids[0], 2, out);
        out += "/";
        print_rec(e->kids[1], 3, out);
        break;
    case Kind::Power:
        print_rec(e->kids[0], 4, out);
        out += "^";
        out += std::to_string(e->exponent);
        break;
    case Kind::Exp:
        out += "exp(";
        print_rec(e->kids[0], 1, out);
        out += ")";
        break;
    case Kind::Log:
        out += "log(";
        print_rec(e->kids[0], 1, out);
        out += ")";
        break;
    }
}

static void print_rec(const Expr& e, int min_prec, std::string& out) {
    if (prec_of(e) < min_prec) {
        out += "(";
        print_kind(e, out);
        out += ")";
    } else {
        print_kind(e, out);
    }
}

std::string print_expr(const Expr& e) {
    std::string out;
    print_rec(e, 0, out);
    return out;
}

// traversal

bool mentions(const Expr& e, const std::string& name) {
    if ((e->kind == Kind::Variable || e->kind == Kind::Parameter) && e->name == name) return true;
    for (const auto& k : e->kids)
        if (mentions(k, name)) return true;
    return false;
}

void collect_symbols(const Expr& e, std::map<std::string, bool>& vars_out,
                     std::map<std::string, bool>& params_out) {
    if (e->kind == Kind::Variable) vars_out[e->name] = true;
    if (e->kind == Kind::Parameter) params_out[e->name] = true;
    for (const auto& k : e->kids) collect_symbols(k, vars_out, params_out);
}

// calculus

static Expr diff_rec(const Expr& e, const std::string& var) {
    switch (e->kind) {
    case Kind::Variable:
        return constant(e->name == var ? 1 : 0);
    case Kind::Parameter:
    case Kind::Constant:
        return constant(0);
    case Kind::Sum: {
        std::vector<Expr> parts;
        for (const auto& k : e->kids) parts.push_back(diff_rec(k, var));
        return sum(std::move(parts));
    }
    case Kind::Product: {
        std::vector<Expr> parts;
        for (std::size_t i = 0; i < e->kids.size(); ++i) {
            std::vector<Expr> term = e->kids;
            term[i] = diff_rec(e->kids[i], var);
            parts.push_back(product(std::move(term)));
        }
        return sum(std::move(parts));
    }
    case Kind::Power: {
        Expr db = diff_rec(e->kids[0], var);
        return product({constant(e->exponent), power(e->kids[0], e->exponent - 1), db});
    }
    case Kind::Quotient: {
        const Expr& a = e->kids[0];
        const Expr& b = e->kids[1];
        Expr da = diff_rec(a, var);
        Expr db = diff_rec(b, var);
        Expr num = sub(mul(da, b), mul(a, db));
        return quotient(num, power(b, 2));
    }
    case Kind::Exp:
        return mul(e, diff_rec(e->kids[0], var));
    case Kind::Log:
        return quotient(diff_rec(e->kids[0], var), e->kids[0]);
    }
    return constant(0);
}

Expr differentiate(const Expr& e, const std::string& var) {
    return normalize(diff_rec(e, var));
}

Expr substitute(const Expr& e, const std::string& name, const Expr& replacement) {
    if ((e->kind == Kind::Variable || e->kind == Kind::Parameter) && e->name == name)
        return replacement;
    switch (e->kind) {
    case Kind::Variable:
    case Kind::Parameter:
    case Kind::Constant:
        return e;
    case Kind::Sum:
    case Kind::Product: {
        std::vector<Expr> kids;
        for (const auto& k : e->kids) kids.push_back(substitute(k, name, replacement));
        return e->kind == Kind::Sum ? sum(std::move(kids)) : product(std::move(kids));
    }
    case Kind::Power:
        return power(substitute(e->kids[0], name, replacement), e->exponent);
    case Kind::Quotient:
        return quotient(substitute(e->kids[0], name, replacement),
                        substitute(e->kids[1], name, replacement));
    case Kind::Exp:
        return make_exp(substitute(e->kids[0], name, replacement));
    case Kind::Log:
        return make_log(substitute(e->kids[0], name, replacement));
    }
    return e;
}

// rational form

RationalForm rf_from_rational(const Rational& v) {
    return RationalForm{Poly(v), Poly(Rational(1)), {}};
}

static void merge_atom_tables(std::map<std::string, AtomInfo>& into,
                              const std::map<std::string, AtomInfo>& from) {
    for (const auto& [k, v] : from) into.emplace(k, v);
}

// rewrites every monomial so it carries at most one exp factor, first power;
// exp(a)^i * exp(b)^j -> exp(i*a + j*b) with a freshly normalized argument
static Poly merge_exp_factors(const Poly& p, std::map<std::string, AtomInfo>& atoms) {
    bool any = false;
    for (const auto& [m, c] : p.terms()) {
        int exps = 0;
        for (const auto& [name, e] : m.factors)
            if (name.rfind("exp(", 0) == 0) exps += (e == 1) ? 1 : 2;
        if (exps > 1) { any = true; break; }
    }
    if (!any) return p;

    Poly out;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Expr> arg_terms;
        Monomial rest;
        for (const auto& [name, e] : m.factors) {
            if (name.rfind("exp(", 0) == 0) {
                arg_terms.push_back(product({constant(e), atoms.at(name).arg}));
            } else {
                rest.factors.emplace_back(name, e);
            }
        }
        if (!arg_terms.empty()) {
            Expr combined = normalize(sum(std::move(arg_terms)));
            if (!is_constant_value(combined, Rational(0))) {
                Expr atom = make_exp(combined);
                std::string key = print_expr(atom);
                atoms.emplace(key, AtomInfo{Kind::Exp, combined});
                // keep factors sorted
                Monomial with;
                bool placed = false;
                for (const auto& f : rest.factors) {
                    if (!placed && var_less(key, f.first)) {
                        with.factors.emplace_back(key, 1);
                        placed = true;
                    }
                    with.factors.push_back(f);
                }
                if (!placed) with.factors.emplace_back(key, 1);
                rest = std::move(with);
            }
        }
        Poly term;
        term.set_term(rest, c);
        out += term;
    }
    return out;
}

static void canonicalize(RationalForm& rf) {
    rf.num = merge_exp_factors(rf.num, rf.atoms);
    rf.den = merge_exp_factors(rf.den, rf.atoms);
    if (rf.num.is_zero()) {
        rf.den = Poly(Rational(1));
        rf.atoms.clear();
        return;
    }
    Poly g = poly_gcd(rf.num, rf.den);
    if (!g.is_constant()) {
        auto n = exact_div(rf.num, g);
        auto d = exact_div(rf.den, g);
        assert(n && d);
        rf.num = *n;
        rf.den = *d;
    }
    auto [scale, den_prim] = integer_primitive(rf.den);
    rf.den = den_prim;
    rf.num = rf.num * Poly(Rational(1) / scale);
    // drop atoms no longer used
    std::set<std::string> used;
    for (const auto& [m, c] : rf.num.terms())
        for (const auto& [name, e] : m.factors) used.insert(name);
    for (const auto& [m, c] : rf.den.terms())
        for (const auto& [name, e] : m.factors) used.insert(name);
    for (auto it = rf.atoms.begin(); it != rf.atoms.end();) {
        if (var_class(it->first) == 3 && !used.count(it->first)) it = rf.atoms.erase(it);
        else ++it;
    }
}

RationalForm rf_add(const RationalForm& a, const RationalForm& b) {
    RationalForm r;
    r.num = a.num * b.den + b.num * a.den;
    r.den = a.den * b.den;
    r.atoms = a.atoms;
    merge_atom_tables(r.atoms, b.atoms);
    canonicalize(r);
    return r;
}

RationalForm rf_sub(const RationalForm& a, const RationalForm& b) {
    RationalForm nb = b;
    nb.num = -b.num;
    return rf_add(a, nb);
}

RationalForm rf_mul(const RationalForm& a, const RationalForm& b) {
    RationalForm r;
    r.num = a.num * b.num;
    r.den = a.den * b.den;
    r.atoms = a.atoms;
    merge_atom_tables(r.atoms, b.atoms);
    canonicalize(r);
    return r;
}

RationalForm rf_div(const RationalForm& a, const RationalForm& b) {
    if (b.num.is_zero()) throw DomainError("division by zero", print_expr(to_expr(b)));
    RationalForm r;
    r.num = a.num * b.den;
    r.den = a.den * b.num;
    r.atoms = a.atoms;
    merge_atom_tables(r.atoms, b.atoms);
    canonicalize(r);
    return r;
}

static RationalForm rf_pow(const RationalForm& a, long n) {
    if (n == 0) return rf_from_rational(Rational(1));
    if (n < 0) {
        if (a.num.is_zero()) throw DomainError("division by zero", print_expr(to_expr(a)));
        RationalForm inv{a.den, a.num, a.atoms};
        canonicalize(inv);
        return rf_pow(inv, -n);
    }
    RationalForm r;
    r.num = a.num.pow(n);
    r.den = a.den.pow(n);
    r.atoms = a.atoms;
    canonicalize(r);
    return r;
}

RationalForm to_rational_form(const Expr& e) {
    switch (e->kind) {
    case Kind::Constant:
        return rf_from_rational(e->value);
    case Kind::Variable:
    case Kind::Parameter:
        return RationalForm{Poly::variable(e->name), Poly(Rational(1)), {}};
    case Kind::Sum: {
        RationalForm r = rf_from_rational(Rational(0));
        for (const auto& k : e->kids) r = rf_add(r, to_rational_form(k));
        return r;
    }
    case Kind::Product: {
        RationalForm r = rf_from_rational(Rational(1));
        for (const auto& k : e->kids) r = rf_mul(r, to_rational_form(k));
        return r;
    }
    case Kind::Power:
        return rf_pow(to_rational_form(e->kids[0]), e->exponent);
    case Kind::Quotient:
        return rf_div(to_rational_form(e->kids[0]), to_rational_form(e->kids[1]));
    case Kind::Exp: {
        Expr arg = normalize(e->kids[0]);
        if (is_constant_value(arg, Rational(0))) return rf_from_rational(Rational(1));
        Expr atom = make_exp(arg);
        std::string key = print_expr(atom);
        RationalForm r{Poly::variable(key), Poly(Rational(1)), {}};
        r.atoms.emplace(key, AtomInfo{Kind::Exp, arg});
        return r;
    }
    case Kind::Log: {
        Expr arg = normalize(e->kids[0]);
        if (is_constant_value(arg, Rational(1))) return rf_from_rational(Rational(0));
        Expr atom = make_log(arg);
        std::string key = print_expr(atom);
        RationalForm r{Poly::variable(key), Poly(Rational(1)), {}};
        r.atoms.emplace(key, AtomInfo{Kind::Log, arg});
        return r;
    }
    }
    return rf_from_rational(Rational(0));
}

static Expr factor_to_expr(const std::string& name, long e,
                           const std::map<std::string, AtomInfo>& atoms) {
    Expr base;
    int cls = var_class(name);
    if (cls == 0 || cls == 1) {
        base = variable(name);
    } else if (cls == 2) {
        base = parameter(name);
    } else {
        const AtomInfo& a = atoms.at(name);
        base = a.kind == Kind::Exp ? make_exp(a.arg) : make_log(a.arg);
    }
    return power(base, e);
}

static Expr poly_to_expr(const Poly& p, const std::map<std::string, AtomInfo>& atoms) {
    if (p.is_zero()) return constant(0);
    std::vector<Expr> terms;
    const auto& t = p.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const auto& [m, c] = *it;
        std::vector<Expr> factors;
        factors.push_back(constant(c));
        // parameters read as coefficients, so they print before the variables
        for (const auto& [name, e] : m.factors)
            if (var_class(name) == 2) factors.push_back(factor_to_expr(name, e, atoms));
        for (const auto& [name, e] : m.factors)
            if (var_class(name) != 2) factors.push_back(factor_to_expr(name, e, atoms));
        terms.push_back(product(std::move(factors)));
    }
    return sum(std::move(terms));
}

Expr to_expr(const RationalForm& rf) {
    Expr num = poly_to_expr(rf.num, rf.atoms);
    if (rf.den.is_constant()) {
        assert(rf.den.constant_value() == 1);
        return num;
    }
    Expr den = poly_to_expr(rf.den, rf.atoms);
    return node(Kind::Quotient, "", Rational(0), {num, den}, 0);
}

Expr normalize(const Expr& e) { return to_expr(to_rational_form(e)); }

// zero test

ZeroTest is_identically_zero(const Expr& e, const ParamEnv& env, std::uint64_t seed,
                             int samples) {
    RationalForm rf = to_rational_form(e);
    if (rf.num.is_zero()) return {true, false};
    if (rf.atoms.empty()) return {false, false};

    // atoms present: sample the numerator at exact points, enclosures decide
    Expr num = to_expr(RationalForm{rf.num, Poly(Rational(1)), rf.atoms});
    Rng rng(seed ^ 0x5eedf00dull);
    const Rational lo(1, 8), hi(4);
    int done = 0, attempts = 0;
    while (done < samples && attempts < samples * 4) {
        ++attempts;
        Rational p1 = rng.rational_in(lo, hi);
        Rational p2 = rng.rational_in(lo, hi);
        std::map<std::string, Rational> pv;
        for (const auto& [name, info] : env.params)
            pv[name] = info.lo == info.hi ? info.lo : rng.rational_in(info.lo, info.hi);
        try {
            PointEval v = eval_point(num, p1, p2, pv);
            if (v.exact) {
                if (*v.exact != 0) return {false, false};
            } else if (!v.enclosure.contains_zero()) {
                return {false, false};
            }
            ++done;
        } catch (const DomainError&) {
            // point outside the domain, try another
        }
    }
    if (done == 0) return {false, true};
    return {true, true};
}

} // namespace dulac
