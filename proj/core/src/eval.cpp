#include "dulac/expr.hpp"

namespace dulac {

namespace {

struct PointCtx {
    const Rational& x1;
    const Rational& x2;
    const std::map<std::string, Rational>& params;
};

PointEval ev(const Expr& e, const PointCtx& ctx) {
    switch (e->kind) {
    case Kind::Constant:
        return {e->value, from_rational(e->value)};
    case Kind::Variable: {
        const Rational& v = e->name == "x1" ? ctx.x1 : ctx.x2;
        return {v, from_rational(v)};
    }
    case Kind::Parameter: {
        auto it = ctx.params.find(e->name);
        if (it == ctx.params.end())
            throw DomainError("undeclared parameter", e->name);
        return {it->second, from_rational(it->second)};
    }
    case Kind::Sum: {
        Rational acc(0);
        Interval iv = Interval::point(0.0);
        bool exact = true;
        for (const auto& k : e->kids) {
            PointEval kv = ev(k, ctx);
            iv = iv + kv.enclosure;
            if (exact && kv.exact) acc += *kv.exact;
            else exact = false;
        }
        if (exact) return {acc, from_rational(acc)};
        return {std::nullopt, iv};
    }
    case Kind::Product: {
        Rational acc(1);
        Interval iv = Interval::point(1.0);
        bool exact = true;
        for (const auto& k : e->kids) {
            PointEval kv = ev(k, ctx);
            iv = iv * kv.enclosure;
            if (exact && kv.exact) acc *= *kv.exact;
            else exact = false;
        }
        if (exact) return {acc, from_rational(acc)};
        return {std::nullopt, iv};
    }
    case Kind::Power: {
        PointEval b = ev(e->kids[0], ctx);
        long n = e->exponent;
        if (b.exact) {
            if (*b.exact == 0 && n < 0)
                throw DomainError("division by zero", print_expr(e));
            Rational base = n > 0 ? *b.exact : Rational(1) / *b.exact;
            Rational r(1);
            for (long i = 0, m = n > 0 ? n : -n; i < m; ++i) r *= base;
            return {r, from_rational(r)};
        }
        Interval p = pow_int(b.enclosure, n > 0 ? n : -n);
        if (n > 0) return {std::nullopt, p};
        IntervalResult q = div(Interval::point(1.0), p);
        if (!q.ok()) throw DomainError("possible division by zero", print_expr(e));
        return {std::nullopt, q.value};
    }
    case Kind::Quotient: {
        PointEval a = ev(e->kids[0], ctx);
        PointEval b = ev(e->kids[1], ctx);
        if (a.exact && b.exact) {
            if (*b.exact == 0) throw DomainError("division by zero", print_expr(e));
            Rational r = *a.exact / *b.exact;
            return {r, from_rational(r)};
        }
        IntervalResult q = div(a.enclosure, b.enclosure);
        if (!q.ok()) throw DomainError("possible division by zero", print_expr(e));
        return {std::nullopt, q.value};
    }
    case Kind::Exp: {
        PointEval a = ev(e->kids[0], ctx);
        return {std::nullopt, exp(a.enclosure)};
    }
    case Kind::Log: {
        PointEval a = ev(e->kids[0], ctx);
        if (a.exact && *a.exact <= 0)
            throw DomainError("log of a nonpositive value", print_expr(e));
        IntervalResult r = log(a.enclosure);
        if (!r.ok()) throw DomainError("possible log of a nonpositive value", print_expr(e));
        return {std::nullopt, r.value};
    }
    }
    throw DomainError("unreachable", print_expr(e));
}

struct BoxCtx {
    const Interval& x1;
    const Interval& x2;
    const std::map<std::string, Interval>& params;
};

IntervalResult evi(const Expr& e, const BoxCtx& ctx) {
    switch (e->kind) {
    case Kind::Constant:
        return IntervalResult::of(from_rational(e->value));
    case Kind::Variable:
        return IntervalResult::of(e->name == "x1" ? ctx.x1 : ctx.x2);
    case Kind::Parameter: {
        auto it = ctx.params.find(e->name);
        if (it == ctx.params.end())
            throw DomainError("undeclared parameter", e->name);
        return IntervalResult::of(it->second);
    }
    case Kind::Sum: {
        Interval acc = Interval::point(0.0);
        for (const auto& k : e->kids) {
            IntervalResult kv = evi(k, ctx);
            if (!kv.ok()) return kv;
            acc = acc + kv.value;
        }
        return IntervalResult::of(acc);
    }
    case Kind::Product: {
        Interval acc = Interval::point(1.0);
        for (const auto& k : e->kids) {
            IntervalResult kv = evi(k, ctx);
            if (!kv.ok()) return kv;
            acc = acc * kv.value;
        }
        return IntervalResult::of(acc);
    }
    case Kind::Power: {
        IntervalResult b = evi(e->kids[0], ctx);
        if (!b.ok()) return b;
        long n = e->exponent;
        Interval p = pow_int(b.value, n > 0 ? n : -n);
        if (n > 0) return IntervalResult::of(p);
        return div(Interval::point(1.0), p);
    }
    case Kind::Quotient: {
        IntervalResult a = evi(e->kids[0], ctx);
        if (!a.ok()) return a;
        IntervalResult b = evi(e->kids[1], ctx);
        if (!b.ok()) return b;
        return div(a.value, b.value);
    }
    case Kind::Exp: {
        IntervalResult a = evi(e->kids[0], ctx);
        if (!a.ok()) return a;
        return IntervalResult::of(exp(a.value));
    }
    case Kind::Log: {
        IntervalResult a = evi(e->kids[0], ctx);
        if (!a.ok()) return a;
        return log(a.value);
    }
    }
    return IntervalResult::fail(EvalStatus::PossibleDivisionByZero);
}

} // namespace

PointEval eval_point(const Expr& e, const Rational& x1, const Rational& x2,
                     const std::map<std::string, Rational>& params) {
    return ev(e, PointCtx{x1, x2, params});
}

IntervalResult eval_interval(const Expr& e, const Interval& x1, const Interval& x2,
                             const std::map<std::string, Interval>& params) {
    return evi(e, BoxCtx{x1, x2, params});
}

} // namespace dulac
