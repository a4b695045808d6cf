#include "dulac/polynomial.hpp"

#include <algorithm>
#include <cassert>

namespace dulac {

int var_class(const std::string& name) {
    if (name == "x1") return 0;
    if (name == "x2") return 1;
    if (name.rfind("exp(", 0) == 0 || name.rfind("log(", 0) == 0) return 3;
    return 2;
}

bool var_less(const std::string& a, const std::string& b) {
    int ca = var_class(a), cb = var_class(b);
    if (ca != cb) return ca < cb;
    return a < b;
}

long Monomial::total_degree() const {
    long d = 0;
    for (auto& [v, e] : factors) d += e;
    return d;
}

long Monomial::degree_in(const std::string& v) const {
    for (auto& [name, e] : factors)
        if (name == v) return e;
    return 0;
}

bool Monomial::divides(const Monomial& other) const {
    for (auto& [v, e] : factors)
        if (other.degree_in(v) < e) return false;
    return true;
}

Monomial Monomial::times(const Monomial& other) const {
    Monomial r;
    auto it = factors.begin();
    auto jt = other.factors.begin();
    while (it != factors.end() || jt != other.factors.end()) {
        if (jt == other.factors.end() || (it != factors.end() && var_less(it->first, jt->first))) {
            r.factors.push_back(*it++);
        } else if (it == factors.end() || var_less(jt->first, it->first)) {
            r.factors.push_back(*jt++);
        } else {
            r.factors.emplace_back(it->first, it->second + jt->second);
            ++it;
            ++jt;
        }
    }
    return r;
}

Monomial Monomial::divided_by(const Monomial& other) const {
    Monomial r;
    for (auto& [v, e] : factors) {
        long d = e - other.degree_in(v);
        assert(d >= 0);
        if (d > 0) r.factors.emplace_back(v, d);
    }
    return r;
}

bool Monomial::operator<(const Monomial& other) const {
    long da = total_degree(), db = other.total_degree();
    if (da != db) return da < db;
    // lexicographic on the ranked variable sequence; higher exponent on the
    // earliest variable makes the monomial larger
    auto it = factors.begin();
    auto jt = other.factors.begin();
    while (it != factors.end() && jt != other.factors.end()) {
        if (it->first == jt->first) {
            if (it->second != jt->second) return it->second < jt->second;
            ++it;
            ++jt;
            continue;
        }
        // the one holding the earlier-ranked variable is larger
        return var_less(jt->first, it->first);
    }
    if (it == factors.end() && jt == other.factors.end()) return false;
    return jt != other.factors.end();
}

Poly::Poly(Rational c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

Poly Poly::variable(const std::string& name, long exp) {
    Poly p;
    assert(exp > 0);
    Monomial m;
    m.factors.emplace_back(name, exp);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.factors.empty());
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    assert(is_constant());
    return terms_.begin()->second;
}

void Poly::set_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) terms_.erase(m);
    else terms_[m] = c;
}

long Poly::total_degree() const {
    long d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

long Poly::degree_in(const std::string& v) const {
    long d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
    return d;
}

std::set<std::string> Poly::vars() const {
    std::set<std::string> out;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m.factors) out.insert(v);
    return out;
}

Poly Poly::coeff_of(const std::string& v, long k) const {
    Poly out;
    for (auto& [m, c] : terms_) {
        if (m.degree_in(v) != k) continue;
        Monomial rest;
        for (auto& [name, e] : m.factors)
            if (name != v) rest.factors.emplace_back(name, e);
        out.terms_[rest] += c;
        if (out.terms_[rest].is_zero()) out.terms_.erase(rest);
    }
    return out;
}

std::pair<Monomial, Rational> Poly::leading() const {
    assert(!terms_.empty());
    auto it = terms_.rbegin();
    return {it->first, it->second};
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a.terms()) {
        for (auto& [mb, cb] : b.terms()) {
            Monomial m = ma.times(mb);
            Rational c = ca * cb;
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                if (!c.is_zero()) r.terms_.emplace(std::move(m), std::move(c));
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

Poly Poly::pow(long n) const {
    assert(n >= 0);
    Poly r(Rational(1));
    Poly base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

Rational Poly::eval(const std::map<std::string, Rational>& point) const {
    Rational acc(0);
    for (auto& [m, c] : terms_) {
        Rational t = c;
        for (auto& [v, e] : m.factors) {
            auto it = point.find(v);
            assert(it != point.end());
            Rational p(1);
            Rational base = it->second;
            for (long k = 0; k < e; ++k) p *= base;
            t *= p;
        }
        acc += t;
    }
    return acc;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!s.empty()) s += " + ";
        s += to_string(it->second);
        for (auto& [v, e] : it->first.factors) {
            s += "*" + v;
            if (e != 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
    assert(!b.is_zero());
    Poly q;
    Poly r = a;
    auto [mb, cb] = b.is_zero() ? std::pair<Monomial, Rational>{} : b.leading();
    while (!r.is_zero()) {
        auto [mr, cr] = r.leading();
        if (!mb.divides(mr)) return std::nullopt;
        Poly t;
        t.set_term(mr.divided_by(mb), cr / cb);
        q += t;
        r -= t * b;
    }
    return q;
}

namespace {

std::optional<std::string> pick_main_var(const Poly& a, const Poly& b) {
    auto va = a.vars();
    auto vb = b.vars();
    std::optional<std::string> best;
    for (auto& v : va) {
        if (!vb.count(v)) continue;
        if (!best || var_less(v, *best)) best = v;
    }
    return best;
}

// gcd of the coefficient polynomials of a viewed in v
Poly content_in(const Poly& a, const std::string& v) {
    Poly g;
    long d = a.degree_in(v);
    for (long k = 0; k <= d; ++k) {
        Poly c = a.coeff_of(v, k);
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) return Poly(Rational(1));
    }
    return g;
}

// iterative pseudo-remainder of a by b in v (extra lc(b) factors are fine,
// callers take primitive parts); rational content is stripped every step or
// the coefficient integers double in size per iteration
Poly pseudo_rem(Poly a, const Poly& b, const std::string& v) {
    long db = b.degree_in(v);
    Poly lcb = b.coeff_of(v, db);
    int guard = 0;
    while (!a.is_zero() && a.degree_in(v) >= db) {
        long da = a.degree_in(v);
        Poly lca = a.coeff_of(v, da);
        Poly shift;
        if (da - db > 0)
            shift = Poly::variable(v, da - db);
        else
            shift = Poly(Rational(1));
        a = a * lcb - lca * shift * b;
        if (!a.is_zero()) a = integer_primitive(a).second;
        assert(++guard < 10000);
    }
    return a;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return Poly(Rational(1));

    auto main = pick_main_var(a, b);
    if (!main) {
        // no shared variable: a common factor must divide all coefficients of
        // each, i.e. the contents in any of their own variables
        std::string va = *a.vars().begin();
        return poly_gcd(content_in(a, va), b);
    }
    const std::string& v = *main;

    Poly ca = content_in(a, v);
    Poly cb = content_in(b, v);
    Poly ppa = *exact_div(a, ca);
    Poly ppb = *exact_div(b, cb);
    Poly c = poly_gcd(ca, cb);

    Poly u = integer_primitive(ppa).second, w = integer_primitive(ppb).second;
    if (u.degree_in(v) < w.degree_in(v)) std::swap(u, w);
    while (!w.is_zero() && w.degree_in(v) > 0) {
        Poly r = pseudo_rem(u, w, v);
        u = w;
        if (r.is_zero()) {
            w = Poly();
        } else {
            w = integer_primitive(*exact_div(r, content_in(r, v))).second;
        }
    }
    if (w.is_zero()) {
        Poly g = *exact_div(u, content_in(u, v));
        return c * g;
    }
    return c; // coprime in v
}

std::pair<Rational, Poly> integer_primitive(const Poly& a) {
    if (a.is_zero()) return {Rational(1), a};
    BigInt num_gcd = 0;
    BigInt den_lcm = 1;
    for (auto& [m, c] : a.terms()) {
        num_gcd = gcd(num_gcd, numerator(c) < 0 ? BigInt(-numerator(c)) : numerator(c));
        den_lcm = lcm(den_lcm, denominator(c));
    }
    Rational content(num_gcd, den_lcm);
    if (a.leading().second < 0) content = -content;
    Poly p;
    for (auto& [m, c] : a.terms()) p.set_term(m, c / content);
    return {content, p};
}

} // namespace dulac
