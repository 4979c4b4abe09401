#include "invlag/poly.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace invlag
{

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Var v, std::uint32_t e)
{
    Monomial m;
    if (e > 0)
        m.powers_.push_back({v, e});
    return m;
}

std::uint32_t Monomial::degree(Var v) const
{
    for (const auto &p : powers_) {
        if (p.var == v)
            return p.exp;
        if (p.var > v)
            break;
    }
    return 0;
}

std::uint32_t Monomial::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto &p : powers_)
        d += p.exp;
    return d;
}

Monomial Monomial::operator*(const Monomial &o) const
{
    Monomial r;
    r.powers_.reserve(powers_.size() + o.powers_.size());
    std::size_t i = 0, j = 0;
    while (i < powers_.size() && j < o.powers_.size()) {
        if (powers_[i].var == o.powers_[j].var) {
            r.powers_.push_back({powers_[i].var, powers_[i].exp + o.powers_[j].exp});
            ++i;
            ++j;
        } else if (powers_[i].var < o.powers_[j].var) {
            r.powers_.push_back(powers_[i++]);
        } else {
            r.powers_.push_back(o.powers_[j++]);
        }
    }
    for (; i < powers_.size(); ++i)
        r.powers_.push_back(powers_[i]);
    for (; j < o.powers_.size(); ++j)
        r.powers_.push_back(o.powers_[j]);
    return r;
}

std::optional<Monomial> Monomial::divide(const Monomial &o) const
{
    Monomial r;
    std::size_t i = 0;
    for (const auto &p : o.powers_) {
        while (i < powers_.size() && powers_[i].var < p.var)
            r.powers_.push_back(powers_[i++]);
        if (i == powers_.size() || powers_[i].var != p.var || powers_[i].exp < p.exp)
            return std::nullopt;
        if (powers_[i].exp > p.exp)
            r.powers_.push_back({p.var, powers_[i].exp - p.exp});
        ++i;
    }
    for (; i < powers_.size(); ++i)
        r.powers_.push_back(powers_[i]);
    return r;
}

Monomial Monomial::without(Var v) const
{
    Monomial r;
    r.powers_.reserve(powers_.size());
    for (const auto &p : powers_)
        if (p.var != v)
            r.powers_.push_back(p);
    return r;
}

Monomial Monomial::with_degree(Var v, std::uint32_t e) const
{
    Monomial r = without(v);
    if (e == 0)
        return r;
    auto it = std::lower_bound(r.powers_.begin(), r.powers_.end(), v,
                               [](const Power &p, Var x) { return p.var < x; });
    r.powers_.insert(it, {v, e});
    return r;
}

int compare(const Monomial &a, const Monomial &b)
{
    const auto &x = a.powers();
    const auto &y = b.powers();
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].var == y[j].var) {
            if (x[i].exp != y[j].exp)
                return x[i].exp > y[j].exp ? 1 : -1;
            ++i;
            ++j;
        } else {
            return x[i].var < y[j].var ? 1 : -1;
        }
    }
    if (i < x.size())
        return 1;
    if (j < y.size())
        return -1;
    return 0;
}

// -------------------------------------------------------------------- Poly

namespace
{

bool term_greater(const Poly::Term &a, const Poly::Term &b)
{
    return compare(a.mono, b.mono) > 0;
}

// Sorts and merges like terms, dropping zeros.
std::vector<Poly::Term> canonicalize(std::vector<Poly::Term> terms)
{
    std::sort(terms.begin(), terms.end(), term_greater);
    std::vector<Poly::Term> out;
    out.reserve(terms.size());
    for (auto &t : terms) {
        if (!out.empty() && out.back().mono == t.mono)
            out.back().coeff += t.coeff;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Poly::Term &t) { return t.coeff == 0; }),
              out.end());
    return out;
}

} // namespace

Poly::Poly(const Rational &c)
{
    if (c != 0)
        terms_.push_back({Monomial{}, c});
}

Poly Poly::variable(Var v)
{
    Poly p;
    p.terms_.push_back({Monomial::of(v), Rational(1)});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms)
{
    Poly p;
    p.terms_ = canonicalize(std::move(terms));
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty());
}

Rational Poly::constant_value() const
{
    assert(is_constant());
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

std::uint32_t Poly::degree(Var v) const
{
    std::uint32_t d = 0;
    for (const auto &t : terms_)
        d = std::max(d, t.mono.degree(v));
    return d;
}

std::uint32_t Poly::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto &t : terms_)
        d = std::max(d, t.mono.total_degree());
    return d;
}

std::vector<Var> Poly::variables() const
{
    std::vector<Var> vs;
    for (const auto &t : terms_)
        for (const auto &p : t.mono.powers())
            vs.push_back(p.var);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto &t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

Poly Poly::operator+(const Poly &o) const
{
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = compare(terms_[i].mono, o.terms_[j].mono);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Rational s = terms_[i].coeff + o.terms_[j].coeff;
            if (s != 0)
                r.terms_.push_back({terms_[i].mono, s});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i)
        r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j)
        r.terms_.push_back(o.terms_[j]);
    return r;
}

Poly Poly::operator-(const Poly &o) const { return *this + (-o); }

Poly Poly::operator*(const Poly &o) const
{
    if (is_zero() || o.is_zero())
        return {};
    if (o.is_constant())
        return scaled(o.constant_value());
    if (is_constant())
        return o.scaled(constant_value());
    std::vector<Term> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const auto &a : terms_)
        for (const auto &b : o.terms_)
            out.push_back({a.mono * b.mono, a.coeff * b.coeff});
    return from_terms(std::move(out));
}

Poly Poly::scaled(const Rational &c) const
{
    if (c == 0)
        return {};
    Poly r = *this;
    for (auto &t : r.terms_)
        t.coeff *= c;
    return r;
}

Poly Poly::times(const Monomial &m) const
{
    // Multiplying by a monomial preserves the order.
    Poly r = *this;
    for (auto &t : r.terms_)
        t.mono = t.mono * m;
    return r;
}

Poly Poly::pow(std::uint32_t e) const
{
    Poly result(Rational(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1u)
            result = result * base;
        e >>= 1u;
        if (e > 0)
            base = base * base;
    }
    return result;
}

Poly Poly::derivative(Var v) const
{
    std::vector<Term> out;
    for (const auto &t : terms_) {
        std::uint32_t e = t.mono.degree(v);
        if (e == 0)
            continue;
        out.push_back({t.mono.with_degree(v, e - 1), t.coeff * e});
    }
    return from_terms(std::move(out));
}

std::vector<Poly> Poly::coefficients_in(Var v) const
{
    std::vector<std::vector<Term>> buckets(degree(v) + 1);
    for (const auto &t : terms_)
        buckets[t.mono.degree(v)].push_back({t.mono.without(v), t.coeff});
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto &b : buckets)
        out.push_back(from_terms(std::move(b)));
    return out;
}

bool operator==(const Poly &a, const Poly &b)
{
    if (a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

// ------------------------------------------------------------- division/gcd

std::optional<Poly> divide_exact(const Poly &a, const Poly &b)
{
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    if (a.is_zero())
        return Poly{};
    if (b.is_constant())
        return a.scaled(1 / b.constant_value());
    std::vector<Poly::Term> quotient;
    Poly rem = a;
    const auto &lb = b.leading();
    while (!rem.is_zero()) {
        const auto &lr = rem.leading();
        auto m = lr.mono.divide(lb.mono);
        if (!m)
            return std::nullopt;
        Rational c = lr.coeff / lb.coeff;
        quotient.push_back({*m, c});
        rem = rem - b.times(*m).scaled(c);
    }
    return Poly::from_terms(std::move(quotient));
}

Poly monic(const Poly &p)
{
    if (p.is_zero())
        return p;
    return p.scaled(1 / p.leading().coeff);
}

namespace
{

Poly exact_quotient(const Poly &a, const Poly &b)
{
    auto q = divide_exact(a, b);
    if (!q)
        throw std::logic_error("internal: expected exact polynomial division");
    return *std::move(q);
}

// gcd of a polynomial with a monomial
Poly gcd_with_monomial(const Poly &p, const Monomial &m)
{
    std::vector<Power> common;
    for (const auto &pw : m.powers()) {
        std::uint32_t e = pw.exp;
        for (const auto &t : p.terms()) {
            e = std::min(e, t.mono.degree(pw.var));
            if (e == 0)
                break;
        }
        if (e > 0)
            common.push_back({pw.var, e});
    }
    Monomial g;
    for (const auto &pw : common)
        g = g * Monomial::of(pw.var, pw.exp);
    return Poly::from_terms({{g, Rational(1)}});
}

// Pseudo-remainder of a by b with respect to v, up to a non-zero factor
// free of v.
Poly pseudo_remainder(Poly a, const Poly &b, Var v)
{
    const std::uint32_t db = b.degree(v);
    const Poly lb = b.coefficients_in(v).back();
    while (!a.is_zero()) {
        std::uint32_t da = a.degree(v);
        if (da < db)
            break;
        Poly la = a.coefficients_in(v).back();
        a = a * lb - (b * la).times(Monomial::of(v, da - db));
    }
    return a;
}

Poly content_in(const Poly &p, Var v);

Poly primitive_part_in(const Poly &p, Var v)
{
    if (p.is_zero())
        return p;
    return exact_quotient(p, content_in(p, v));
}

} // namespace

Poly gcd(const Poly &a, const Poly &b)
{
    if (a.is_zero())
        return monic(b);
    if (b.is_zero())
        return monic(a);
    if (a.is_constant() || b.is_constant())
        return Poly(Rational(1));
    if (b.is_monomial())
        return gcd_with_monomial(a, b.leading().mono);
    if (a.is_monomial())
        return gcd_with_monomial(b, a.leading().mono);
    if (a == b)
        return monic(a);

    const auto va = a.variables();
    const auto vb = b.variables();
    // A variable present in only one argument can be projected away through
    // the content with respect to it.
    for (Var v : va)
        if (!std::binary_search(vb.begin(), vb.end(), v))
            return gcd(content_in(a, v), b);
    for (Var v : vb)
        if (!std::binary_search(va.begin(), va.end(), v))
            return gcd(a, content_in(b, v));

    // Same variable set: primitive PRS in the variable of lowest degree.
    Var x = va.front();
    std::uint32_t best = std::max(a.degree(x), b.degree(x));
    for (Var v : va) {
        std::uint32_t d = std::max(a.degree(v), b.degree(v));
        if (d < best) {
            best = d;
            x = v;
        }
    }
    const Poly ca = content_in(a, x);
    const Poly cb = content_in(b, x);
    const Poly c = gcd(ca, cb);
    Poly p = exact_quotient(a, ca);
    Poly r = exact_quotient(b, cb);
    if (p.degree(x) < r.degree(x))
        std::swap(p, r);
    while (true) {
        Poly rem = pseudo_remainder(p, r, x);
        if (rem.is_zero())
            break;
        if (rem.degree(x) == 0) {
            r = Poly(Rational(1));
            break;
        }
        p = std::move(r);
        r = primitive_part_in(rem, x);
    }
    return monic(c * primitive_part_in(r, x));
}

namespace
{

Poly content_in(const Poly &p, Var v)
{
    Poly g;
    for (const auto &c : p.coefficients_in(v)) {
        if (c.is_zero())
            continue;
        g = gcd(g, c);
        if (g.is_constant())
            return Poly(Rational(1));
    }
    return g.is_zero() ? Poly(Rational(1)) : g;
}

} // namespace

} // namespace invlag
