#include "invlag/expr.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace invlag
{

namespace
{

constexpr unsigned kind_shift = 28;
constexpr unsigned order_shift = 20;
constexpr Var index_mask = (Var{1} << order_shift) - 1;

// Append-only table of parameter names; the id is the key payload.
class ParameterTable
{
public:
    Var intern(const std::string &name)
    {
        std::lock_guard lock(mutex_);
        auto it = ids_.find(name);
        if (it != ids_.end())
            return it->second;
        Var id = static_cast<Var>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, id);
        return id;
    }
    std::string name(Var id)
    {
        std::lock_guard lock(mutex_);
        return names_.at(id);
    }

private:
    std::mutex mutex_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, Var> ids_;
};

ParameterTable &parameters()
{
    static ParameterTable table;
    return table;
}

} // namespace

Var VarId::key() const
{
    Var payload = kind == VarKind::parameter ? parameters().intern(name) : static_cast<Var>(index);
    return (static_cast<Var>(kind) << kind_shift) | (static_cast<Var>(order) << order_shift) | payload;
}

VarId VarId::from_key(Var key)
{
    auto kind = static_cast<VarKind>(key >> kind_shift);
    int order = static_cast<int>((key >> order_shift) & 0xFF);
    Var payload = key & index_mask;
    if (kind == VarKind::parameter)
        return param(parameters().name(payload));
    return {kind, static_cast<int>(payload), order, {}};
}

std::string VarId::to_string() const
{
    switch (kind) {
    case VarKind::parameter:
        return name;
    case VarKind::time:
        return "t";
    case VarKind::position:
        return "q" + std::to_string(index);
    case VarKind::jet:
        if (order == 1)
            return "v" + std::to_string(index);
        return "d" + std::to_string(order) + "q" + std::to_string(index);
    }
    return "?";
}

bool ExprContext::admits(const VarId &v) const
{
    switch (v.kind) {
    case VarKind::parameter:
        return std::find(parameters.begin(), parameters.end(), v.name) != parameters.end();
    case VarKind::time:
        return uses_time;
    case VarKind::position:
        return v.index >= 1 && v.index <= n && v.order == 0;
    case VarKind::jet:
        return v.index >= 1 && v.index <= n && v.order >= 1 && v.order <= max_jet_order;
    }
    return false;
}

VarId homotopy_variable() { return VarId::param("__s"); }

// -------------------------------------------------------------------- Expr

Expr Expr::var(const VarId &v)
{
    Expr e;
    e.num_ = Poly::variable(v.key());
    return e;
}

Expr Expr::fraction(Poly num, Poly den)
{
    if (den.is_zero())
        throw PoleError("division by the zero expression");
    Expr e;
    if (num.is_zero()) {
        e.num_ = Poly();
        e.den_ = Poly(Rational(1));
        return e;
    }
    if (!den.is_constant()) {
        Poly g = gcd(num, den);
        if (!g.is_constant()) {
            num = *divide_exact(num, g);
            den = *divide_exact(den, g);
        }
    }
    Rational lc = den.leading().coeff;
    if (lc != 1) {
        num = num.scaled(1 / lc);
        den = den.scaled(1 / lc);
    }
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    return e;
}

Rational Expr::constant_value() const
{
    if (!is_constant())
        throw Error("expression is not constant: " + to_string());
    return num_.constant_value() / den_.constant_value();
}

std::vector<VarId> Expr::variables() const
{
    auto a = num_.variables();
    auto b = den_.variables();
    std::vector<Var> all;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(all));
    std::vector<VarId> out;
    out.reserve(all.size());
    for (Var k : all)
        out.push_back(VarId::from_key(k));
    return out;
}

bool Expr::depends_on(const VarId &v) const
{
    Var k = v.key();
    return num_.contains(k) || den_.contains(k);
}

bool Expr::depends_on_kind(VarKind kind, int min_order) const
{
    for (const auto &v : variables())
        if (v.kind == kind && v.order >= min_order)
            return true;
    return false;
}

Expr Expr::operator-() const
{
    Expr r = *this;
    r.num_ = -r.num_;
    return r;
}

Expr Expr::operator+(const Expr &o) const
{
    if (is_zero())
        return o;
    if (o.is_zero())
        return *this;
    if (den_ == o.den_) {
        if (den_.is_constant()) {
            Expr r;
            r.num_ = num_ + o.num_;
            r.den_ = den_;
            return r;
        }
        return fraction(num_ + o.num_, den_);
    }
    if (den_.is_constant() && o.den_.is_constant()) {
        Expr r;
        r.num_ = num_.scaled(1 / den_.constant_value()) + o.num_.scaled(1 / o.den_.constant_value());
        return r;
    }
    // Reduce through the common factor of the denominators first.
    Poly g = gcd(den_, o.den_);
    Poly a = *divide_exact(den_, g);
    Poly b = *divide_exact(o.den_, g);
    return fraction(num_ * b + o.num_ * a, a * o.den_);
}

Expr Expr::operator-(const Expr &o) const { return *this + (-o); }

Expr Expr::operator*(const Expr &o) const
{
    if (is_zero() || o.is_zero())
        return Expr();
    if (den_.is_constant() && o.den_.is_constant()) {
        Expr r;
        r.num_ = (num_ * o.num_).scaled(1 / (den_.constant_value() * o.den_.constant_value()));
        return r;
    }
    // Cross-cancel to keep the final gcd small.
    Poly g1 = gcd(num_, o.den_);
    Poly g2 = gcd(o.num_, den_);
    Poly n1 = *divide_exact(num_, g1), d2 = *divide_exact(o.den_, g1);
    Poly n2 = *divide_exact(o.num_, g2), d1 = *divide_exact(den_, g2);
    Expr r;
    r.num_ = n1 * n2;
    r.den_ = d1 * d2;
    Rational lc = r.den_.leading().coeff;
    if (lc != 1) {
        r.num_ = r.num_.scaled(1 / lc);
        r.den_ = r.den_.scaled(1 / lc);
    }
    return r;
}

Expr Expr::operator/(const Expr &o) const
{
    if (o.is_zero())
        throw PoleError("division by the zero expression");
    Expr inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    Rational lc = inv.den_.leading().coeff;
    inv.num_ = inv.num_.scaled(1 / lc);
    inv.den_ = inv.den_.scaled(1 / lc);
    return *this * inv;
}

Expr Expr::pow(int e) const
{
    if (e < 0) {
        if (is_zero())
            throw PoleError("negative power of the zero expression");
        return Expr(1) / pow(-e);
    }
    Expr r;
    r.num_ = num_.pow(static_cast<std::uint32_t>(e));
    r.den_ = den_.pow(static_cast<std::uint32_t>(e));
    return r;
}

// ---------------------------------------------------------------- printing

namespace
{

std::string rational_text(const Rational &r)
{
    return r.get_str();
}

std::string monomial_text(const Monomial &m)
{
    std::string s;
    for (const auto &p : m.powers()) {
        if (!s.empty())
            s += '*';
        s += VarId::from_key(p.var).to_string();
        if (p.exp > 1)
            s += '^' + std::to_string(p.exp);
    }
    return s;
}

std::string poly_text(const Poly &p)
{
    if (p.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (const auto &t : p.terms()) {
        Rational c = t.coeff;
        bool negative = c < 0;
        if (negative)
            c = -c;
        if (first)
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        first = false;
        if (t.mono.empty()) {
            s += rational_text(c);
        } else if (c == 1) {
            s += monomial_text(t.mono);
        } else {
            s += rational_text(c) + "*" + monomial_text(t.mono);
        }
    }
    return s;
}

} // namespace

std::string Expr::to_string() const
{
    if (den_.is_constant()) {
        Rational d = den_.constant_value();
        if (d == 1)
            return poly_text(num_);
        return poly_text(num_.scaled(1 / d));
    }
    return "(" + poly_text(num_) + ")/(" + poly_text(den_) + ")";
}

// -------------------------------------------------------------- operations

Expr diff(const Expr &e, const VarId &v)
{
    const Var k = v.key();
    const Poly &n = e.numerator();
    const Poly &d = e.denominator();
    if (!d.contains(k))
        return Expr::fraction(n.derivative(k), d);
    // (n' d - n d') / d^2; the quotient shares at most factors of d.
    return Expr::fraction(n.derivative(k) * d - n * d.derivative(k), d * d);
}

namespace
{

// Substitution into a polynomial, with the image of every variable a
// polynomial divided by a constant.
Poly subst_poly(const Poly &p, const std::map<Var, Poly> &bindings, std::map<std::pair<Var, std::uint32_t>, Poly> &cache)
{
    Poly result;
    std::vector<Poly::Term> kept;
    for (const auto &t : p.terms()) {
        Poly term(t.coeff);
        Monomial rest;
        bool substituted = false;
        for (const auto &pw : t.mono.powers()) {
            auto it = bindings.find(pw.var);
            if (it == bindings.end()) {
                rest = rest * Monomial::of(pw.var, pw.exp);
                continue;
            }
            substituted = true;
            auto key = std::make_pair(pw.var, pw.exp);
            auto c = cache.find(key);
            if (c == cache.end())
                c = cache.emplace(key, it->second.pow(pw.exp)).first;
            term = term * c->second;
        }
        if (!substituted) {
            kept.push_back(t);
            continue;
        }
        result = result + term.times(rest);
    }
    return result + Poly::from_terms(std::move(kept));
}

Expr subst_general(const Poly &p, const std::map<Var, Expr> &bindings)
{
    Expr result;
    std::map<std::pair<Var, std::uint32_t>, Expr> cache;
    for (const auto &t : p.terms()) {
        Expr term(t.coeff);
        for (const auto &pw : t.mono.powers()) {
            auto it = bindings.find(pw.var);
            if (it == bindings.end()) {
                term = term * Expr::var(VarId::from_key(pw.var)).pow(static_cast<int>(pw.exp));
                continue;
            }
            auto key = std::make_pair(pw.var, pw.exp);
            auto c = cache.find(key);
            if (c == cache.end())
                c = cache.emplace(key, it->second.pow(static_cast<int>(pw.exp))).first;
            term = term * c->second;
        }
        result = result + term;
    }
    return result;
}

} // namespace

Expr subst(const Expr &e, const Bindings &bindings)
{
    if (bindings.empty())
        return e;
    std::map<Var, Expr> by_key;
    bool polynomial = true;
    for (const auto &[v, x] : bindings) {
        by_key.emplace(v.key(), x);
        polynomial = polynomial && x.is_polynomial();
    }
    if (polynomial) {
        std::map<Var, Poly> images;
        for (const auto &[k, x] : by_key)
            images.emplace(k, x.numerator().scaled(1 / x.denominator().constant_value()));
        std::map<std::pair<Var, std::uint32_t>, Poly> cache;
        Poly n = subst_poly(e.numerator(), images, cache);
        Poly d = subst_poly(e.denominator(), images, cache);
        return Expr::fraction(std::move(n), std::move(d));
    }
    Expr n = subst_general(e.numerator(), by_key);
    Expr d = subst_general(e.denominator(), by_key);
    return n / d;
}

bool is_zero(const Expr &e) { return e.is_zero(); }

namespace
{

Rational eval_poly(const Poly &p, const std::map<Var, Rational> &point)
{
    Rational sum = 0;
    for (const auto &t : p.terms()) {
        Rational term = t.coeff;
        for (const auto &pw : t.mono.powers()) {
            auto it = point.find(pw.var);
            if (it == point.end())
                throw Error("evaluation point lacks variable " + VarId::from_key(pw.var).to_string());
            Rational x;
            mpz_pow_ui(x.get_num_mpz_t(), it->second.get_num_mpz_t(), pw.exp);
            mpz_pow_ui(x.get_den_mpz_t(), it->second.get_den_mpz_t(), pw.exp);
            term *= x;
        }
        sum += term;
    }
    return sum;
}

double eval_poly_double(const Poly &p, const std::map<Var, double> &point)
{
    double sum = 0;
    for (const auto &t : p.terms()) {
        double term = t.coeff.get_d();
        for (const auto &pw : t.mono.powers()) {
            auto it = point.find(pw.var);
            if (it == point.end())
                throw Error("evaluation point lacks variable " + VarId::from_key(pw.var).to_string());
            term *= std::pow(it->second, static_cast<double>(pw.exp));
        }
        sum += term;
    }
    return sum;
}

} // namespace

Rational eval_num(const Expr &e, const Point &point)
{
    std::map<Var, Rational> by_key;
    for (const auto &[v, x] : point)
        by_key.emplace(v.key(), x);
    Rational d = eval_poly(e.denominator(), by_key);
    if (d == 0)
        throw PoleError("expression has a pole at the evaluation point");
    return eval_poly(e.numerator(), by_key) / d;
}

double eval_double(const Expr &e, const std::map<VarId, double> &point)
{
    std::map<Var, double> by_key;
    for (const auto &[v, x] : point)
        by_key.emplace(v.key(), x);
    double d = eval_poly_double(e.denominator(), by_key);
    if (d == 0.0)
        throw PoleError("expression has a pole at the evaluation point");
    return eval_poly_double(e.numerator(), by_key) / d;
}

Expr integrate_poly(const Expr &e, const VarId &v)
{
    const Var k = v.key();
    if (e.denominator().contains(k))
        throw NotPolynomialIn("expression is not polynomial in " + v.to_string());
    std::vector<Poly::Term> out;
    for (const auto &t : e.numerator().terms()) {
        std::uint32_t d = t.mono.degree(k);
        out.push_back({t.mono.with_degree(k, d + 1), t.coeff / (d + 1)});
    }
    return Expr::fraction(Poly::from_terms(std::move(out)), e.denominator());
}

std::vector<std::pair<Monomial, Expr>> coefficients_in(const Expr &e, const std::vector<VarId> &vars)
{
    std::vector<Var> keys;
    for (const auto &v : vars)
        keys.push_back(v.key());
    std::sort(keys.begin(), keys.end());
    for (Var k : keys)
        if (e.denominator().contains(k))
            throw NotPolynomialIn("expression is not polynomial in " + VarId::from_key(k).to_string());

    std::map<std::vector<std::pair<Var, std::uint32_t>>, std::vector<Poly::Term>> groups;
    for (const auto &t : e.numerator().terms()) {
        Monomial selected, rest;
        std::vector<std::pair<Var, std::uint32_t>> sig;
        for (const auto &pw : t.mono.powers()) {
            if (std::binary_search(keys.begin(), keys.end(), pw.var)) {
                selected = selected * Monomial::of(pw.var, pw.exp);
                sig.emplace_back(pw.var, pw.exp);
            } else {
                rest = rest * Monomial::of(pw.var, pw.exp);
            }
        }
        groups[sig].push_back({rest, t.coeff});
    }
    std::vector<std::pair<Monomial, Expr>> out;
    for (auto &[sig, terms] : groups) {
        Monomial m;
        for (const auto &[k, x] : sig)
            m = m * Monomial::of(k, x);
        out.emplace_back(m, Expr::fraction(Poly::from_terms(std::move(terms)), e.denominator()));
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return compare(a.first, b.first) > 0; });
    return out;
}

int degree_in(const Expr &e, const VarId &v) { return static_cast<int>(e.numerator().degree(v.key())); }

} // namespace invlag
