#ifndef INVLAG_POLY_HPP
#define INVLAG_POLY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace invlag
{

using Rational = mpq_class;

/// Opaque variable key. Lower keys are more significant in the monomial order.
using Var = std::uint32_t;

struct Power {
    Var var;
    std::uint32_t exp;
    friend bool operator==(const Power &, const Power &) = default;
};

/// Product of variable powers, sorted by ascending key, no zero exponents.
class Monomial
{
public:
    Monomial() = default;
    static Monomial of(Var v, std::uint32_t e = 1);

    const std::vector<Power> &powers() const { return powers_; }
    bool empty() const { return powers_.empty(); }
    std::uint32_t degree(Var v) const;
    std::uint32_t total_degree() const;

    Monomial operator*(const Monomial &o) const;
    /// Quotient if `o` divides this monomial.
    std::optional<Monomial> divide(const Monomial &o) const;
    /// Drops every power of `v`.
    Monomial without(Var v) const;
    Monomial with_degree(Var v, std::uint32_t e) const;

    friend bool operator==(const Monomial &, const Monomial &) = default;

private:
    std::vector<Power> powers_;
};

/// Lexicographic comparison; >0 when `a` is the larger monomial.
int compare(const Monomial &a, const Monomial &b);

/// Sparse multivariate polynomial over Q. Terms kept in strictly
/// decreasing monomial order with non-zero coefficients.
class Poly
{
public:
    struct Term {
        Monomial mono;
        Rational coeff;
    };

    Poly() = default;
    explicit Poly(const Rational &c);
    static Poly variable(Var v);
    static Poly from_terms(std::vector<Term> terms);

    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant value, zero for the zero polynomial. Requires is_constant().
    Rational constant_value() const;
    bool is_monomial() const { return terms_.size() == 1; }
    const Term &leading() const { return terms_.front(); }

    std::uint32_t degree(Var v) const;
    std::uint32_t total_degree() const;
    bool contains(Var v) const { return degree(v) > 0; }
    std::vector<Var> variables() const;

    Poly operator-() const;
    Poly operator+(const Poly &o) const;
    Poly operator-(const Poly &o) const;
    Poly operator*(const Poly &o) const;
    Poly scaled(const Rational &c) const;
    Poly times(const Monomial &m) const;
    Poly pow(std::uint32_t e) const;

    Poly derivative(Var v) const;
    /// Coefficients of powers of `v`, index = exponent.
    std::vector<Poly> coefficients_in(Var v) const;

    friend bool operator==(const Poly &a, const Poly &b);

private:
    std::vector<Term> terms_;
};

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly &a, const Poly &b);

/// Greatest common divisor, normalized to leading coefficient 1.
/// gcd(0, 0) = 0.
Poly gcd(const Poly &a, const Poly &b);

/// Scales `p` so its leading coefficient is 1.
Poly monic(const Poly &p);

} // namespace invlag

#endif // INVLAG_POLY_HPP
