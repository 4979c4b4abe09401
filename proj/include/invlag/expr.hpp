#ifndef INVLAG_EXPR_HPP
#define INVLAG_EXPR_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "invlag/poly.hpp"

namespace invlag
{

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Syntax or vocabulary error while parsing an expression.
class ParseError : public Error
{
public:
    ParseError(const std::string &msg, std::size_t position)
        : Error(msg + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Division by an identically vanishing expression, or evaluation at a pole.
class PoleError : public Error
{
public:
    using Error::Error;
};

/// integrate_poly on an expression that is not polynomial in the variable.
class NotPolynomialIn : public Error
{
public:
    using Error::Error;
};

enum class VarKind : std::uint8_t { parameter = 0, time = 1, position = 2, jet = 3 };

/// Symbolic variable. Positions carry order 0, jets 1..4 (order 1 is the
/// velocity). Indices are 1-based, as in the variable names.
struct VarId {
    VarKind kind = VarKind::position;
    int index = 1;
    int order = 0;
    std::string name; // parameters only

    static VarId time() { return {VarKind::time, 0, 0, {}}; }
    static VarId q(int i) { return {VarKind::position, i, 0, {}}; }
    static VarId v(int i) { return {VarKind::jet, i, 1, {}}; }
    static VarId jet(int i, int order)
    {
        return order == 0 ? q(i) : VarId{VarKind::jet, i, order, {}};
    }
    static VarId param(std::string n) { return {VarKind::parameter, 0, 0, std::move(n)}; }

    Var key() const;
    static VarId from_key(Var key);
    std::string to_string() const;

    friend bool operator==(const VarId &a, const VarId &b) { return a.key() == b.key(); }
    friend bool operator<(const VarId &a, const VarId &b) { return a.key() < b.key(); }
};

/// Vocabulary an expression may draw from.
struct ExprContext {
    int n = 1;
    int max_jet_order = 1;
    std::vector<std::string> parameters;
    bool uses_time = false;

    static ExprContext explicit_system(int n, std::vector<std::string> params = {})
    {
        return {n, 1, std::move(params), false};
    }
    static ExprContext implicit_system(int n, std::vector<std::string> params = {})
    {
        return {n, 4, std::move(params), true};
    }
    bool admits(const VarId &v) const;
};

/// Exact rational function over VarIds in canonical form: numerator and
/// denominator coprime, denominator with leading coefficient 1. Structural
/// equality is mathematical equality.
class Expr
{
public:
    Expr() = default;
    Expr(long c) : num_(Rational(c)), den_(Rational(1)) {}
    Expr(const Rational &c) : num_(c), den_(Rational(1)) {}
    static Expr var(const VarId &v);
    static Expr q(int i) { return var(VarId::q(i)); }
    static Expr v(int i) { return var(VarId::v(i)); }
    static Expr param(const std::string &name) { return var(VarId::param(name)); }
    /// Normalizes num/den; throws PoleError when den is zero.
    static Expr fraction(Poly num, Poly den);

    const Poly &numerator() const { return num_; }
    const Poly &denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    Rational constant_value() const;

    std::vector<VarId> variables() const;
    bool depends_on(const VarId &v) const;
    /// True iff the expression mentions a variable of the given kind (and,
    /// for jets, of order >= min_order).
    bool depends_on_kind(VarKind kind, int min_order = 0) const;

    Expr operator-() const;
    Expr operator+(const Expr &o) const;
    Expr operator-(const Expr &o) const;
    Expr operator*(const Expr &o) const;
    Expr operator/(const Expr &o) const;
    Expr &operator+=(const Expr &o) { return *this = *this + o; }
    Expr &operator-=(const Expr &o) { return *this = *this - o; }
    Expr &operator*=(const Expr &o) { return *this = *this * o; }
    Expr pow(int e) const;

    friend bool operator==(const Expr &a, const Expr &b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    /// Text in the parser grammar; parse(to_string()) reproduces *this.
    std::string to_string() const;

private:
    Poly num_;
    Poly den_{Rational(1)};
};

using Bindings = std::map<VarId, Expr>;
using Point = std::map<VarId, Rational>;

Expr parse(std::string_view text, const ExprContext &ctx);

Expr diff(const Expr &e, const VarId &v);
Expr subst(const Expr &e, const Bindings &bindings);
bool is_zero(const Expr &e);
Rational eval_num(const Expr &e, const Point &point);
double eval_double(const Expr &e, const std::map<VarId, double> &point);
/// Antiderivative in v with zero constant term.
Expr integrate_poly(const Expr &e, const VarId &v);

/// Splits a polynomial numerator into coefficient polynomials with respect
/// to the monomials in `vars`.
std::vector<std::pair<Monomial, Expr>> coefficients_in(const Expr &polynomial, const std::vector<VarId> &vars);

/// Degree of the numerator in v (the denominator is ignored).
int degree_in(const Expr &e, const VarId &v);

/// Reserved auxiliary variables for homotopy integrals; never produced by
/// the parser.
VarId homotopy_variable();

inline Expr operator+(long a, const Expr &b) { return Expr(a) + b; }
inline Expr operator-(long a, const Expr &b) { return Expr(a) - b; }
inline Expr operator*(long a, const Expr &b) { return Expr(a) * b; }
inline Expr operator*(const Rational &a, const Expr &b) { return Expr(a) * b; }

} // namespace invlag

#endif // INVLAG_EXPR_HPP
