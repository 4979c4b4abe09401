#ifndef INVLAG_CONDITIONS_HPP
#define INVLAG_CONDITIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "invlag/geometry.hpp"

namespace invlag
{

enum class Suite { classical, dissipative, gyroscopic, thm3, thm4, prop2a, rayleigh, implicit };

std::string suite_name(Suite s);
/// Throws Error on an unknown name.
Suite suite_from_name(const std::string &name);

struct ConditionCell {
    std::string label;
    Expr residual;
    bool pass = true;
};

struct ConditionReport {
    std::string suite;
    std::vector<ConditionCell> cells;
    bool pass = true;

    bool has_det = false;
    Expr det;
    bool det_nonzero = false;
    /// Factors of det g that are not constant; det vanishes on their zero set.
    bool det_has_zero_locus = false;

    std::vector<std::string> notes;

    void add(std::string label, Expr residual);
    void record_det(const TensorField &g);
    void append(const ConditionReport &other);
    std::vector<const ConditionCell *> failures() const;
    /// Recomputes every pass flag from its residual.
    bool recheck() const;
};

/// Residual cells that are linear in (g, omega); the solver assembles its
/// equations from these. Suites without an omega part ignore it.
std::vector<ConditionCell> linear_cells(Suite suite, const SodeGeometry &geo, const TensorField &g,
                                        const TensorField *omega = nullptr);

/// True when linear_cells supports the suite (the solver's targets).
bool suite_is_linear(Suite suite);

ConditionReport check_classical(const SodeGeometry &geo, const TensorField &g);
ConditionReport check_dissipative(const SodeGeometry &geo, const TensorField &g, const Expr &D);
ConditionReport check_gyroscopic(const SodeGeometry &geo, const TensorField &g, const TensorField &omega);
ConditionReport check_multiplier_dissipative(const SodeGeometry &geo, const TensorField &g);
ConditionReport check_multiplier_gyroscopic(const SodeGeometry &geo, const TensorField &g);
ConditionReport check_prop2a(const SodeGeometry &geo, const TensorField &g);
ConditionReport check_rayleigh(const SodeGeometry &geo, const TensorField &g);

ConditionReport check_classical(const Sode &s, const TensorField &g);
ConditionReport check_dissipative(const Sode &s, const TensorField &g, const Expr &D);
ConditionReport check_gyroscopic(const Sode &s, const TensorField &g, const TensorField &omega);
ConditionReport check_multiplier_dissipative(const Sode &s, const TensorField &g);
ConditionReport check_multiplier_gyroscopic(const Sode &s, const TensorField &g);
ConditionReport check_prop2a(const Sode &s, const TensorField &g);
ConditionReport check_rayleigh(const Sode &s, const TensorField &g);

/// Curvature cycle c(i,k,l) = g_ij R^j_kl + g_lj R^j_ik + g_kj R^j_li.
Expr curvature_cycle(const TensorField &g, const TensorField &R, int i, int k, int l);

/// Throws Error unless omega is an antisymmetric (0,2) tensor over q only.
void require_basic_two_form(const TensorField &omega, int n);

/// Second-order system in implicit form f_i(t, q, q', q'') = 0.
struct ImplicitSystem {
    ExprContext ctx;
    std::vector<Expr> f;

    int dim() const { return ctx.n; }
    void validate() const;
};

ImplicitSystem make_implicit(int n, const std::vector<std::string> &f, const std::vector<std::string> &params = {});

/// d/dt = d/dt + sum q^(o+1) d/dq^(o) on jet expressions.
Expr total_derivative(const Expr &F, int n);

/// Euler-Lagrange expression d/dt(dL/dv^i) - dL/dq^i as a jet expression.
Expr euler_lagrange(const Expr &L, int n, int i);

ConditionReport check_implicit(const ImplicitSystem &sys);

} // namespace invlag

#endif // INVLAG_CONDITIONS_HPP
