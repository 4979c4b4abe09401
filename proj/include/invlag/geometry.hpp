#ifndef INVLAG_GEOMETRY_HPP
#define INVLAG_GEOMETRY_HPP

#include <vector>

#include "invlag/expr.hpp"
#include "invlag/tensor.hpp"

namespace invlag
{

/// Second-order system q''^i = f^i(q, v) in normal form.
struct Sode {
    ExprContext ctx;
    std::vector<Expr> f;

    int dim() const { return ctx.n; }
    /// Validates that every f^i only depends on q, v and declared parameters.
    void validate() const;
};

/// Parses f^i strings under an explicit context.
Sode make_sode(int n, const std::vector<std::string> &f, const std::vector<std::string> &params = {});

// Index conventions (0-based):
//   connection(j, i)   = Gamma^j_i = -1/2 df^j/dv^i
//   jacobi(i, j)       = Phi^i_j
//   curvature(k, i, j) = R^k_ij, antisymmetric in (i, j)
//   theta(l, j, k)     = theta^l_jk = V_k(Gamma^l_j)

TensorField connection(const Sode &s);

/// Gamma(F) = v^k dF/dq^k + f^k dF/dv^k.
Expr gamma_apply(const Sode &s, const Expr &F);

/// H_i(F) = dF/dq^i - Gamma^j_i dF/dv^j.
Expr horizontal_apply(const Sode &s, const TensorField &conn, int i, const Expr &F);
Expr horizontal_apply(const Sode &s, int i, const Expr &F);

/// V_i(F) = dF/dv^i.
Expr vertical_apply(int i, const Expr &F);

TensorField jacobi(const Sode &s);
TensorField jacobi(const Sode &s, const TensorField &conn);

/// R^k_ij = H_j(Gamma^k_i) - H_i(Gamma^k_j); cross-checked against
/// 1/3 (V_i Phi^k_j - V_j Phi^k_i). Throws Error on disagreement.
TensorField curvature(const Sode &s);
TensorField curvature_from_connection(const Sode &s, const TensorField &conn);
TensorField curvature_from_jacobi(const TensorField &phi);

TensorField theta_tensor(const Sode &s);
TensorField theta_tensor(const TensorField &conn);

/// Dynamical covariant derivative of a (0,2) tensor.
TensorField nabla_tensor02(const Sode &s, const TensorField &g);
TensorField nabla_tensor02(const Sode &s, const TensorField &conn, const TensorField &g);

/// Dynamical covariant derivative of a (1,2) tensor T^k_ij.
TensorField nabla_tensor12(const Sode &s, const TensorField &conn, const TensorField &T);

/// Antisymmetrized horizontal covariant derivative of Phi,
/// (d_h Phi)^k_ij = H_i Phi^k_j - H_j Phi^k_i + theta^k_mi Phi^m_j - theta^k_mj Phi^m_i.
TensorField dh_jacobi(const Sode &s, const TensorField &conn, const TensorField &phi);

/// All objects attached to a SODE, computed once.
struct SodeGeometry {
    Sode sode;
    TensorField gamma;
    TensorField phi;
    TensorField curvature;
    TensorField theta;

    explicit SodeGeometry(Sode s);
    int dim() const { return sode.dim(); }
    Expr apply_gamma(const Expr &F) const { return gamma_apply(sode, F); }
    Expr apply_horizontal(int i, const Expr &F) const { return horizontal_apply(sode, gamma, i, F); }
};

/// Velocity and position variable lists for a dimension.
std::vector<VarId> velocity_vars(int n);
std::vector<VarId> position_vars(int n);

} // namespace invlag

#endif // INVLAG_GEOMETRY_HPP
