#ifndef INVLAG_RECONSTRUCT_HPP
#define INVLAG_RECONSTRUCT_HPP

#include <string>
#include <vector>

#include "invlag/conditions.hpp"

namespace invlag
{

/// An input depends rationally on velocities where a polynomial is required.
class NotPolynomialInV : public Error
{
public:
    using Error::Error;
};

/// A base-space homotopy would integrate through a pole at q = 0.
class BasePointError : public Error
{
public:
    using Error::Error;
};

/// Reconstruction preconditions failed (residual not affine, form not closed, ...).
class ReconstructionError : public Error
{
public:
    using Error::Error;
};

enum class CertificateKind { classical, dissipative, gyroscopic };

struct Certificate {
    CertificateKind kind = CertificateKind::classical;
    Expr L;
    Expr D;
    TensorField omega;
    /// What was added beyond the fibre homotopies, one line each.
    std::vector<std::string> gauge;
};

std::string certificate_kind_name(CertificateKind k);

TensorField hessian(const Expr &L, int n);

/// F with Hessian M, F(q,0) = 0 and dF/dv(q,0) = 0.
Expr vertical_homotopy2(const TensorField &M);

/// c(q) with dc/dq^i = a_i, c(0) = 0. Requires a closed basic 1-form.
Expr base_homotopy1(const std::vector<Expr> &a, int n);

/// b_i(q) with d_k b_i - d_i b_k = Omega_ki. Requires a closed basic 2-form.
std::vector<Expr> base_homotopy2(const TensorField &Omega);

Certificate reconstruct_dissipative(const SodeGeometry &geo, const TensorField &g);
Certificate reconstruct_gyroscopic(const SodeGeometry &geo, const TensorField &g);

/// Lagrange residuals r_i = Gamma(dL/dv^i) - dL/dq^i - dD/dv^i.
ConditionReport verify_dissipative(const Sode &s, const Expr &L, const Expr &D);
/// Lagrange residuals r_i = Gamma(dL/dv^i) - dL/dq^i - omega_ik v^k.
ConditionReport verify_gyroscopic(const Sode &s, const Expr &L, const TensorField &omega);

/// Solves the dissipative Lagrange equations for q''. Throws PoleError when
/// the velocity Hessian of L is singular.
Sode forward_sode(const Expr &L, const Expr &D, int n, const std::vector<std::string> &params = {});
Sode forward_sode_gyroscopic(const Expr &L, const TensorField &omega, int n,
                             const std::vector<std::string> &params = {});

} // namespace invlag

#endif // INVLAG_RECONSTRUCT_HPP
