#include "invlag/geometry.hpp"

namespace invlag
{

void Sode::validate() const
{
    if (static_cast<int>(f.size()) != ctx.n)
        throw Error("expected " + std::to_string(ctx.n) + " right-hand sides, got " + std::to_string(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].depends_on_kind(VarKind::time) || f[i].depends_on_kind(VarKind::jet, 2))
            throw Error("f" + std::to_string(i + 1) + " depends on more than q, v and parameters");
        for (const auto &v : f[i].variables())
            if (!ctx.admits(v))
                throw Error("f" + std::to_string(i + 1) + " uses '" + v.to_string() + "' outside its context");
    }
}

Sode make_sode(int n, const std::vector<std::string> &f, const std::vector<std::string> &params)
{
    Sode s{ExprContext::explicit_system(n, params), {}};
    for (const auto &text : f)
        s.f.push_back(parse(text, s.ctx));
    s.validate();
    return s;
}

std::vector<VarId> velocity_vars(int n)
{
    std::vector<VarId> out;
    for (int i = 1; i <= n; ++i)
        out.push_back(VarId::v(i));
    return out;
}

std::vector<VarId> position_vars(int n)
{
    std::vector<VarId> out;
    for (int i = 1; i <= n; ++i)
        out.push_back(VarId::q(i));
    return out;
}

TensorField connection(const Sode &s)
{
    const int n = s.dim();
    TensorField conn(n, 1, 1);
    const Expr half = Expr(Rational(-1, 2));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            conn(j, i) = half * diff(s.f[j], VarId::v(i + 1));
    return conn;
}

Expr vertical_apply(int i, const Expr &F) { return diff(F, VarId::v(i + 1)); }

Expr gamma_apply(const Sode &s, const Expr &F)
{
    Expr out;
    for (int k = 0; k < s.dim(); ++k) {
        out += Expr::v(k + 1) * diff(F, VarId::q(k + 1));
        Expr dv = diff(F, VarId::v(k + 1));
        if (!dv.is_zero())
            out += s.f[k] * dv;
    }
    return out;
}

Expr horizontal_apply(const Sode &s, const TensorField &conn, int i, const Expr &F)
{
    Expr out = diff(F, VarId::q(i + 1));
    for (int j = 0; j < s.dim(); ++j) {
        Expr dv = diff(F, VarId::v(j + 1));
        if (!dv.is_zero())
            out -= conn(j, i) * dv;
    }
    return out;
}

Expr horizontal_apply(const Sode &s, int i, const Expr &F) { return horizontal_apply(s, connection(s), i, F); }

TensorField jacobi(const Sode &s) { return jacobi(s, connection(s)); }

TensorField jacobi(const Sode &s, const TensorField &conn)
{
    const int n = s.dim();
    TensorField phi(n, 1, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Expr e = -diff(s.f[i], VarId::q(j + 1)) - gamma_apply(s, conn(i, j));
            for (int k = 0; k < n; ++k)
                e -= conn(k, j) * conn(i, k);
            phi(i, j) = e;
        }
    return phi;
}

TensorField curvature_from_connection(const Sode &s, const TensorField &conn)
{
    const int n = s.dim();
    TensorField R(n, 1, 2, Symmetry::antisymmetric);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Expr e = horizontal_apply(s, conn, j, conn(k, i)) - horizontal_apply(s, conn, i, conn(k, j));
                R(k, i, j) = e;
                R(k, j, i) = -e;
            }
    return R;
}

TensorField curvature_from_jacobi(const TensorField &phi)
{
    const int n = phi.dim();
    TensorField R(n, 1, 2, Symmetry::antisymmetric);
    const Expr third(Rational(1, 3));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Expr e = third * (vertical_apply(i, phi(k, j)) - vertical_apply(j, phi(k, i)));
                R(k, i, j) = e;
                R(k, j, i) = -e;
            }
    return R;
}

TensorField curvature(const Sode &s)
{
    TensorField conn = connection(s);
    TensorField a = curvature_from_connection(s, conn);
    TensorField b = curvature_from_jacobi(jacobi(s, conn));
    if (!(a == b))
        throw Error("curvature formulas disagree");
    return a;
}

TensorField theta_tensor(const Sode &s) { return theta_tensor(connection(s)); }

TensorField theta_tensor(const TensorField &conn)
{
    const int n = conn.dim();
    TensorField th(n, 1, 2, Symmetry::symmetric);
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                th(l, j, k) = vertical_apply(k, conn(l, j));
    if (!th.symmetry_holds())
        throw Error("theta is not symmetric in its lower indices");
    return th;
}

TensorField nabla_tensor02(const Sode &s, const TensorField &g) { return nabla_tensor02(s, connection(s), g); }

TensorField nabla_tensor02(const Sode &s, const TensorField &conn, const TensorField &g)
{
    const int n = s.dim();
    if (g.dim() != n || g.upper() != 0 || g.lower() != 2)
        throw Error("nabla_tensor02 expects a (0,2) tensor of dimension " + std::to_string(n));
    TensorField out(n, 0, 2, g.symmetry());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (g.symmetry() == Symmetry::symmetric && j < i) {
                out(i, j) = out(j, i);
                continue;
            }
            Expr e = gamma_apply(s, g(i, j));
            for (int k = 0; k < n; ++k)
                e -= g(i, k) * conn(k, j) + g(k, j) * conn(k, i);
            out(i, j) = e;
        }
    return out;
}

TensorField nabla_tensor12(const Sode &s, const TensorField &conn, const TensorField &T)
{
    const int n = s.dim();
    if (T.dim() != n || T.upper() != 1 || T.lower() != 2)
        throw Error("nabla_tensor12 expects a (1,2) tensor of dimension " + std::to_string(n));
    TensorField out(n, 1, 2);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Expr e = gamma_apply(s, T(k, i, j));
                for (int l = 0; l < n; ++l)
                    e += conn(k, l) * T(l, i, j) - T(k, l, j) * conn(l, i) - T(k, i, l) * conn(l, j);
                out(k, i, j) = e;
            }
    return out;
}

TensorField dh_jacobi(const Sode &s, const TensorField &conn, const TensorField &phi)
{
    const int n = s.dim();
    TensorField th = theta_tensor(conn);
    TensorField out(n, 1, 2, Symmetry::antisymmetric);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Expr e = horizontal_apply(s, conn, i, phi(k, j)) - horizontal_apply(s, conn, j, phi(k, i));
                for (int m = 0; m < n; ++m)
                    e += th(k, m, i) * phi(m, j) - th(k, m, j) * phi(m, i);
                out(k, i, j) = e;
            }
    return out;
}

SodeGeometry::SodeGeometry(Sode s) : sode(std::move(s))
{
    sode.validate();
    gamma = connection(sode);
    phi = jacobi(sode, gamma);
    curvature = curvature_from_connection(sode, gamma);
    if (!(curvature == curvature_from_jacobi(phi)))
        throw Error("curvature formulas disagree");
    theta = theta_tensor(gamma);
}

} // namespace invlag
