#include "invlag/conditions.hpp"

namespace invlag
{

void ImplicitSystem::validate() const
{
    if (static_cast<int>(f.size()) != ctx.n)
        throw Error("expected " + std::to_string(ctx.n) + " expressions, got " + std::to_string(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i].depends_on_kind(VarKind::jet, 3))
            throw Error("f" + std::to_string(i + 1) + " depends on jets of order above 2");
}

ImplicitSystem make_implicit(int n, const std::vector<std::string> &f, const std::vector<std::string> &params)
{
    ImplicitSystem sys{ExprContext::implicit_system(n, params), {}};
    for (const auto &text : f)
        sys.f.push_back(parse(text, sys.ctx));
    sys.validate();
    return sys;
}

Expr total_derivative(const Expr &F, int n)
{
    Expr out = diff(F, VarId::time());
    for (int i = 1; i <= n; ++i)
        for (int o = 0; o <= 4; ++o) {
            Expr d = diff(F, VarId::jet(i, o));
            if (d.is_zero())
                continue;
            if (o == 4)
                throw Error("total derivative would exceed jet order 4");
            out += Expr::var(VarId::jet(i, o + 1)) * d;
        }
    return out;
}

Expr euler_lagrange(const Expr &L, int n, int i)
{
    return total_derivative(diff(L, VarId::v(i + 1)), n) - diff(L, VarId::q(i + 1));
}

namespace
{

// First derivative of e with respect to a jet of order >= 2 that does not
// vanish, or zero when e is of first order.
Expr higher_jet_witness(const Expr &e, int n)
{
    for (int o = 2; o <= 4; ++o)
        for (int i = 1; i <= n; ++i) {
            Expr d = diff(e, VarId::jet(i, o));
            if (!d.is_zero())
                return d;
        }
    return Expr();
}

Expr dq(const Expr &e, int i) { return diff(e, VarId::q(i + 1)); }
Expr dv(const Expr &e, int i) { return diff(e, VarId::v(i + 1)); }
Expr da(const Expr &e, int i) { return diff(e, VarId::jet(i + 1, 2)); }

} // namespace

ConditionReport check_implicit(const ImplicitSystem &sys)
{
    sys.validate();
    const int n = sys.dim();
    const auto &f = sys.f;
    ConditionReport r;
    r.suite = suite_name(Suite::implicit);

    using Matrix = std::vector<std::vector<Expr>>;
    Matrix fa(n, std::vector<Expr>(n)), fv(n, std::vector<Expr>(n)), fq(n, std::vector<Expr>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            fa[i][j] = da(f[i], j);
            fv[i][j] = dv(f[i], j);
            fq[i][j] = dq(f[i], j);
        }

    Matrix rr(n, std::vector<Expr>(n)), ss(n, std::vector<Expr>(n));
    const Expr half(Rational(1, 2));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Expr t = fa[i][j] - fa[j][i];
            rr[i][j] = fq[i][j] - fq[j][i] - half * total_derivative(fv[i][j] - fv[j][i], n) +
                       half * total_derivative(total_derivative(t, n), n);
            ss[i][j] = fv[i][j] + fv[j][i] - 2 * total_derivative(fa[j][i], n);
        }

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            r.add(cell_label("T", {i, j}), fa[i][j] - fa[j][i]);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            r.add(cell_label("FirstOrderR", {i, j}), higher_jet_witness(rr[i][j], n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.add(cell_label("FirstOrderS", {i, j}), higher_jet_witness(ss[i][j], n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            r.add(cell_label("SSym", {i, j}), ss[i][j] - ss[j][i]);

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                r.add(cell_label("C1", {i, j, k}), dq(rr[i][j], k) + dq(rr[j][k], i) + dq(rr[k][i], j));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                r.add(cell_label("C2", {i, j, k}), dv(rr[i][j], k) - half * (dq(ss[i][k], j) - dq(ss[j][k], i)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                r.add(cell_label("C3", {i, j, k}), dv(ss[i][j], k) - dv(ss[i][k], j));

    // Reduced form f_i = g_ij q''^j + h_i.
    Matrix g = fa;
    std::vector<Expr> h(n);
    for (int i = 0; i < n; ++i) {
        h[i] = f[i];
        for (int j = 0; j < n; ++j)
            h[i] -= g[i][j] * Expr::var(VarId::jet(j + 1, 2));
    }
    for (int i = 0; i < n; ++i) {
        Expr w;
        for (int j = 0; j < n && w.is_zero(); ++j)
            w = higher_jet_witness(g[i][j], n);
        r.add(cell_label("Affine", {i}), w);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                r.add(cell_label("R1", {i, j, k}), dv(g[i][j], k) - dv(g[i][k], j));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k)
                r.add(cell_label("R2", {i, j, k}), dq(g[i][k], j) - half * dv(dv(h[i], j), k) -
                                                       (dq(g[j][k], i) - half * dv(dv(h[j], i), k)));
    auto cyc = [&](int i, int j, int k) { return dv(dq(h[i], j), k) - dv(dq(h[i], k), j); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                r.add(cell_label("R3", {i, j, k}), cyc(i, j, k) + cyc(j, k, i) + cyc(k, i, j));

    r.notes.push_back("verdicts are local");
    return r;
}

} // namespace invlag
