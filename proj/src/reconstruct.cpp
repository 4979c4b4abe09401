#include "invlag/reconstruct.hpp"

namespace invlag
{

std::string certificate_kind_name(CertificateKind k)
{
    switch (k) {
    case CertificateKind::classical: return "classical";
    case CertificateKind::dissipative: return "dissipative";
    case CertificateKind::gyroscopic: return "gyroscopic";
    }
    return "?";
}

TensorField hessian(const Expr &L, int n)
{
    TensorField g = TensorField::matrix02(n, Symmetry::symmetric);
    for (int i = 0; i < n; ++i) {
        Expr li = diff(L, VarId::v(i + 1));
        for (int j = i; j < n; ++j) {
            g(i, j) = diff(li, VarId::v(j + 1));
            g(j, i) = g(i, j);
        }
    }
    return g;
}

namespace
{

bool velocity_free_denominator(const Expr &e, int n)
{
    for (int i = 1; i <= n; ++i)
        if (e.denominator().contains(VarId::v(i).key()))
            return false;
    return true;
}

bool is_basic(const Expr &e) { return !e.depends_on_kind(VarKind::jet) && !e.depends_on_kind(VarKind::time); }

Bindings scale_vars(const std::vector<VarId> &vars, const Expr &s)
{
    Bindings b;
    for (const auto &v : vars)
        b[v] = s * Expr::var(v);
    return b;
}

// integral_0^1 of e over the homotopy variable; e must be polynomial in it.
Expr integrate_unit(const Expr &e)
{
    const VarId s = homotopy_variable();
    Expr anti;
    try {
        anti = integrate_poly(e, s);
    } catch (const NotPolynomialIn &) {
        throw ReconstructionError("homotopy integral leaves the rational class");
    }
    return subst(anti, {{s, Expr(1)}});
}

void require_pole_free_at_origin(const Expr &e, int n)
{
    if (e.is_polynomial())
        return;
    Bindings zero;
    for (int i = 1; i <= n; ++i)
        zero[VarId::q(i)] = Expr();
    if (subst(Expr::fraction(e.denominator(), Poly(Rational(1))), zero).is_zero())
        throw BasePointError("denominator of " + e.to_string() + " vanishes at the base point q = 0");
}

Expr lagrange_operator(const Sode &s, const Expr &L, int i)
{
    return gamma_apply(s, diff(L, VarId::v(i + 1))) - diff(L, VarId::q(i + 1));
}

Expr gyroscopic_force(const TensorField &omega, int i, int n)
{
    Expr e;
    for (int k = 0; k < n; ++k)
        e += omega(i, k) * Expr::v(k + 1);
    return e;
}

} // namespace

Expr vertical_homotopy2(const TensorField &M)
{
    const int n = M.dim();
    if (M.rank() != 2 || M.upper() != 0)
        throw Error("vertical_homotopy2 expects a (0,2) tensor");
    for (const auto &e : M.entries())
        if (!velocity_free_denominator(e, n))
            throw NotPolynomialInV("entry " + e.to_string() + " is not polynomial in the velocities");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!(M(i, j) == M(j, i)))
                throw ReconstructionError("homotopy input is not symmetric at " + cell_label("M", {i, j}));
            for (int k = j + 1; k < n; ++k)
                if (!(vertical_apply(k, M(i, j)) == vertical_apply(j, M(i, k))))
                    throw ReconstructionError("homotopy input has non-symmetric vertical derivative at " +
                                              cell_label("VM", {i, j, k}));
        }

    const Expr s = Expr::var(homotopy_variable());
    const Bindings scaled = scale_vars(velocity_vars(n), s);
    Expr integrand;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!M(i, j).is_zero())
                integrand += subst(M(i, j), scaled) * Expr::v(i + 1) * Expr::v(j + 1);
    return integrate_unit((1 - s) * integrand);
}

Expr base_homotopy1(const std::vector<Expr> &a, int n)
{
    for (int i = 0; i < n; ++i) {
        if (!is_basic(a[i]))
            throw ReconstructionError("1-form component " + a[i].to_string() + " is not basic");
        require_pole_free_at_origin(a[i], n);
        for (int j = i + 1; j < n; ++j)
            if (!(diff(a[i], VarId::q(j + 1)) == diff(a[j], VarId::q(i + 1))))
                throw ReconstructionError("1-form is not closed at " + cell_label("da", {i, j}));
    }
    const Expr s = Expr::var(homotopy_variable());
    const Bindings scaled = scale_vars(position_vars(n), s);
    Expr integrand;
    for (int i = 0; i < n; ++i)
        if (!a[i].is_zero())
            integrand += subst(a[i], scaled) * Expr::q(i + 1);
    Expr c = integrate_unit(integrand);
    for (int i = 0; i < n; ++i)
        if (!(diff(c, VarId::q(i + 1)) == a[i]))
            throw Error("base homotopy failed to reproduce its 1-form");
    return c;
}

std::vector<Expr> base_homotopy2(const TensorField &Omega)
{
    const int n = Omega.dim();
    require_basic_two_form(Omega, n);
    for (const auto &e : Omega.entries())
        require_pole_free_at_origin(e, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (!(diff(Omega(i, j), VarId::q(k + 1)) + diff(Omega(j, k), VarId::q(i + 1)) +
                      diff(Omega(k, i), VarId::q(j + 1)))
                         .is_zero())
                    throw ReconstructionError("2-form is not closed at " + cell_label("dOmega", {i, j, k}));

    const Expr s = Expr::var(homotopy_variable());
    const Bindings scaled = scale_vars(position_vars(n), s);
    std::vector<Expr> b(n);
    for (int i = 0; i < n; ++i) {
        Expr integrand;
        for (int k = 0; k < n; ++k)
            if (!Omega(k, i).is_zero())
                integrand += s * Expr::q(k + 1) * subst(Omega(k, i), scaled);
        b[i] = integrate_unit(integrand);
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (!(diff(b[i], VarId::q(k + 1)) - diff(b[k], VarId::q(i + 1)) == Omega(k, i)))
                throw Error("base homotopy failed to reproduce its 2-form");
    return b;
}

Certificate reconstruct_dissipative(const SodeGeometry &geo, const TensorField &g)
{
    const int n = geo.dim();
    ConditionReport pre = check_multiplier_dissipative(geo, g);
    if (!pre.pass)
        throw ReconstructionError("g does not satisfy the thm3 conditions (first failing cell " +
                                  pre.failures().front()->label + ")");

    Certificate cert;
    cert.kind = CertificateKind::dissipative;
    Expr F = vertical_homotopy2(g);
    Expr D = vertical_homotopy2(nabla_tensor02(geo.sode, geo.gamma, g));

    // What is left after the fibre homotopies must be affine in v:
    // rho_i = P_ki(q) v^k + Q_i(q).
    TensorField P = TensorField::matrix02(n);
    std::vector<Expr> Q(n);
    const auto vv = velocity_vars(n);
    for (int i = 0; i < n; ++i) {
        Expr rho = lagrange_operator(geo.sode, F, i) - vertical_apply(i, D);
        std::vector<std::pair<Monomial, Expr>> parts;
        try {
            parts = coefficients_in(rho, vv);
        } catch (const NotPolynomialIn &) {
            throw ReconstructionError("gauge residual is not polynomial in the velocities");
        }
        for (const auto &[mono, coeff] : parts) {
            if (mono.total_degree() == 0) {
                Q[i] = coeff;
                continue;
            }
            if (mono.total_degree() != 1)
                throw ReconstructionError("gauge residual is not affine in the velocities");
            VarId v = VarId::from_key(mono.powers().front().var);
            P(v.index - 1, i) = coeff;
        }
    }

    Expr L = F;
    if (!P.is_zero()) {
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (!(P(k, i) + P(i, k)).is_zero())
                    throw ReconstructionError("velocity part of the gauge residual is not antisymmetric");
        std::vector<Expr> b = base_homotopy2(P.scaled(Expr(-1)));
        Expr term;
        for (int i = 0; i < n; ++i)
            term += b[i] * Expr::v(i + 1);
        L += term;
        cert.gauge.push_back("L += " + term.to_string());
    }

    bool any_q = false;
    for (const auto &qi : Q)
        any_q = any_q || !qi.is_zero();
    if (any_q) {
        bool closed = true;
        for (int i = 0; i < n && closed; ++i)
            for (int j = i + 1; j < n && closed; ++j)
                closed = diff(Q[i], VarId::q(j + 1)) == diff(Q[j], VarId::q(i + 1));
        if (closed) {
            Expr c = base_homotopy1(Q, n);
            L += c;
            cert.gauge.push_back("L += " + c.to_string());
        } else {
            Expr a;
            for (int i = 0; i < n; ++i)
                a += Q[i] * Expr::v(i + 1);
            D += a;
            cert.gauge.push_back("D += " + a.to_string());
        }
    }

    cert.L = L;
    cert.D = D;
    if (!verify_dissipative(geo.sode, L, D).pass || !(hessian(L, n) == g))
        throw Error("reconstructed dissipative certificate failed verification");
    return cert;
}

Certificate reconstruct_gyroscopic(const SodeGeometry &geo, const TensorField &g)
{
    const int n = geo.dim();
    ConditionReport pre = check_multiplier_gyroscopic(geo, g);
    if (!pre.pass)
        throw ReconstructionError("g does not satisfy the thm4 conditions (first failing cell " +
                                  pre.failures().front()->label + ")");

    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            for (int l = k + 1; l < n; ++l)
                if (!is_basic(curvature_cycle(g, geo.curvature, i, k, l)))
                    throw ReconstructionError("curvature cycle is not basic at " + cell_label("RCycle", {i, k, l}));

    Certificate cert;
    Expr F = vertical_homotopy2(g);
    std::vector<Expr> theta(n);
    for (int i = 0; i < n; ++i)
        theta[i] = vertical_apply(i, F);

    TensorField omega = TensorField::matrix02(n, Symmetry::antisymmetric);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Expr w = geo.apply_horizontal(j, theta[i]) - geo.apply_horizontal(i, theta[j]);
            if (!is_basic(w))
                throw ReconstructionError("2-form " + cell_label("omega", {i, j}) + " is not basic");
            omega(i, j) = w;
            omega(j, i) = -w;
        }

    // d omega must reproduce the (negated) curvature cycle.
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            for (int l = k + 1; l < n; ++l) {
                Expr dw = diff(omega(k, l), VarId::q(i + 1)) + diff(omega(l, i), VarId::q(k + 1)) +
                          diff(omega(i, k), VarId::q(l + 1));
                if (!(dw + curvature_cycle(g, geo.curvature, i, k, l)).is_zero())
                    throw ReconstructionError("d omega does not match the curvature cycle at " +
                                              cell_label("RCycle", {i, k, l}));
            }

    std::vector<Expr> rho(n);
    for (int i = 0; i < n; ++i) {
        rho[i] = lagrange_operator(geo.sode, F, i) - gyroscopic_force(omega, i, n);
        if (!is_basic(rho[i]))
            throw ReconstructionError("gauge residual is not basic");
    }
    Expr L = F;
    bool any = false;
    for (const auto &r : rho)
        any = any || !r.is_zero();
    if (any) {
        Expr c = base_homotopy1(rho, n);
        L += c;
        cert.gauge.push_back("L += " + c.to_string());
    }

    cert.kind = omega.is_zero() ? CertificateKind::classical : CertificateKind::gyroscopic;
    cert.L = L;
    cert.omega = omega;
    if (!verify_gyroscopic(geo.sode, L, omega).pass || !(hessian(L, n) == g))
        throw Error("reconstructed gyroscopic certificate failed verification");
    return cert;
}

ConditionReport verify_dissipative(const Sode &s, const Expr &L, const Expr &D)
{
    const int n = s.dim();
    ConditionReport r;
    r.suite = "verify-dissipative";
    for (int i = 0; i < n; ++i)
        r.add(cell_label("EL", {i}), lagrange_operator(s, L, i) - vertical_apply(i, D));
    r.record_det(hessian(L, n));
    return r;
}

ConditionReport verify_gyroscopic(const Sode &s, const Expr &L, const TensorField &omega)
{
    const int n = s.dim();
    require_basic_two_form(omega, n);
    ConditionReport r;
    r.suite = "verify-gyroscopic";
    for (int i = 0; i < n; ++i)
        r.add(cell_label("EL", {i}), lagrange_operator(s, L, i) - gyroscopic_force(omega, i, n));
    r.record_det(hessian(L, n));
    return r;
}

namespace
{

Sode solve_forward(const Expr &L, const std::vector<Expr> &force, int n, const std::vector<std::string> &params)
{
    if (L.depends_on_kind(VarKind::time) || L.depends_on_kind(VarKind::jet, 2))
        throw Error("L must depend on q, v and parameters only");
    TensorField g = hessian(L, n);
    TensorField ginv;
    try {
        ginv = inverse(g);
    } catch (const PoleError &) {
        throw PoleError("velocity Hessian of L is singular");
    }
    std::vector<Expr> rhs(n);
    for (int j = 0; j < n; ++j) {
        Expr lv = vertical_apply(j, L);
        Expr e = diff(L, VarId::q(j + 1)) + force[j];
        for (int k = 0; k < n; ++k)
            e -= Expr::v(k + 1) * diff(lv, VarId::q(k + 1));
        rhs[j] = e;
    }
    Sode s{ExprContext::explicit_system(n, params), std::vector<Expr>(n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s.f[i] += ginv(i, j) * rhs[j];
    return s;
}

} // namespace

Sode forward_sode(const Expr &L, const Expr &D, int n, const std::vector<std::string> &params)
{
    std::vector<Expr> force(n);
    for (int j = 0; j < n; ++j)
        force[j] = vertical_apply(j, D);
    Sode s = solve_forward(L, force, n, params);
    if (!verify_dissipative(s, L, D).pass)
        throw Error("forward system does not satisfy its own Lagrange equations");
    return s;
}

Sode forward_sode_gyroscopic(const Expr &L, const TensorField &omega, int n, const std::vector<std::string> &params)
{
    require_basic_two_form(omega, n);
    std::vector<Expr> force(n);
    for (int j = 0; j < n; ++j)
        force[j] = gyroscopic_force(omega, j, n);
    Sode s = solve_forward(L, force, n, params);
    if (!verify_gyroscopic(s, L, omega).pass)
        throw Error("forward system does not satisfy its own Lagrange equations");
    return s;
}

} // namespace invlag
