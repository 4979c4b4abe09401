#include "invlag/conditions.hpp"

#include <algorithm>

namespace invlag
{

std::string suite_name(Suite s)
{
    switch (s) {
    case Suite::classical: return "classical";
    case Suite::dissipative: return "dissipative";
    case Suite::gyroscopic: return "gyroscopic";
    case Suite::thm3: return "thm3";
    case Suite::thm4: return "thm4";
    case Suite::prop2a: return "prop2a";
    case Suite::rayleigh: return "rayleigh";
    case Suite::implicit: return "implicit";
    }
    return "?";
}

Suite suite_from_name(const std::string &name)
{
    for (Suite s : {Suite::classical, Suite::dissipative, Suite::gyroscopic, Suite::thm3, Suite::thm4, Suite::prop2a,
                    Suite::rayleigh, Suite::implicit})
        if (suite_name(s) == name)
            return s;
    throw Error("unknown suite '" + name + "'");
}

void ConditionReport::add(std::string label, Expr residual)
{
    bool ok = residual.is_zero();
    pass = pass && ok;
    cells.push_back({std::move(label), std::move(residual), ok});
}

void ConditionReport::record_det(const TensorField &g)
{
    has_det = true;
    det = determinant(g);
    det_nonzero = !det.is_zero();
    det_has_zero_locus = det_nonzero && !det.numerator().is_constant();
    if (!det_nonzero)
        notes.push_back("det g vanishes identically");
    else if (det_has_zero_locus)
        notes.push_back("det g vanishes where " + Expr::fraction(det.numerator(), Poly(Rational(1))).to_string() +
                        " = 0");
}

void ConditionReport::append(const ConditionReport &other)
{
    for (const auto &c : other.cells)
        add(c.label, c.residual);
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::vector<const ConditionCell *> ConditionReport::failures() const
{
    std::vector<const ConditionCell *> out;
    for (const auto &c : cells)
        if (!c.pass)
            out.push_back(&c);
    return out;
}

bool ConditionReport::recheck() const
{
    bool all = true;
    for (const auto &c : cells) {
        if (c.pass != c.residual.is_zero())
            return false;
        all = all && c.pass;
    }
    return all == pass;
}

namespace
{

void require_matrix(const TensorField &g, int n, const char *what)
{
    if (g.dim() != n || g.upper() != 0 || g.lower() != 2)
        throw Error(std::string(what) + " must be an n x n (0,2) tensor with n = " + std::to_string(n));
}

void require_symmetric(const TensorField &g, int n)
{
    require_matrix(g, n, "g");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(g(i, j) == g(j, i)))
                throw Error("g is not symmetric at " + cell_label("g", {i, j}));
}

Expr phi_skew(const SodeGeometry &geo, const TensorField &g, int i, int j)
{
    Expr e;
    for (int k = 0; k < geo.dim(); ++k)
        e += g(i, k) * geo.phi(k, j) - g(j, k) * geo.phi(k, i);
    return e;
}

void hd1_cells(std::vector<ConditionCell> &out, const TensorField &g, int n)
{
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                out.push_back({cell_label("HD1", {i, j, k}), vertical_apply(k, g(i, j)) - vertical_apply(j, g(i, k))});
}

void nabla_cells(std::vector<ConditionCell> &out, const TensorField &ng, int n, const char *name)
{
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            out.push_back({cell_label(name, {i, j}), ng(i, j)});
}

// Cyclic q-derivative sum of omega contracted with v: (d_k w_ij + d_i w_jk + d_j w_ki) v^k.
Expr omega_cycle(const TensorField &w, int i, int j, int n)
{
    Expr e;
    for (int k = 0; k < n; ++k) {
        Expr c = diff(w(i, j), VarId::q(k + 1)) + diff(w(j, k), VarId::q(i + 1)) + diff(w(k, i), VarId::q(j + 1));
        if (!c.is_zero())
            e += c * Expr::v(k + 1);
    }
    return e;
}

ConditionReport to_report(Suite suite, std::vector<ConditionCell> cells)
{
    ConditionReport r;
    r.suite = suite_name(suite);
    for (auto &c : cells)
        r.add(std::move(c.label), std::move(c.residual));
    return r;
}

} // namespace

Expr curvature_cycle(const TensorField &g, const TensorField &R, int i, int k, int l)
{
    Expr e;
    for (int j = 0; j < g.dim(); ++j)
        e += g(i, j) * R(j, k, l) + g(l, j) * R(j, i, k) + g(k, j) * R(j, l, i);
    return e;
}

void require_basic_two_form(const TensorField &omega, int n)
{
    require_matrix(omega, n, "omega");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!(omega(i, j) + omega(j, i)).is_zero())
                throw Error("omega is not antisymmetric at " + cell_label("omega", {i, j}));
            if (omega(i, j).depends_on_kind(VarKind::jet) || omega(i, j).depends_on_kind(VarKind::time))
                throw Error("omega is not basic: " + cell_label("omega", {i, j}) + " depends on velocities");
        }
}

bool suite_is_linear(Suite suite)
{
    switch (suite) {
    case Suite::classical:
    case Suite::gyroscopic:
    case Suite::thm3:
    case Suite::thm4:
    case Suite::prop2a:
    case Suite::rayleigh:
        return true;
    default:
        return false;
    }
}

std::vector<ConditionCell> linear_cells(Suite suite, const SodeGeometry &geo, const TensorField &g,
                                        const TensorField *omega)
{
    const int n = geo.dim();
    require_matrix(g, n, "g");
    std::vector<ConditionCell> out;
    switch (suite) {
    case Suite::classical: {
        hd1_cells(out, g, n);
        nabla_cells(out, nabla_tensor02(geo.sode, geo.gamma, g), n, "NablaG");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                out.push_back({cell_label("PhiSym", {i, j}), phi_skew(geo, g, i, j)});
        break;
    }
    case Suite::gyroscopic: {
        hd1_cells(out, g, n);
        nabla_cells(out, nabla_tensor02(geo.sode, geo.gamma, g), n, "Hg2");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Expr e = phi_skew(geo, g, i, j);
                if (omega)
                    e -= omega_cycle(*omega, i, j, n);
                out.push_back({cell_label("Hg3", {i, j}), e});
            }
        break;
    }
    case Suite::thm3: {
        hd1_cells(out, g, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Expr e = geo.apply_horizontal(i, g(j, k)) - geo.apply_horizontal(j, g(i, k));
                    for (int l = 0; l < n; ++l)
                        e += g(i, l) * geo.theta(l, j, k) - g(j, l) * geo.theta(l, i, k);
                    out.push_back({cell_label("DHSym", {i, j, k}), e});
                }
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l)
                    out.push_back({cell_label("RCycle", {i, k, l}), curvature_cycle(g, geo.curvature, i, k, l)});
        break;
    }
    case Suite::thm4: {
        hd1_cells(out, g, n);
        nabla_cells(out, nabla_tensor02(geo.sode, geo.gamma, g), n, "NablaG");
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l) {
                Expr e = phi_skew(geo, g, l, k);
                for (int i = 0; i < n; ++i) {
                    Expr c = curvature_cycle(g, geo.curvature, i, k, l);
                    if (!c.is_zero())
                        e -= c * Expr::v(i + 1);
                }
                out.push_back({cell_label("PhiR", {k, l}), e});
            }
        break;
    }
    case Suite::prop2a:
        hd1_cells(out, g, n);
        nabla_cells(out, nabla_tensor02(geo.sode, geo.gamma, g), n, "NablaG");
        break;
    case Suite::rayleigh: {
        TensorField ng = nabla_tensor02(geo.sode, geo.gamma, g);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    out.push_back({cell_label("Rayleigh", {i, j, k}), vertical_apply(k, ng(i, j))});
        break;
    }
    default:
        throw Error("suite '" + suite_name(suite) + "' is not linear in the multiplier");
    }
    return out;
}

ConditionReport check_classical(const SodeGeometry &geo, const TensorField &g)
{
    require_symmetric(g, geo.dim());
    ConditionReport r = to_report(Suite::classical, linear_cells(Suite::classical, geo, g));
    r.record_det(g);
    return r;
}

ConditionReport check_dissipative(const SodeGeometry &geo, const TensorField &g, const Expr &D)
{
    const int n = geo.dim();
    require_symmetric(g, n);
    std::vector<ConditionCell> cells;
    hd1_cells(cells, g, n);
    TensorField ng = nabla_tensor02(geo.sode, geo.gamma, g);
    std::vector<Expr> vd;
    for (int i = 0; i < n; ++i)
        vd.push_back(vertical_apply(i, D));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            cells.push_back({cell_label("HD2", {i, j}), ng(i, j) - vertical_apply(i, vd[j])});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            cells.push_back({cell_label("HD3", {i, j}), phi_skew(geo, g, i, j) - (geo.apply_horizontal(i, vd[j]) -
                                                                                 geo.apply_horizontal(j, vd[i]))});
    ConditionReport r = to_report(Suite::dissipative, std::move(cells));
    r.record_det(g);
    return r;
}

ConditionReport check_gyroscopic(const SodeGeometry &geo, const TensorField &g, const TensorField &omega)
{
    require_symmetric(g, geo.dim());
    require_basic_two_form(omega, geo.dim());
    ConditionReport r = to_report(Suite::gyroscopic, linear_cells(Suite::gyroscopic, geo, g, &omega));
    r.record_det(g);
    return r;
}

ConditionReport check_multiplier_dissipative(const SodeGeometry &geo, const TensorField &g)
{
    require_symmetric(g, geo.dim());
    ConditionReport r = to_report(Suite::thm3, linear_cells(Suite::thm3, geo, g));
    r.record_det(g);
    return r;
}

ConditionReport check_multiplier_gyroscopic(const SodeGeometry &geo, const TensorField &g)
{
    const int n = geo.dim();
    require_symmetric(g, n);
    ConditionReport r = to_report(Suite::thm4, linear_cells(Suite::thm4, geo, g));

    // Smoothness on the zero section: no denominator of g or of g.Phi may
    // vanish identically at v = 0.
    Bindings zero_v;
    for (int i = 1; i <= n; ++i)
        zero_v[VarId::v(i)] = Expr();
    Expr offending;
    auto inspect = [&](const Expr &e) {
        if (!offending.is_zero() || e.is_polynomial())
            return;
        Expr den = Expr::fraction(e.denominator(), Poly(Rational(1)));
        if (subst(den, zero_v).is_zero())
            offending = den;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            inspect(g(i, j));
            Expr gp;
            for (int k = 0; k < n; ++k)
                gp += g(i, k) * geo.phi(k, j);
            inspect(gp);
        }
    r.add("ZeroSection", offending);
    r.record_det(g);
    return r;
}

ConditionReport check_prop2a(const SodeGeometry &geo, const TensorField &g)
{
    require_symmetric(g, geo.dim());
    ConditionReport r = to_report(Suite::prop2a, linear_cells(Suite::prop2a, geo, g));
    r.record_det(g);
    return r;
}

ConditionReport check_rayleigh(const SodeGeometry &geo, const TensorField &g)
{
    require_symmetric(g, geo.dim());
    ConditionReport r = to_report(Suite::rayleigh, linear_cells(Suite::rayleigh, geo, g));
    if (!check_multiplier_dissipative(geo, g).pass)
        r.notes.push_back("g does not satisfy the thm3 conditions");
    r.record_det(g);
    return r;
}

ConditionReport check_classical(const Sode &s, const TensorField &g) { return check_classical(SodeGeometry(s), g); }
ConditionReport check_dissipative(const Sode &s, const TensorField &g, const Expr &D)
{
    return check_dissipative(SodeGeometry(s), g, D);
}
ConditionReport check_gyroscopic(const Sode &s, const TensorField &g, const TensorField &omega)
{
    return check_gyroscopic(SodeGeometry(s), g, omega);
}
ConditionReport check_multiplier_dissipative(const Sode &s, const TensorField &g)
{
    return check_multiplier_dissipative(SodeGeometry(s), g);
}
ConditionReport check_multiplier_gyroscopic(const Sode &s, const TensorField &g)
{
    return check_multiplier_gyroscopic(SodeGeometry(s), g);
}
ConditionReport check_prop2a(const Sode &s, const TensorField &g) { return check_prop2a(SodeGeometry(s), g); }
ConditionReport check_rayleigh(const Sode &s, const TensorField &g) { return check_rayleigh(SodeGeometry(s), g); }

} // namespace invlag
