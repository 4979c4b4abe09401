#include "invlag/solver.hpp"

#include <functional>

namespace invlag
{

AnsatzProblem AnsatzProblem::full(Suite suite, int n, const std::vector<Expr> &basis)
{
    AnsatzProblem p;
    p.suite = suite;
    p.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            p.g_basis[{i, j}] = basis;
    return p;
}

AnsatzProblem AnsatzProblem::diagonal(Suite suite, int n, const std::vector<Expr> &basis)
{
    AnsatzProblem p;
    p.suite = suite;
    p.n = n;
    for (int i = 0; i < n; ++i)
        p.g_basis[{i, i}] = basis;
    return p;
}

void AnsatzProblem::add_omega(const std::vector<Expr> &basis)
{
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            omega_basis[{i, j}] = basis;
}

std::vector<AnsatzProblem::Unknown> AnsatzProblem::unknowns() const
{
    std::vector<Unknown> out;
    for (const auto &[ij, basis] : g_basis)
        for (const auto &b : basis)
            out.push_back({false, ij.first, ij.second, b});
    for (const auto &[ij, basis] : omega_basis)
        for (const auto &b : basis)
            out.push_back({true, ij.first, ij.second, b});
    return out;
}

std::vector<Expr> constant_basis() { return {Expr(1)}; }

std::vector<Expr> polynomial_in_q_basis(int n, int d, const std::vector<int> &positions)
{
    std::vector<int> vars = positions;
    if (vars.empty())
        for (int i = 1; i <= n; ++i)
            vars.push_back(i);
    std::vector<Expr> out;
    std::function<void(std::size_t, int, Expr)> rec = [&](std::size_t from, int left, Expr acc) {
        if (left == 0) {
            out.push_back(acc);
            return;
        }
        for (std::size_t k = from; k < vars.size(); ++k)
            rec(k, left - 1, acc * Expr::q(vars[k]));
    };
    for (int deg = 0; deg <= d; ++deg)
        rec(0, deg, Expr(1));
    return out;
}

TensorField SolutionSpace::g_of(const Vector &coeffs, bool with_fixed) const
{
    const int n = problem.n;
    TensorField g = TensorField::matrix02(n, Symmetry::symmetric);
    if (with_fixed && problem.g_fixed)
        g = *problem.g_fixed;
    auto unknowns = problem.unknowns();
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        const auto &k = unknowns[u];
        if (k.omega || coeffs[u] == 0)
            continue;
        g(k.i, k.j) += Expr(coeffs[u]) * k.beta;
        if (k.i != k.j)
            g(k.j, k.i) = g(k.i, k.j);
    }
    g.set_symmetry(Symmetry::symmetric);
    return g;
}

TensorField SolutionSpace::omega_of(const Vector &coeffs) const
{
    const int n = problem.n;
    TensorField w = TensorField::matrix02(n, Symmetry::antisymmetric);
    auto unknowns = problem.unknowns();
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        const auto &k = unknowns[u];
        if (!k.omega || coeffs[u] == 0)
            continue;
        w(k.i, k.j) += Expr(coeffs[u]) * k.beta;
        w(k.j, k.i) = -w(k.i, k.j);
    }
    return w;
}

std::vector<std::pair<int, int>> SolutionSpace::forced_zero_entries() const
{
    std::vector<std::pair<int, int>> out;
    if (!consistent)
        return out;
    std::vector<TensorField> members;
    for (const auto &b : basis)
        members.push_back(g_of(b, false));
    if (inhomogeneous)
        members.push_back(g_of(particular, true));
    for (const auto &[ij, betas] : problem.g_basis) {
        if (betas.empty())
            continue;
        bool zero = true;
        for (const auto &m : members)
            zero = zero && m(ij.first, ij.second).is_zero();
        if (zero)
            out.push_back(ij);
    }
    return out;
}

namespace
{

using MonoKey = std::vector<std::pair<Var, std::uint32_t>>;

MonoKey key_of(const Monomial &m)
{
    MonoKey k;
    for (const auto &p : m.powers())
        k.emplace_back(p.var, p.exp);
    return k;
}

Poly lcm(const Poly &a, const Poly &b)
{
    if (a.is_constant())
        return b;
    if (b.is_constant())
        return a;
    Poly g = gcd(a, b);
    return *divide_exact(a * b, g);
}

std::vector<ConditionCell> cells_for(const SodeGeometry &geo, Suite suite, const TensorField &g,
                                     const TensorField &omega)
{
    return linear_cells(suite, geo, g, &omega);
}

} // namespace

LinearSystem assemble(const SodeGeometry &geo, const AnsatzProblem &p)
{
    if (!suite_is_linear(p.suite))
        throw Error("suite '" + suite_name(p.suite) + "' cannot be used for a multiplier search");
    if (p.n != geo.dim())
        throw Error("ansatz dimension does not match the system");
    if (!p.omega_basis.empty() && p.suite != Suite::gyroscopic)
        throw Error("omega unknowns require the gyroscopic suite");
    const int n = p.n;
    const auto unknowns = p.unknowns();
    const TensorField zero = TensorField::matrix02(n);

    std::vector<std::vector<ConditionCell>> per_unknown;
    for (const auto &u : unknowns) {
        if (u.omega && u.beta.depends_on_kind(VarKind::jet))
            throw Error("omega basis functions must depend on positions only");
        TensorField g = zero, w = zero;
        TensorField &t = u.omega ? w : g;
        t(u.i, u.j) = u.beta;
        t(u.j, u.i) = u.omega ? -u.beta : u.beta;
        per_unknown.push_back(cells_for(geo, p.suite, g, w));
    }
    std::vector<ConditionCell> fixed = cells_for(geo, p.suite, p.g_fixed ? *p.g_fixed : zero, zero);

    LinearSystem sys(unknowns.size());
    for (std::size_t c = 0; c < fixed.size(); ++c) {
        Poly den(Rational(1));
        for (const auto &cells : per_unknown)
            den = lcm(den, cells[c].residual.denominator());
        den = lcm(den, fixed[c].residual.denominator());
        const Expr scale = Expr::fraction(den, Poly(Rational(1)));

        std::map<MonoKey, std::pair<Vector, Rational>> rows;
        auto spread = [&](const Expr &r, std::size_t col, bool is_rhs) {
            if (r.is_zero())
                return;
            Expr num = r * scale;
            if (!num.is_polynomial())
                throw Error("internal: common denominator failed");
            Rational inv = 1 / num.denominator().constant_value();
            for (const auto &t : num.numerator().terms()) {
                auto &row = rows[key_of(t.mono)];
                if (row.first.empty())
                    row.first.assign(unknowns.size(), Rational(0));
                if (is_rhs)
                    row.second -= t.coeff * inv;
                else
                    row.first[col] += t.coeff * inv;
            }
        };
        for (std::size_t u = 0; u < per_unknown.size(); ++u)
            spread(per_unknown[u][c].residual, u, false);
        spread(fixed[c].residual, 0, true);
        for (auto &[mono, row] : rows)
            sys.add_row(std::move(row.first), std::move(row.second), fixed[c].label);
    }
    return sys;
}

SolutionSpace solve(const SodeGeometry &geo, const AnsatzProblem &p)
{
    LinearSystem sys = assemble(geo, p);
    LinearSolution sol = solve_linear(sys);

    SolutionSpace space;
    space.problem = p;
    space.unknown_count = sys.cols;
    space.equation_count = sys.size();
    space.rank = sol.rank;
    space.consistent = sol.consistent;
    space.inconsistent_label = sol.inconsistent_label;
    space.basis = sol.nullspace;
    space.particular = sol.particular;
    space.inhomogeneous = p.g_fixed.has_value();
    if (!space.consistent)
        return space;

    // Soundness re-check of every basis member against the suite.
    for (const auto &b : space.basis) {
        TensorField g = space.g_of(b, false), w = space.omega_of(b);
        for (const auto &cell : linear_cells(p.suite, geo, g, &w))
            if (!cell.residual.is_zero())
                throw Error("internal: nullspace member fails cell " + cell.label);
    }
    return space;
}

namespace
{

// Odometer over integer vectors with entries in [-m, m] and max |entry| == m,
// coordinates ordered 0, 1, -1, 2, -2, ...
class BoxEnumerator
{
public:
    BoxEnumerator(std::size_t k, int level) : k_(k), level_(level), idx_(k, 0) {}

    std::size_t steps = 0;

    bool next(Vector &out)
    {
        while (!done_) {
            bool hit = false;
            for (std::size_t i = 0; i < k_; ++i)
                if (value(idx_[i]) == level_ || value(idx_[i]) == -level_)
                    hit = true;
            out.assign(k_, Rational(0));
            for (std::size_t i = 0; i < k_; ++i)
                out[i] = value(idx_[i]);
            advance();
            ++steps;
            if (hit)
                return true;
        }
        return false;
    }

private:
    std::size_t k_;
    int level_;
    std::vector<int> idx_;
    bool done_ = false;

    static int value(int idx) { return idx == 0 ? 0 : (idx % 2 ? (idx + 1) / 2 : -(idx / 2)); }

    void advance()
    {
        const int top = 2 * level_;
        for (std::size_t i = k_; i-- > 0;) {
            if (idx_[i] < top) {
                ++idx_[i];
                return;
            }
            idx_[i] = 0;
        }
        done_ = true;
    }
};

constexpr std::size_t kSearchCap = 20000;
constexpr std::size_t kGenericDetMaxDim = 12;

} // namespace

Representative find_nonsingular(const SolutionSpace &space, const SodeGeometry &geo, int bound)
{
    Representative rep;
    const int n = space.problem.n;
    if (!space.consistent) {
        rep.definitive_none = true;
        rep.reason = "the linear system is inconsistent (" + space.inconsistent_label + ")";
        return rep;
    }
    if (space.basis.empty() && !space.inhomogeneous) {
        rep.definitive_none = true;
        rep.reason = "the solution space is trivial";
        return rep;
    }

    std::vector<TensorField> members;
    for (const auto &b : space.basis)
        members.push_back(space.g_of(b, false));
    TensorField base = space.inhomogeneous ? space.g_of(space.particular, true) : TensorField::matrix02(n);

    for (int i = 0; i < n; ++i) {
        bool zero_row = true;
        for (int j = 0; j < n && zero_row; ++j) {
            zero_row = base(i, j).is_zero();
            for (const auto &m : members)
                zero_row = zero_row && m(i, j).is_zero();
        }
        if (zero_row) {
            rep.definitive_none = true;
            rep.reason = "row " + std::to_string(i + 1) + " of g vanishes in every solution";
            return rep;
        }
    }

    if (members.size() <= kGenericDetMaxDim) {
        TensorField generic = base;
        for (std::size_t k = 0; k < members.size(); ++k)
            generic = generic + members[k].scaled(Expr::param("__c" + std::to_string(k + 1)));
        if (determinant(generic).is_zero()) {
            rep.definitive_none = true;
            rep.reason = "the determinant of the generic solution vanishes identically";
            return rep;
        }
    }

    auto accept = [&](const Vector &c) {
        TensorField g = base;
        Vector full(space.unknown_count, Rational(0));
        for (std::size_t k = 0; k < members.size(); ++k)
            if (c[k] != 0) {
                g = g + members[k].scaled(Expr(c[k]));
                for (std::size_t u = 0; u < full.size(); ++u)
                    full[u] += c[k] * space.basis[k][u];
            }
        Expr det = determinant(g);
        if (det.is_zero())
            return false;
        g.set_symmetry(Symmetry::symmetric);
        TensorField w = space.omega_of(full);
        for (const auto &cell : linear_cells(space.problem.suite, geo, g, &w))
            if (!cell.residual.is_zero())
                throw Error("internal: representative fails cell " + cell.label);
        rep.found = true;
        rep.g = g;
        rep.omega = w;
        rep.det = det;
        rep.coefficients = c;
        return true;
    };

    if (space.inhomogeneous && accept(Vector(members.size(), Rational(0))))
        return rep;
    std::size_t tried = 0;
    for (int level = 1; level <= bound; ++level) {
        BoxEnumerator it(members.size(), level);
        Vector c;
        while (it.next(c)) {
            if (tried + it.steps > kSearchCap) {
                rep.reason = "search stopped after " + std::to_string(kSearchCap) + " candidates";
                return rep;
            }
            if (accept(c))
                return rep;
        }
        tried += it.steps;
    }
    rep.exhausted = true;
    rep.reason = "no non-singular combination with coefficients in [-" + std::to_string(bound) + ", " +
                 std::to_string(bound) + "]";
    return rep;
}

} // namespace invlag
