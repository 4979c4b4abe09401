#ifndef INVLAG_SOLVER_HPP
#define INVLAG_SOLVER_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invlag/conditions.hpp"
#include "invlag/linsolve.hpp"

namespace invlag
{

/// g_ij = fixed_ij + sum_k c_ijk beta_k, symmetric by construction (only
/// i <= j is stored); omega_ij likewise for i < j.
struct AnsatzProblem {
    Suite suite = Suite::thm3;
    int n = 0;
    std::map<std::pair<int, int>, std::vector<Expr>> g_basis;
    std::map<std::pair<int, int>, std::vector<Expr>> omega_basis;
    std::optional<TensorField> g_fixed;

    /// Every entry i <= j gets `basis`.
    static AnsatzProblem full(Suite suite, int n, const std::vector<Expr> &basis);
    /// Only diagonal entries get `basis`.
    static AnsatzProblem diagonal(Suite suite, int n, const std::vector<Expr> &basis);
    /// Every omega entry i < j gets `basis`.
    void add_omega(const std::vector<Expr> &basis);

    struct Unknown {
        bool omega;
        int i, j;
        Expr beta;
    };
    /// Unknowns in declaration order: g entries row-major, then omega.
    std::vector<Unknown> unknowns() const;
};

/// {1}.
std::vector<Expr> constant_basis();
/// Monomials in the listed positions (1-based; all n when empty) of total
/// degree <= d, graded then lexicographic.
std::vector<Expr> polynomial_in_q_basis(int n, int d, const std::vector<int> &positions = {});

struct SolutionSpace {
    AnsatzProblem problem;
    std::size_t unknown_count = 0;
    std::size_t equation_count = 0;
    std::size_t rank = 0;
    bool consistent = true;
    std::string inconsistent_label;
    std::vector<Vector> basis;
    Vector particular;
    bool inhomogeneous = false;

    std::size_t dimension() const { return basis.size(); }
    TensorField g_of(const Vector &coeffs, bool with_fixed = true) const;
    TensorField omega_of(const Vector &coeffs) const;
    /// Entries (i <= j, 0-based) carrying unknowns that vanish in every solution.
    std::vector<std::pair<int, int>> forced_zero_entries() const;
};

LinearSystem assemble(const SodeGeometry &geo, const AnsatzProblem &p);
SolutionSpace solve(const SodeGeometry &geo, const AnsatzProblem &p);

struct Representative {
    bool found = false;
    TensorField g;
    TensorField omega;
    Expr det;
    Vector coefficients; // over the nullspace basis
    /// The whole box was searched without success.
    bool exhausted = false;
    /// No member of the solution space can be non-singular.
    bool definitive_none = false;
    std::string reason;
};

/// Searches integer combinations of the nullspace basis with entries in
/// [-bound, bound] for det g != 0. Singular-by-structure spaces and spaces
/// whose generic determinant vanishes are reported as definitive.
Representative find_nonsingular(const SolutionSpace &space, const SodeGeometry &geo, int bound);

} // namespace invlag

#endif // INVLAG_SOLVER_HPP
