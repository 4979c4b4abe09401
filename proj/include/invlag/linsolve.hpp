#ifndef INVLAG_LINSOLVE_HPP
#define INVLAG_LINSOLVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "invlag/poly.hpp"

namespace invlag
{

using Vector = std::vector<Rational>;

/// Dense system A x = b over Q with one label per row.
struct LinearSystem {
    std::size_t cols = 0;
    std::vector<Vector> rows;
    Vector rhs;
    std::vector<std::string> labels;

    explicit LinearSystem(std::size_t n = 0) : cols(n) {}
    void add_row(Vector row, Rational b, std::string label);
    std::size_t size() const { return rows.size(); }
};

struct LinearSolution {
    bool consistent = true;
    /// Label of an equation reducing to 0 = c with c != 0.
    std::string inconsistent_label;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    Vector particular;
    /// One vector per free column, in column order, scaled to primitive
    /// integers with a positive entry at its free column.
    std::vector<Vector> nullspace;
};

/// Exact reduced row-echelon solve. Rows are folded in one at a time
/// against the current echelon basis.
LinearSolution solve_linear(const LinearSystem &sys);

/// Scales v by a positive rational so that its entries are coprime integers.
Vector primitive_integer(Vector v);

} // namespace invlag

#endif // INVLAG_LINSOLVE_HPP
