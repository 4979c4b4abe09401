#ifndef INVLAG_TENSOR_HPP
#define INVLAG_TENSOR_HPP

#include <array>
#include <initializer_list>
#include <string>
#include <vector>

#include "invlag/expr.hpp"

namespace invlag
{

/// Symmetry declared on the last two (lower) indices.
enum class Symmetry { none, symmetric, antisymmetric };

/// Index-shaped array of expressions over an n-dimensional base. The
/// first `upper` indices are contravariant. Indices are 0-based.
class TensorField
{
public:
    TensorField() = default;
    TensorField(int n, int upper, int lower, Symmetry sym = Symmetry::none);

    static TensorField matrix02(int n, Symmetry sym = Symmetry::none) { return {n, 0, 2, sym}; }
    static TensorField endomorphism(int n) { return {n, 1, 1}; }
    static TensorField identity02(int n);

    int dim() const { return n_; }
    int upper() const { return upper_; }
    int lower() const { return lower_; }
    int rank() const { return upper_ + lower_; }
    Symmetry symmetry() const { return sym_; }
    void set_symmetry(Symmetry s) { sym_ = s; }

    Expr &operator()(int i) { return data_[offset({i})]; }
    const Expr &operator()(int i) const { return data_[offset({i})]; }
    Expr &operator()(int i, int j) { return data_[offset({i, j})]; }
    const Expr &operator()(int i, int j) const { return data_[offset({i, j})]; }
    Expr &operator()(int i, int j, int k) { return data_[offset({i, j, k})]; }
    const Expr &operator()(int i, int j, int k) const { return data_[offset({i, j, k})]; }
    Expr &operator()(int i, int j, int k, int l) { return data_[offset({i, j, k, l})]; }
    const Expr &operator()(int i, int j, int k, int l) const { return data_[offset({i, j, k, l})]; }

    const std::vector<Expr> &entries() const { return data_; }
    std::vector<Expr> &entries() { return data_; }
    /// Multi-index of flat entry `flat`.
    std::vector<int> index_of(std::size_t flat) const;

    bool is_zero() const;
    /// Checks the declared symmetry entry-wise.
    bool symmetry_holds() const;

    TensorField operator+(const TensorField &o) const;
    TensorField operator-(const TensorField &o) const;
    TensorField scaled(const Expr &c) const;

    friend bool operator==(const TensorField &a, const TensorField &b);

private:
    int n_ = 0;
    int upper_ = 0;
    int lower_ = 0;
    Symmetry sym_ = Symmetry::none;
    std::vector<Expr> data_;

    std::size_t offset(std::initializer_list<int> idx) const;
};

/// Determinant of a square (rank-2) tensor by fraction-free expansion.
Expr determinant(const TensorField &m);

/// Inverse of a square matrix tensor; throws PoleError when singular.
TensorField inverse(const TensorField &m);

/// Human-readable label with 1-based indices, e.g. "PhiSym[1,2]".
std::string cell_label(const std::string &name, std::initializer_list<int> zero_based);

} // namespace invlag

#endif // INVLAG_TENSOR_HPP
