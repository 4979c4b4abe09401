#include "invlag/tensor.hpp"

#include <stdexcept>

namespace invlag
{

TensorField::TensorField(int n, int upper, int lower, Symmetry sym)
    : n_(n), upper_(upper), lower_(lower), sym_(sym)
{
    std::size_t size = 1;
    for (int r = 0; r < upper + lower; ++r)
        size *= static_cast<std::size_t>(n);
    data_.assign(size, Expr());
}

TensorField TensorField::identity02(int n)
{
    TensorField g = matrix02(n, Symmetry::symmetric);
    for (int i = 0; i < n; ++i)
        g(i, i) = Expr(1);
    return g;
}

std::size_t TensorField::offset(std::initializer_list<int> idx) const
{
    if (static_cast<int>(idx.size()) != rank())
        throw std::out_of_range("tensor index of wrong rank");
    std::size_t off = 0;
    for (int i : idx) {
        if (i < 0 || i >= n_)
            throw std::out_of_range("tensor index out of range");
        off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    }
    return off;
}

std::vector<int> TensorField::index_of(std::size_t flat) const
{
    std::vector<int> idx(static_cast<std::size_t>(rank()));
    for (int r = rank() - 1; r >= 0; --r) {
        idx[static_cast<std::size_t>(r)] = static_cast<int>(flat % static_cast<std::size_t>(n_));
        flat /= static_cast<std::size_t>(n_);
    }
    return idx;
}

bool TensorField::is_zero() const
{
    for (const auto &e : data_)
        if (!e.is_zero())
            return false;
    return true;
}

bool TensorField::symmetry_holds() const
{
    if (sym_ == Symmetry::none || rank() < 2)
        return true;
    for (std::size_t f = 0; f < data_.size(); ++f) {
        auto idx = index_of(f);
        std::size_t r = idx.size();
        std::swap(idx[r - 1], idx[r - 2]);
        std::size_t g = 0;
        for (int i : idx)
            g = g * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
        const Expr &a = data_[f];
        const Expr &b = data_[g];
        if (sym_ == Symmetry::symmetric ? !(a == b) : !(a + b).is_zero())
            return false;
    }
    return true;
}

TensorField TensorField::operator+(const TensorField &o) const
{
    if (o.n_ != n_ || o.upper_ != upper_ || o.lower_ != lower_)
        throw std::invalid_argument("tensor shape mismatch");
    TensorField r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = data_[i] + o.data_[i];
    if (o.sym_ != sym_)
        r.sym_ = Symmetry::none;
    return r;
}

TensorField TensorField::operator-(const TensorField &o) const { return *this + o.scaled(Expr(-1)); }

TensorField TensorField::scaled(const Expr &c) const
{
    TensorField r = *this;
    for (auto &e : r.data_)
        e = e * c;
    return r;
}

bool operator==(const TensorField &a, const TensorField &b)
{
    return a.n_ == b.n_ && a.upper_ == b.upper_ && a.lower_ == b.lower_ && a.data_ == b.data_;
}

namespace
{

std::vector<std::vector<Expr>> as_rows(const TensorField &m)
{
    if (m.rank() != 2)
        throw std::invalid_argument("matrix operation on a tensor of rank " + std::to_string(m.rank()));
    const int n = m.dim();
    std::vector<std::vector<Expr>> a(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i][j] = m(i, j);
    return a;
}

} // namespace

Expr determinant(const TensorField &m)
{
    auto a = as_rows(m);
    const int n = m.dim();
    // Gaussian elimination over the field of rational functions.
    Expr det(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (!a[r][c].is_zero()) {
                p = r;
                break;
            }
        if (p < 0)
            return Expr();
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det = det * a[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (a[r][c].is_zero())
                continue;
            Expr factor = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k)
                a[r][k] = a[r][k] - factor * a[c][k];
        }
    }
    return det;
}

TensorField inverse(const TensorField &m)
{
    auto a = as_rows(m);
    const int n = m.dim();
    std::vector<std::vector<Expr>> inv(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        inv[i][i] = Expr(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (!a[r][c].is_zero()) {
                p = r;
                break;
            }
        if (p < 0)
            throw PoleError("matrix is singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Expr pivot = a[c][c];
        for (int k = 0; k < n; ++k) {
            a[c][k] = a[c][k] / pivot;
            inv[c][k] = inv[c][k] / pivot;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero())
                continue;
            Expr factor = a[r][c];
            for (int k = 0; k < n; ++k) {
                a[r][k] = a[r][k] - factor * a[c][k];
                inv[r][k] = inv[r][k] - factor * inv[c][k];
            }
        }
    }
    TensorField out(n, m.upper() == 0 ? 2 : 0, m.upper() == 0 ? 0 : 2);
    if (m.upper() == 1)
        out = TensorField(n, 1, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = inv[i][j];
    return out;
}

std::string cell_label(const std::string &name, std::initializer_list<int> zero_based)
{
    std::string s = name + "[";
    bool first = true;
    for (int i : zero_based) {
        if (!first)
            s += ",";
        s += std::to_string(i + 1);
        first = false;
    }
    return s + "]";
}

} // namespace invlag
