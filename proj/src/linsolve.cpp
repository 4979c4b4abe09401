#include "invlag/linsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace invlag
{

void LinearSystem::add_row(Vector row, Rational b, std::string label)
{
    if (row.size() != cols)
        throw std::invalid_argument("row width does not match the system");
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
    labels.push_back(std::move(label));
}

namespace
{

struct EchelonRow {
    std::size_t pivot;
    Vector coeffs; // normalized: coeffs[pivot] == 1
    Rational rhs;
};

} // namespace

LinearSolution solve_linear(const LinearSystem &sys)
{
    const std::size_t n = sys.cols;
    std::vector<EchelonRow> basis; // sorted by pivot
    LinearSolution out;

    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        Vector row = sys.rows[r];
        Rational b = sys.rhs[r];
        for (const auto &e : basis) {
            if (row[e.pivot] == 0)
                continue;
            Rational f = row[e.pivot];
            for (std::size_t c = e.pivot; c < n; ++c)
                if (e.coeffs[c] != 0)
                    row[c] -= f * e.coeffs[c];
            b -= f * e.rhs;
        }
        std::size_t p = 0;
        while (p < n && row[p] == 0)
            ++p;
        if (p == n) {
            if (b != 0 && out.consistent) {
                out.consistent = false;
                out.inconsistent_label = sys.labels[r];
            }
            continue;
        }
        Rational inv = 1 / row[p];
        for (std::size_t c = p; c < n; ++c)
            row[c] *= inv;
        b *= inv;
        // Keep the basis fully reduced: clear column p from existing rows.
        for (auto &e : basis) {
            if (e.coeffs[p] == 0)
                continue;
            Rational f = e.coeffs[p];
            for (std::size_t c = p; c < n; ++c)
                if (row[c] != 0)
                    e.coeffs[c] -= f * row[c];
            e.rhs -= f * b;
        }
        EchelonRow er{p, std::move(row), b};
        auto at = std::lower_bound(basis.begin(), basis.end(), p,
                                   [](const EchelonRow &e, std::size_t v) { return e.pivot < v; });
        basis.insert(at, std::move(er));
    }

    out.rank = basis.size();
    std::vector<bool> is_pivot(n, false);
    for (const auto &e : basis) {
        out.pivots.push_back(e.pivot);
        is_pivot[e.pivot] = true;
    }
    if (!out.consistent)
        return out;

    out.particular.assign(n, Rational(0));
    for (const auto &e : basis)
        out.particular[e.pivot] = e.rhs;

    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        Vector v(n, Rational(0));
        v[f] = 1;
        for (const auto &e : basis)
            v[e.pivot] = -e.coeffs[f];
        out.nullspace.push_back(primitive_integer(std::move(v)));
    }
    return out;
}

Vector primitive_integer(Vector v)
{
    mpz_class den = 1, num = 0;
    for (const auto &x : v) {
        if (x == 0)
            continue;
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    for (auto &x : v) {
        x *= den;
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), x.get_num_mpz_t());
    }
    if (num == 0)
        return v;
    for (auto &x : v)
        x /= num;
    return v;
}

} // namespace invlag
