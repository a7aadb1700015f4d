#pragma once

#include "hilbcurve/rational.hpp"

#include <stdexcept>
#include <vector>

namespace hilb {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

struct LinearSystem {
    Mat a;
    Vec rhs;

    size_t rows() const { return a.size(); }
    size_t cols() const { return a.empty() ? 0 : a.front().size(); }

    void validate() const {
        if (a.empty()) throw std::invalid_argument("LinearSystem: empty matrix");
        for (const auto& row : a)
            if (row.size() != cols()) throw std::invalid_argument("LinearSystem: ragged matrix");
        if (rhs.size() != rows()) throw std::invalid_argument("LinearSystem: rhs size mismatch");
    }
};

enum class SolveKind { Unique, Inconsistent, Underdetermined };

struct SolveResult {
    SolveKind kind = SolveKind::Inconsistent;
    Vec solution;  // populated iff kind == Unique
    int rank = 0;
    int nullity = 0;  // cols - rank, meaningful when consistent
};

// Exact Gaussian elimination with full pivoting. The pivot among the
// remaining submatrix is the nonzero entry of smallest combined
// numerator/denominator bit length, which keeps intermediate growth tame.
inline SolveResult solve_linear(const LinearSystem& sys) {
    sys.validate();
    const size_t m = sys.rows(), n = sys.cols();
    Mat a = sys.a;
    Vec b = sys.rhs;
    std::vector<size_t> colperm(n);
    for (size_t j = 0; j < n; ++j) colperm[j] = j;

    size_t rank = 0;
    for (size_t step = 0; step < n && rank < m; ++step) {
        size_t pr = 0, pc = 0;
        int best = -1;
        for (size_t i = rank; i < m; ++i)
            for (size_t j = step; j < n; ++j) {
                if (a[i][j] == 0) continue;
                int sz = bit_length(a[i][j]);
                if (best < 0 || sz < best) {
                    best = sz;
                    pr = i;
                    pc = j;
                }
            }
        if (best < 0) break;  // remaining submatrix is zero
        std::swap(a[rank], a[pr]);
        std::swap(b[rank], b[pr]);
        if (pc != step) {
            for (size_t i = 0; i < m; ++i) std::swap(a[i][step], a[i][pc]);
            std::swap(colperm[step], colperm[pc]);
        }
        const Rational piv = a[rank][step];
        for (size_t i = rank + 1; i < m; ++i) {
            if (a[i][step] == 0) continue;
            Rational f = a[i][step] / piv;
            a[i][step] = 0;
            for (size_t j = step + 1; j < n; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        ++rank;
    }

    SolveResult res;
    res.rank = static_cast<int>(rank);
    for (size_t i = rank; i < m; ++i)
        if (b[i] != 0) {
            res.kind = SolveKind::Inconsistent;
            return res;
        }
    res.nullity = static_cast<int>(n - rank);
    if (rank < n) {
        res.kind = SolveKind::Underdetermined;
        return res;
    }
    // Back substitution in the permuted order, then undo the permutation.
    Vec x(n, Rational(0));
    for (size_t ii = rank; ii-- > 0;) {
        Rational s = b[ii];
        for (size_t j = ii + 1; j < n; ++j) s -= a[ii][j] * x[j];
        x[ii] = s / a[ii][ii];
    }
    res.solution.assign(n, Rational(0));
    for (size_t j = 0; j < n; ++j) res.solution[colperm[j]] = x[j];
    res.kind = SolveKind::Unique;
    return res;
}

// Entry (i, k) = nodes[i]^k. Distinct nodes make it invertible.
inline Mat vandermonde(const std::vector<Rational>& nodes) {
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (nodes[i] == nodes[j])
                throw std::invalid_argument("vandermonde: duplicate node " + to_string(nodes[i]));
    const size_t n = nodes.size();
    Mat u(n, Vec(n, Rational(1)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 1; k < n; ++k) u[i][k] = u[i][k - 1] * nodes[i];
    return u;
}

}  // namespace hilb
