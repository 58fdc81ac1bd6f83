#pragma once

#include <map>
#include <vector>

#include "modal/scalar.hpp"

namespace modal {

/// Sparse linear system A x = b assembled row by row.
template <class R>
struct SparseSystem {
    using S = Complex<R>;
    int ncols = 0;
    std::vector<std::map<int, S>> rows;
    std::vector<S> rhs;

    explicit SparseSystem(int n = 0) : ncols(n) {}
    int add_row() {
        rows.emplace_back();
        rhs.emplace_back();
        return static_cast<int>(rows.size()) - 1;
    }
    void add(int row, int col, const S& v);
};

template <class R>
struct SparseSolution {
    std::vector<Complex<R>> x;
    int rank = 0;
    std::vector<int> free_columns;
    /// max |A x - b| over all rows.
    double residual = 0;
    bool consistent = true;
};

/// Gauss-Jordan elimination with sparsest-row-first pivoting. Exact for rationals;
/// for floats pivots must exceed tol times the row magnitude and rows below that are treated as zero.
/// Free columns are set to zero.
template <class R>
SparseSolution<R> sparse_solve(const SparseSystem<R>& sys, double tol);

}  // namespace modal
