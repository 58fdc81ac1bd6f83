#include "modal/sparse_solve.hpp"

#include <algorithm>
#include <set>

#include "modal/errors.hpp"
#include "modal/matrix.hpp"

namespace modal {

template <class R>
void SparseSystem<R>::add(int row, int col, const S& v) {
    if (col < 0 || col >= ncols) throw UsageError("sparse column out of range");
    if (v.is_zero()) return;
    auto [it, fresh] = rows[row].try_emplace(col, v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) rows[row].erase(it);
    }
}

template <class R>
SparseSolution<R> sparse_solve(const SparseSystem<R>& sys, double tol) {
    using S = Complex<R>;
    const int nr = static_cast<int>(sys.rows.size());
    std::vector<std::map<int, S>> rows = sys.rows;
    std::vector<S> rhs = sys.rhs;
    std::vector<std::set<int>> col_rows(sys.ncols);
    for (int r = 0; r < nr; ++r)
        for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);

    double scale = 0;
    for (const auto& row : rows)
        for (const auto& [c, v] : row) scale = std::max(scale, v.abs());
    const double drop = Num<R>::exact ? 0.0 : 1e-3 * tol * std::max(scale, 1.0);

    std::vector<int> pivot_col(nr, -1);
    std::vector<bool> active(nr, true);
    SparseSolution<R> sol;
    for (;;) {
        int best = -1;
        for (int r = 0; r < nr; ++r) {
            if (!active[r] || rows[r].empty()) continue;
            if (best < 0 || rows[r].size() < rows[best].size()) best = r;
        }
        if (best < 0) break;
        auto& prow = rows[best];
        double rowmax = 0;
        for (const auto& [c, v] : prow) rowmax = std::max(rowmax, v.abs());
        if (!Num<R>::exact && rowmax <= tol * std::max(scale, 1.0)) {
            active[best] = false;  // numerically empty
            continue;
        }
        int pc = -1;
        for (const auto& [c, v] : prow) {
            if (!Num<R>::exact && v.abs() < 0.1 * rowmax) continue;
            if (pc < 0 || col_rows[c].size() < col_rows[pc].size()) pc = c;
        }
        S inv = S(1) / prow.at(pc);
        std::vector<int> targets(col_rows[pc].begin(), col_rows[pc].end());
        for (int r : targets) {
            if (r == best) continue;
            S f = rows[r].at(pc) * inv;
            for (const auto& [c, v] : prow) {
                auto [it, fresh] = rows[r].try_emplace(c, S());
                it->second -= f * v;
                bool gone = it->second.is_zero() || (drop > 0 && it->second.abs() <= drop) || c == pc;
                if (gone) {
                    rows[r].erase(it);
                    col_rows[c].erase(r);
                } else if (fresh) {
                    col_rows[c].insert(r);
                }
            }
            rhs[r] -= f * rhs[best];
        }
        pivot_col[best] = pc;
        active[best] = false;
        ++sol.rank;
    }

    sol.x.assign(sys.ncols, S());
    std::vector<bool> has_pivot(sys.ncols, false);
    for (int r = 0; r < nr; ++r)
        if (pivot_col[r] >= 0) {
            sol.x[pivot_col[r]] = rhs[r] / rows[r].at(pivot_col[r]);
            has_pivot[pivot_col[r]] = true;
        }
    for (int c = 0; c < sys.ncols; ++c)
        if (!has_pivot[c]) sol.free_columns.push_back(c);

    double bscale = 0;
    for (const auto& b : sys.rhs) bscale = std::max(bscale, b.abs());
    for (int r = 0; r < nr; ++r) {
        S acc = -sys.rhs[r];
        for (const auto& [c, v] : sys.rows[r]) acc += v * sol.x[c];
        if constexpr (Num<R>::exact) {
            if (!acc.is_zero()) sol.consistent = false;
        }
        sol.residual = std::max(sol.residual, acc.abs());
    }
    if constexpr (!Num<R>::exact) sol.consistent = sol.residual <= tol * std::max({scale, bscale, 1.0});
    return sol;
}

template struct SparseSystem<double>;
template struct SparseSystem<Rational>;
template SparseSolution<double> sparse_solve<double>(const SparseSystem<double>&, double);
template SparseSolution<Rational> sparse_solve<Rational>(const SparseSystem<Rational>&, double);

}  // namespace modal
