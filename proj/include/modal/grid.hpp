#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "modal/scalar.hpp"

namespace modal {

/// Tensor grid on the box [lo, hi]; points_per_axis = 0 is the empty grid.
struct GridSpec {
    std::vector<double> lo, hi;
    int points_per_axis = 0;

    int dims() const { return static_cast<int>(lo.size()); }
    size_t size() const;
    /// Lexicographic order, first coordinate slowest.
    std::vector<double> point(size_t idx) const;
    template <class R>
    std::vector<Complex<R>> point_as(size_t idx) const;

    static GridSpec cube(int n, double lo, double hi, int points);
};

/// Exact value of the shortest decimal representation of v (v itself in float mode).
template <class R>
R from_decimal(double v);

/// Worker count: hardware concurrency capped by MODAL_THREADS when set.
int worker_count();

/// Runs body(i) for i in [0, n) over worker_count() threads; body must not share mutable state.
void parallel_for(size_t n, const std::function<void(size_t)>& body);

}  // namespace modal
