#pragma once

#include <functional>
#include <vector>

namespace modal {

struct GaussRule {
    std::vector<double> nodes;    // on [0, 1]
    std::vector<double> weights;  // sum to 1
};

/// n-point Gauss-Legendre rule mapped to [0, 1].
const GaussRule& gauss_legendre(int n);

struct QuadratureResult {
    std::vector<double> value;
    double error_bound = 0;
};

/// Adaptive integration of a vector-valued function on [0, 1]: 8 and 16 point rules are compared
/// on each piece and pieces are bisected until the difference is within tol. Throws AccuracyError.
QuadratureResult integrate_adaptive(const std::function<std::vector<double>(double)>& f, double tol,
                                    int max_depth = 30);

}  // namespace modal
