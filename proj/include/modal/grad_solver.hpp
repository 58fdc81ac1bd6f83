#pragma once

#include <string>
#include <utility>
#include <vector>

#include "modal/adiff.hpp"
#include "modal/decomposition.hpp"
#include "modal/grid.hpp"

namespace modal {

template <class R>
struct AnalyzeOptions {
    double tol = 1e-10;
    double cluster_tol = 1e-3;
    /// Distinct eigenvalues supplied by the caller; skips root finding when non-empty.
    std::vector<Complex<R>> eigenvalues;
};

/// Minimal polynomial, local factors, projectors and chain structure of M^T on each factor.
template <class R>
struct Analysis {
    Field field = Field::real;
    Matrix<R> m;
    double tol = 1e-10;
    Poly1<R> min_poly;
    AlgebraDecomposition<R> decomposition;
    std::vector<Matrix<R>> projectors;  // p_i(M^T)
    std::vector<JordanStructure<R>> structures;
    IdempotentResiduals idempotent_residuals;
    std::vector<std::string> warnings;

    int num_factors() const { return static_cast<int>(structures.size()); }
    int n() const { return m.rows(); }
};

template <class R>
Analysis<R> analyze(const Matrix<R>& m, Field field, const AnalyzeOptions<R>& opt = {});

/// Component data (f_k) for every local factor, in factor order.
template <class R>
struct BoundaryData {
    std::vector<ComponentData<R>> factors;
};

template <class R>
BoundaryData<R> zero_boundary(const Analysis<R>& an);

struct EquationResidual {
    std::string name;
    bool symbolic_zero = true;
    double max_coeff = 0;
    double max_grid = 0;
    std::vector<double> where;
};

struct ResidualReport {
    bool symbolic_zero = true;
    /// Largest coefficient of any residual polynomial.
    double max_coeff = 0;
    /// Largest |residual| over the grid, with its location.
    double max_abs = 0;
    std::vector<double> where;
    bool grid_evaluated = false;
    GridSpec grid;
    std::vector<EquationResidual> equations;
};

/// Symbolic test of each named residual polynomial; grid sampling for those in grid.dims() variables.
template <class R>
ResidualReport residual_report(const std::vector<std::pair<std::string, MPoly<R>>>& eqs, double zero_tol,
                               const GridSpec* grid = nullptr);

template <class R>
struct SolutionPair {
    MPoly<R> v;
    MPoly<R> w;
    Complex<R> c;
    std::vector<ComponentData<R>> provenance;
    ResidualReport report;
};

/// v = sum_i mu(phi(T f_i)), w = sum_i mu(phi((lambda_i + e) T f_i)) + c, residual check attached.
template <class R>
SolutionPair<R> build_pair(const Analysis<R>& an, const BoundaryData<R>& bd, const Complex<R>& c = Complex<R>(),
                           const GridSpec* grid = nullptr);

/// Residual polynomials grad w - M grad v.
template <class R>
ResidualReport check_pair(const MPoly<R>& v, const MPoly<R>& w, const Matrix<R>& m, double tol,
                          const GridSpec* grid = nullptr);

/// Entries of the generalized Laplace system M Hess(v) - Hess(v) M^T as a report.
template <class R>
ResidualReport laplace_report(const MPoly<R>& v, const Matrix<R>& m, double tol, const GridSpec* grid = nullptr);

/// w(u) = int_0^1 <M grad v(b0 + t(u - b0)), u - b0> dt, exact; w(b0) = 0.
/// Throws IntegrabilityError when v violates the generalized Laplace system.
template <class R>
MPoly<R> integrate_w_from_v(const MPoly<R>& v, const Matrix<R>& m, const std::vector<Complex<R>>& b0, double tol);

template <class R>
struct BvpSolution {
    MPoly<R> v;
    ResidualReport report;
};

/// v = mu(phi(T f)) on a single-eigenvalue M, with the boundary conditions verified.
template <class R>
BvpSolution<R> solve_bvp(const Analysis<R>& an, const BoundaryData<R>& bd);

/// Generalized Laplace residual, the value of v on the deepest slice, and the directional derivatives
/// along (M^T - lambda)^{l-1-i} of the chain generators on slice i, each against the data.
template <class R>
ResidualReport check_bvp_conditions(const MPoly<R>& v, const Analysis<R>& an, const BoundaryData<R>& bd);

struct KernelReport {
    int unknowns = 0;
    int rank = 0;
    int kernel = 0;
};

/// Kernel of the map from gauge-fixed component coefficients of degree <= degree_bound to the boundary data.
template <class R>
KernelReport uniqueness_kernel(const Analysis<R>& an, int degree_bound);

}  // namespace modal
