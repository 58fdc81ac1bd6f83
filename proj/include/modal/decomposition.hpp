#pragma once

#include <vector>

#include "modal/algebra.hpp"
#include "modal/poly1.hpp"
#include "modal/roots.hpp"

namespace modal {

/// Monic P of least degree with P(M) = 0, from the first dependence among I, M, M^2, ...
/// Float mode works on M / scale(M), rescales each accepted power to unit size, and treats a
/// residual <= tol of the next product as zero.
template <class R>
Poly1<R> minimal_polynomial(const Matrix<R>& m, double tol);

struct FactorOptions {
    /// Symbolic-zero tolerance for float mode.
    double tol = 1e-10;
    /// Relative single-linkage radius for grouping numerical roots into multiple roots. When the
    /// grouping fails to reproduce P, coarser linkage levels are tried before giving up.
    double cluster_tol = 1e-3;
};

template <class R>
struct AlgebraDecomposition {
    Field field = Field::real;
    /// Over the reals a complex factor is stored once, with Im lambda > 0.
    std::vector<LocalAlgebra<R>> factors;
    /// p_i with p_i(M^T) the projector onto factor i; real polynomials for a real run.
    std::vector<Poly1<R>> idempotents;
    Poly1<R> source_min_poly;
    /// Numerical roots as found before clustering, for reporting.
    std::vector<cplx> raw_roots;
};

/// Roots, multiplicities, and partial-fraction idempotents of P.
/// Rational mode snaps the roots to Gaussian rationals and verifies the factorization exactly.
template <class R>
AlgebraDecomposition<R> factor_min_poly(const Poly1<R>& p, Field field, const FactorOptions& opt = {});

/// Same, with the distinct eigenvalues supplied by the caller (one per conjugate pair over the reals).
template <class R>
AlgebraDecomposition<R> factor_with_eigenvalues(const Poly1<R>& p, Field field,
                                                const std::vector<Complex<R>>& eigenvalues,
                                                const FactorOptions& opt = {});

/// Product of the local factor polynomials, conjugate pairs merged over the reals.
template <class R>
Poly1<R> factor_product(const AlgebraDecomposition<R>& d);

struct IdempotentResiduals {
    double sum_to_identity = 0;  // |sum p_i(A) - I|
    double orthogonality = 0;    // max |p_i(A) p_j(A)|, i != j
    double idempotency = 0;      // max |p_i(A)^2 - p_i(A)|
    double max() const;
};

template <class R>
IdempotentResiduals idempotent_residuals(const AlgebraDecomposition<R>& d, const Matrix<R>& a);

}  // namespace modal
