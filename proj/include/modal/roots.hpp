#pragma once

#include <complex>
#include <vector>

namespace modal {

using cplx = std::complex<double>;

/// All roots of a polynomial given lowest degree first, by Aberth-Ehrlich iteration.
std::vector<cplx> aberth_roots(const std::vector<cplx>& coeffs, int max_iter = 500);

struct RootCluster {
    cplx center;
    int multiplicity = 0;
    std::vector<cplx> members;
};

/// Single-linkage clustering: roots closer than tol * (1 + |root|) share a cluster.
/// Throws AmbiguityError when two clusters are closer than 10 times that radius.
std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double tol);

/// Polishes a cluster center with Newton steps on the (m-1)-th derivative, where the root is simple.
cplx refine_multiple_root(const std::vector<cplx>& coeffs, cplx start, int multiplicity);

/// Best rational approximation with denominator <= max_den, by continued fractions.
std::pair<long, long> rational_approx(double x, long max_den);

}  // namespace modal
