#pragma once

#include <functional>
#include <vector>

#include "modal/jordan.hpp"
#include "modal/mpoly.hpp"

namespace modal {

/// Free data (f_k), k = 0..l-1; f_k is a polynomial in the generator coordinates of slice k, in chain order.
template <class R>
struct ComponentData {
    JordanStructure<R> structure;
    std::vector<MPoly<R>> f;
};

/// A-valued polynomial map on a factor: coeffs[i] is the e^i coefficient, in chain coordinates.
template <class R>
struct ADiffFunction {
    JordanStructure<R> structure;
    std::vector<MPoly<R>> coeffs;
};

/// Checks variable counts against the slices; throws UsageError.
template <class R>
void validate_components(const ComponentData<R>& cd);

template <class R>
ComponentData<R> zero_components(const JordanStructure<R>& js);

/// Taylor-type extension through the lifts G^j_{(e^k)}.
template <class R>
ADiffFunction<R> extend_T(const ComponentData<R>& cd);

/// Same operator computed by jet arithmetic: f = sum_k e^k f_k(U), U_c = sum_s u_{c,s} e^s.
template <class R>
ADiffFunction<R> extend_T_jet(const ComponentData<R>& cd);

/// T on the free module A^n, components indexed by e-powers.
template <class R>
ADiffFunction<R> extend_T_free(const LocalAlgebra<R>& alg, int n, const std::vector<MPoly<R>>& components);

struct ReduceOptions {
    double tol = 1e-10;
    /// Skip the A-differentiability pre-check; the linear solve still rejects inconsistent input.
    bool accept_non_differentiable = false;
};

/// Inverse of T: solves T(cd) = f in the coefficient space of components of degree <= degree_bound.
template <class R>
ComponentData<R> reduce_H(const std::vector<MPoly<R>>& f, const JordanStructure<R>& js, int degree_bound,
                          const ReduceOptions& opt = {});

/// v = mu(phi(T cd)) expanded in the ambient coordinates of the structure.
template <class R>
MPoly<R> phi_polynomial(const ADiffFunction<R>& f);

/// Unknown coefficient of the monomial e in f_k, times 1 (part 0) or i (part 1).
struct GaugeUnknown {
    int k;
    Exps e;
    int part;
};

/// Component coefficients of degree <= degree_bound left free by the gauge
/// f_k(0) = 0 for k <= l - 2, and Re f_{l-1}(0) = 0 on a complex factor.
template <class R>
std::vector<GaugeUnknown> gauge_unknowns(const JordanStructure<R>& js, int degree_bound);

/// mu(phi(T of each unknown)) in ambient coordinates.
template <class R>
std::vector<MPoly<R>> phi_columns(const JordanStructure<R>& js, const std::vector<GaugeUnknown>& unknowns);

/// Recovers components from v = mu(phi(f)) alone, under the gauge f_k(0) = 0 for k <= l - 2
/// (and Re f_{l-1}(0) = 0 on a complex factor). v is in ambient coordinates.
template <class R>
ComponentData<R> recover_from_phi(const MPoly<R>& v, const JordanStructure<R>& js, int degree_bound,
                                  double tol = 1e-10);

template <class R>
AlgElem<R> evaluate_chain(const ADiffFunction<R>& f, const ChainCoords<R>& cc);

/// Evaluates at a point in ambient coordinates.
template <class R>
AlgElem<R> evaluate(const ADiffFunction<R>& f, const std::vector<Complex<R>>& u);

template <class R>
Complex<R> phi_of(const ADiffFunction<R>& f, const std::vector<Complex<R>>& u);

/// e * d f/d u_{c,s} - d f/d u_{c,s+1} for every coordinate (c, s); zero iff f is A-differentiable.
template <class R>
std::vector<JetPoly<R>> cr_residual(const ADiffFunction<R>& f);

/// Same system on raw coefficient polynomials.
template <class R>
std::vector<JetPoly<R>> cr_residual(const std::vector<MPoly<R>>& coeffs, const JordanStructure<R>& js);

template <class R>
bool cr_symbolic_zero(const std::vector<JetPoly<R>>& res, double tol);

/// Algebra given by structure constants on a basis c_1..c_m with c_1 the unit:
/// c_i c_j = sum_s alpha[i][j][s] c_s.
template <class R>
struct StructureConstants {
    int m = 0;
    std::vector<std::vector<std::vector<Complex<R>>>> alpha;
    static StructureConstants complex_numbers();
};

/// For f: A -> A given by m coefficient polynomials in m real coordinates, the equations
/// D f(x)(c_i) - c_i D f(x)(c_1) for i = 2..m, each an A-valued polynomial.
template <class R>
std::vector<std::vector<MPoly<R>>> cr_residual_general(const StructureConstants<R>& sc,
                                                       const std::vector<MPoly<R>>& coeffs);

template <class R>
std::vector<std::vector<MPoly<R>>> hessian(const MPoly<R>& v);

/// Entries of M Hess(v) - Hess(v) M^T, row-major.
template <class R>
std::vector<MPoly<R>> gen_laplace_residual(const MPoly<R>& v, const Matrix<R>& m);

using AFunction = std::function<AlgElem<double>(const AlgElem<double>&)>;

/// Integral of f(x) dx along the closed or open polygon through the vertices, product taken in A.
AlgElem<double> contour_integral(const AFunction& f, const std::vector<AlgElem<double>>& vertices, bool closed,
                                 double tol = 1e-12);

/// Restriction of f to the A-line a -> base + a g_c through a chain of full length.
AFunction restrict_to_line(const ADiffFunction<double>& f, const ChainCoords<double>& base, int chain);

/// Primitive g with Dg(b)(x) = x f(b) and g(b0) = 0, for f on A itself (one chain of length l).
template <class R>
ADiffFunction<R> a_primitive(const ADiffFunction<R>& f, const AlgElem<R>& b0);

/// L_i as a table over ordered index tuples of a basis of the module, entries in A.
template <class R>
struct MultilinearTable {
    int degree = 0;
    int dim = 0;
    std::vector<AlgElem<R>> entries;  // dim^degree, lexicographic tuples
};

/// Symmetric table reproducing sum_alpha a_alpha x^alpha for monomials of one degree.
template <class R>
MultilinearTable<R> symmetrize(int dim, int degree, const std::vector<std::pair<Exps, AlgElem<R>>>& monomials,
                               const LocalAlgebra<R>& alg);

/// sum_i L_i(x, ..., x); throws UsageError on an asymmetric table.
template <class R>
AlgElem<R> apoly_eval(const std::vector<MultilinearTable<R>>& tables, const std::vector<Complex<R>>& x,
                      const LocalAlgebra<R>& alg);

/// l1 norm of the coefficients, complex modulus per coefficient.
double alg_norm(const AlgElem<double>& a);

struct NormEstimate {
    double value = 0;
    double spacing = 0;
    int points = 0;
    int directions = 0;
};

/// sup |f| + sum_{i<=k} sup |D^i f(y,...,y)| / i! over the sample points and unit directions y.
/// A lower estimate of the C^k norm; points are in chain coordinates.
NormEstimate estimate_norm_k(const ADiffFunction<double>& f, const std::vector<ChainCoords<double>>& points, int k,
                             double spacing);

/// Deterministic unit directions in the chain coordinate space.
std::vector<ChainCoords<double>> unit_directions(int dim, bool complex_coords);

}  // namespace modal
