#pragma once

#include <functional>
#include <string>
#include <vector>

#include "modal/algebra.hpp"
#include "modal/errors.hpp"
#include "modal/matrix.hpp"

namespace modal {

/// Coordinates u_{c,s} in (chain, depth) order; depth 0 is the generator coordinate.
template <class R>
using ChainCoords = std::vector<Complex<R>>;

/// One local factor of F^n as a module over the algebra generated by M^T.
/// Basis column (c, s) is N^s g_c with N = M^T - lambda I; chains are sorted by ascending length.
template <class R>
struct JordanStructure {
    LocalAlgebra<R> algebra;
    /// Complex factor of a real matrix: u = Re(basis z) and z = coord_map u.
    bool real_form = false;
    int ambient = 0;
    std::vector<int> chains;
    std::vector<int> offset;
    Matrix<R> basis;      // ambient x dim
    Matrix<R> coord_map;  // dim x ambient
    std::vector<std::string> warnings;

    int dim() const { return basis.cols(); }
    int num_chains() const { return static_cast<int>(chains.size()); }
    int l() const { return algebra.l; }
    int index(int c, int s) const { return offset[c] + s; }
    /// Chains with t_c >= l - k, in chain order.
    std::vector<int> slice_chains(int k) const;

    /// Abstract structure with the identity basis.
    static JordanStructure canonical(const LocalAlgebra<R>& alg, std::vector<int> chain_lengths);
    /// A^n: n chains of full length.
    static JordanStructure free_module(const LocalAlgebra<R>& alg, int n);
};

/// Generators are taken from ker N^k modulo ker N^{k-1} + N(longer chains), longest first,
/// candidates in order of the kernel basis, pivoted elimination with tolerance tol.
/// Chain coordinates vanish on the range of N^l (times conj(N)^l in real form), which is the sum
/// of the other invariant subspaces.
template <class R>
JordanStructure<R> jordan_chains(const Matrix<R>& m, const LocalAlgebra<R>& alg, double tol,
                                 bool real_form = false);

template <class R>
ChainCoords<R> to_chain_coords(const JordanStructure<R>& js, const std::vector<Complex<R>>& u);

template <class R>
std::vector<Complex<R>> from_chain_coords(const JordanStructure<R>& js, const ChainCoords<R>& cc);

struct SliceSpec {
    int k = 0;
    std::vector<int> chains;
    std::vector<int> coords;  // flat index of (c, 0)
};

template <class R>
SliceSpec slice_spec(const JordanStructure<R>& js, int k);

template <class R>
std::vector<Complex<R>> project_Dk(const JordanStructure<R>& js, const ChainCoords<R>& cc, int k);

template <class R>
ChainCoords<R> section_rho_Dk(const JordanStructure<R>& js, const std::vector<Complex<R>>& slice, int k);

/// Ordered-tuple expansion of the lift G^j_{(e^k)}.
/// Returns l coefficients: sum over ((c_i, s_i)) of prod args_i(c_i, s_i) * f_data(c_1..c_j) placed at e^{k + sum s_i},
/// dropping powers >= l. f_data is indexed by chains and must vanish when any chain is shorter than l - k.
template <class R, class V>
std::vector<V> lift_Gj_generic(const JordanStructure<R>& js, int k,
                               const std::function<V(const std::vector<int>&)>& f_data,
                               const std::vector<std::vector<V>>& args, const V& zero) {
    const int l = js.l();
    const int j = static_cast<int>(args.size());
    if (k < 0 || k >= l) throw UsageError("slice index out of range");
    for (const auto& a : args)
        if (static_cast<int>(a.size()) != js.dim()) throw UsageError("lift argument has the wrong dimension");
    const int nc = js.num_chains();
    std::vector<bool> in_slice(nc);
    for (int c = 0; c < nc; ++c) in_slice[c] = js.chains[c] >= l - k;

    std::vector<int> idx(j, 0);
    if (j > 0) {
        // admissibility: every tuple touching a short chain must give zero
        std::function<void(int, bool)> scan = [&](int pos, bool short_seen) {
            if (pos == j) {
                if (short_seen && !f_data(idx).is_zero())
                    throw AdmissibilityError("multilinear data does not vanish on chains shorter than l - k");
                return;
            }
            for (int c = 0; c < nc; ++c) {
                idx[pos] = c;
                scan(pos + 1, short_seen || !in_slice[c]);
            }
        };
        bool any_short = false;
        for (int c = 0; c < nc; ++c) any_short = any_short || !in_slice[c];
        if (any_short) scan(0, false);
    }

    std::vector<V> out(l, zero);
    std::vector<int> chain(j), depth(j);
    std::function<void(int, int, V)> rec = [&](int pos, int power, V prod) {
        if (pos == j) {
            V val = f_data(chain);
            if (!val.is_zero()) out[power] += prod * val;
            return;
        }
        for (int c = 0; c < nc; ++c) {
            if (!in_slice[c]) continue;
            for (int s = 0; s < js.chains[c] && power + s < l; ++s) {
                const V& a = args[pos][js.index(c, s)];
                if (a.is_zero()) continue;
                chain[pos] = c;
                depth[pos] = s;
                rec(pos + 1, power + s, prod * a);
            }
        }
    };
    if (j == 0) {
        V val = f_data(chain);
        out[k] += val;
        return out;
    }
    // start the product with the first argument to avoid needing a unit of V
    for (int c = 0; c < nc; ++c) {
        if (!in_slice[c]) continue;
        for (int s = 0; s < js.chains[c] && k + s < l; ++s) {
            const V& a = args[0][js.index(c, s)];
            if (a.is_zero()) continue;
            chain[0] = c;
            depth[0] = s;
            rec(1, k + s, a);
        }
    }
    return out;
}

/// Numeric lift into the algebra of js.
template <class R>
AlgElem<R> lift_Gj(const JordanStructure<R>& js, int k,
                   const std::function<Complex<R>(const std::vector<int>&)>& f_data,
                   const std::vector<ChainCoords<R>>& args);

/// Action of an algebra element on chain coordinates: e moves depth s to s + 1.
template <class R>
ChainCoords<R> module_action(const JordanStructure<R>& js, const AlgElem<R>& a, const ChainCoords<R>& cc);

/// Max residual of N * column(c, s) - column(c, s + 1).
template <class R>
double chain_residual(const JordanStructure<R>& js, const Matrix<R>& m);

}  // namespace modal
