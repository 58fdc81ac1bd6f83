#include "modal/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace modal {

template <class R>
std::vector<int> JordanStructure<R>::slice_chains(int k) const {
    if (k < 0 || k >= l()) throw UsageError("slice index out of range");
    std::vector<int> out;
    for (int c = 0; c < num_chains(); ++c)
        if (chains[c] >= l() - k) out.push_back(c);
    return out;
}

namespace {

template <class R>
void set_offsets(JordanStructure<R>& js) {
    js.offset.clear();
    int off = 0;
    for (int t : js.chains) {
        js.offset.push_back(off);
        off += t;
    }
}

template <class R>
R abs_part(const R& x) {
    return Num<R>::sign(x) < 0 ? R(-x) : x;
}

/// Scales by the largest |re| or |im| entry, identically in both modes so pivot choices agree.
template <class R>
std::vector<Complex<R>> unit_vector(std::vector<Complex<R>> v) {
    R mx(0);
    for (const auto& x : v) {
        R a = abs_part(x.re), b = abs_part(x.im);
        if (a > mx) mx = a;
        if (b > mx) mx = b;
    }
    if (Num<R>::sign(mx) > 0) {
        Complex<R> inv(R(1) / mx);
        for (auto& x : v) x = x * inv;
    }
    return v;
}

template <class R>
Matrix<R> unit_columns(const Matrix<R>& a) {
    Matrix<R> out = a;
    for (int j = 0; j < a.cols(); ++j) out.set_column(j, unit_vector(a.column(j)));
    return out;
}

/// The basis of span(k) with v_f = 1 and v_g = 0 at the other free coordinates, f running over the
/// free coordinates in increasing order; the same basis nullspace() returns for any matrix with this kernel.
template <class R>
Matrix<R> canonical_kernel_basis(const Matrix<R>& k, double tol) {
    const int n = k.rows(), d = k.cols();
    if (d == 0) return k;
    Matrix<R> rev(d, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) rev(i, j) = k(n - 1 - j, i);
    auto rr = rref(rev, tol);
    std::vector<std::vector<Complex<R>>> cols;
    for (int r = rr.rank() - 1; r >= 0; --r) {
        std::vector<Complex<R>> v(n);
        for (int j = 0; j < n; ++j) v[n - 1 - j] = rr.reduced(r, j);
        cols.push_back(std::move(v));
    }
    return Matrix<R>::from_columns(cols, n);
}

/// Basis of the column space: pivot columns in exact mode, orthonormal columns from
/// Gram-Schmidt with column pivoting in float mode (columns of norm <= tol are dropped).
template <class R>
Matrix<R> column_basis(const Matrix<R>& a, double tol) {
    using S = Complex<R>;
    const int n = a.rows();
    std::vector<std::vector<S>> out;
    if constexpr (Num<R>::exact) {
        auto rr = rref(a, tol);
        for (int p : rr.pivots) out.push_back(a.column(p));
    } else {
        std::vector<std::vector<S>> rest;
        for (int j = 0; j < a.cols(); ++j) rest.push_back(a.column(j));
        auto norm = [](const std::vector<S>& v) {
            double t = 0;
            for (const auto& x : v) t += x.norm2();
            return std::sqrt(t);
        };
        while (!rest.empty()) {
            size_t best = 0;
            for (size_t j = 1; j < rest.size(); ++j)
                if (norm(rest[j]) > norm(rest[best])) best = j;
            double nb = norm(rest[best]);
            if (nb <= tol) break;
            std::vector<S> q = rest[best];
            for (auto& x : q) x = x * S(1 / nb);
            rest.erase(rest.begin() + static_cast<long>(best));
            for (int pass = 0; pass < 2; ++pass)
                for (auto& v : rest) {
                    S dot;
                    for (int i = 0; i < n; ++i) dot += q[i].conj() * v[i];
                    for (int i = 0; i < n; ++i) v[i] -= dot * q[i];
                }
            out.push_back(std::move(q));
        }
    }
    return Matrix<R>::from_columns(out, n);
}

}  // namespace

template <class R>
JordanStructure<R> JordanStructure<R>::canonical(const LocalAlgebra<R>& alg, std::vector<int> chain_lengths) {
    JordanStructure js;
    js.algebra = alg;
    std::stable_sort(chain_lengths.begin(), chain_lengths.end());
    for (int t : chain_lengths)
        if (t < 1 || t > alg.l) throw UsageError("chain length outside [1, l]");
    if (chain_lengths.empty() || chain_lengths.back() != alg.l) throw UsageError("longest chain must have length l");
    js.chains = chain_lengths;
    set_offsets(js);
    int d = 0;
    for (int t : js.chains) d += t;
    js.ambient = d;
    js.basis = Matrix<R>::identity(d);
    js.coord_map = Matrix<R>::identity(d);
    return js;
}

template <class R>
JordanStructure<R> JordanStructure<R>::free_module(const LocalAlgebra<R>& alg, int n) {
    return canonical(alg, std::vector<int>(n, alg.l));
}

template <class R>
JordanStructure<R> jordan_chains(const Matrix<R>& m, const LocalAlgebra<R>& alg, double tol, bool real_form) {
    using S = Complex<R>;
    if (m.rows() != m.cols()) throw UsageError("jordan_chains needs a square matrix");
    const int n = m.rows();
    const int l = alg.l;
    JordanStructure<R> js;
    js.algebra = alg;
    js.real_form = real_form;
    js.ambient = n;

    Matrix<R> id = Matrix<R>::identity(n);
    Matrix<R> nmat = m.transpose() - id * alg.lambda;
    // work with N / s, s the largest column sum of |re| + |im| (at least 1); powers of N are
    // never formed, so every rank decision involves a single application of N / s
    R sc(1);
    for (int j = 0; j < n; ++j) {
        R col(0);
        for (int i = 0; i < n; ++i) col += abs_part(m(i, j).re) + abs_part(m(i, j).im);
        if (col > sc) sc = col;
    }
    Matrix<R> nn = nmat * S(R(1) / sc);

    bool near = false;
    // ker N^k = {x : N x in ker N^(k-1)}
    auto next_kernel = [&](const Matrix<R>& prev) {
        Matrix<R> a = prev.cols() == 0 ? nn : nn.hcat(unit_columns(prev) * S(-1));
        auto rr = rref(a, tol);
        near = near || rr.near_threshold;
        Matrix<R> ns = nullspace(a, tol);
        return canonical_kernel_basis(ns.block(0, 0, n, ns.cols()), tol);
    };

    std::vector<Matrix<R>> ker(l + 1);
    ker[0] = Matrix<R>(n, 0);
    for (int k = 1; k <= l; ++k) ker[k] = next_kernel(ker[k - 1]);
    if (ker[l].cols() != next_kernel(ker[l]).cols())
        js.warnings.push_back("(M^T - lambda)^l does not vanish on the invariant subspace");

    // generators, longest chains first; images[j] is the direction of N^j g
    struct Found {
        std::vector<S> g;
        int t;
        std::vector<std::vector<S>> images;
    };
    std::vector<Found> found;
    for (int k = l; k >= 1; --k) {
        std::vector<std::vector<S>> w;
        for (int j = 0; j < ker[k - 1].cols(); ++j) w.push_back(unit_vector(ker[k - 1].column(j)));
        for (const auto& f : found) w.push_back(f.images[f.t - k]);
        int base_rank = w.empty() ? 0 : rank(Matrix<R>::from_columns(w, n), tol);
        for (int j = 0; j < ker[k].cols(); ++j) {
            auto cand = ker[k].column(j);
            w.push_back(unit_vector(cand));
            auto rr = rref(Matrix<R>::from_columns(w, n), tol);
            if (rr.rank() > base_rank) {
                near = near || rr.near_threshold;
                ++base_rank;
                Found f{cand, k, {unit_vector(cand)}};
                for (int i = 1; i < k; ++i) f.images.push_back(unit_vector(nn * f.images.back()));
                found.push_back(std::move(f));
            } else {
                w.pop_back();
            }
        }
    }
    if (near) {
        std::ostringstream msg;
        msg << "ill-conditioned rank decision: a pivot fell within [tol, 10 tol] (tol = " << tol << ")";
        js.warnings.push_back(msg.str());
    }
    if (found.empty()) throw UsageError("eigenvalue has an empty generalized eigenspace");

    std::stable_sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.t < b.t; });
    std::vector<std::vector<S>> cols;
    for (const auto& f : found) {
        js.chains.push_back(f.t);
        std::vector<S> v = f.g;
        for (int sdep = 0; sdep < f.t; ++sdep) {
            cols.push_back(v);
            v = nmat * v;
        }
    }
    set_offsets(js);
    if (js.chains.back() != l) js.warnings.push_back("longest chain is shorter than l");
    js.basis = Matrix<R>::from_columns(cols, n);
    const int d = js.dim();

    Matrix<R> full = js.basis;
    if (real_form) full = full.hcat(js.basis.conj());
    // range of N^l (and of conj(N)^l in real form) is the sum of the other invariant subspaces
    Matrix<R> range = id;
    for (int k = 0; k < l; ++k) range = column_basis(nn * range, tol);
    if (real_form)
        for (int k = 0; k < l; ++k) range = column_basis(nn.conj() * range, tol);
    if (range.cols() > 0) full = full.hcat(range);
    if (full.cols() != n) throw UsageError("chain basis and complement do not span the space");
    Matrix<R> inv = inverse(full, 0.0);
    js.coord_map = inv.block(0, 0, d, n);
    if (real_form) js.coord_map = js.coord_map * S(2);
    return js;
}

template <class R>
ChainCoords<R> to_chain_coords(const JordanStructure<R>& js, const std::vector<Complex<R>>& u) {
    if (static_cast<int>(u.size()) != js.ambient) throw UsageError("vector has the wrong dimension");
    return js.coord_map * u;
}

template <class R>
std::vector<Complex<R>> from_chain_coords(const JordanStructure<R>& js, const ChainCoords<R>& cc) {
    if (static_cast<int>(cc.size()) != js.dim()) throw UsageError("chain coordinates have the wrong dimension");
    auto u = js.basis * cc;
    if (js.real_form)
        for (auto& x : u) x = Complex<R>(x.re);
    return u;
}

template <class R>
SliceSpec slice_spec(const JordanStructure<R>& js, int k) {
    SliceSpec sp;
    sp.k = k;
    sp.chains = js.slice_chains(k);
    for (int c : sp.chains) sp.coords.push_back(js.index(c, 0));
    return sp;
}

template <class R>
std::vector<Complex<R>> project_Dk(const JordanStructure<R>& js, const ChainCoords<R>& cc, int k) {
    if (static_cast<int>(cc.size()) != js.dim()) throw UsageError("chain coordinates have the wrong dimension");
    std::vector<Complex<R>> out;
    for (int i : slice_spec(js, k).coords) out.push_back(cc[i]);
    return out;
}

template <class R>
ChainCoords<R> section_rho_Dk(const JordanStructure<R>& js, const std::vector<Complex<R>>& slice, int k) {
    auto sp = slice_spec(js, k);
    if (slice.size() != sp.coords.size()) throw UsageError("slice vector has the wrong dimension");
    ChainCoords<R> cc(js.dim());
    for (size_t i = 0; i < slice.size(); ++i) cc[sp.coords[i]] = slice[i];
    return cc;
}

template <class R>
AlgElem<R> lift_Gj(const JordanStructure<R>& js, int k,
                   const std::function<Complex<R>(const std::vector<int>&)>& f_data,
                   const std::vector<ChainCoords<R>>& args) {
    auto c = lift_Gj_generic<R, Complex<R>>(js, k, f_data, args, Complex<R>());
    return AlgElem<R>(js.algebra, c);
}

template <class R>
ChainCoords<R> module_action(const JordanStructure<R>& js, const AlgElem<R>& a, const ChainCoords<R>& cc) {
    if (a.algebra() != js.algebra) throw UsageError("algebra element from a different algebra");
    ChainCoords<R> out(js.dim());
    for (int c = 0; c < js.num_chains(); ++c)
        for (int s = 0; s < js.chains[c]; ++s) {
            const auto& x = cc[js.index(c, s)];
            if (x.is_zero()) continue;
            for (int i = 0; s + i < js.chains[c]; ++i) out[js.index(c, s + i)] += a[i] * x;
        }
    return out;
}

template <class R>
double chain_residual(const JordanStructure<R>& js, const Matrix<R>& m) {
    Matrix<R> nmat = m.transpose() - Matrix<R>::identity(m.rows()) * js.algebra.lambda;
    double worst = 0;
    for (int c = 0; c < js.num_chains(); ++c)
        for (int s = 0; s < js.chains[c]; ++s) {
            auto img = nmat * js.basis.column(js.index(c, s));
            std::vector<Complex<R>> next(m.rows());
            if (s + 1 < js.chains[c]) next = js.basis.column(js.index(c, s + 1));
            for (int i = 0; i < m.rows(); ++i) worst = std::max(worst, (img[i] - next[i]).abs());
        }
    return worst;
}

#define MODAL_INSTANTIATE(R)                                                                              \
    template struct JordanStructure<R>;                                                                   \
    template JordanStructure<R> jordan_chains<R>(const Matrix<R>&, const LocalAlgebra<R>&, double, bool); \
    template ChainCoords<R> to_chain_coords<R>(const JordanStructure<R>&, const std::vector<Complex<R>>&); \
    template std::vector<Complex<R>> from_chain_coords<R>(const JordanStructure<R>&, const ChainCoords<R>&); \
    template SliceSpec slice_spec<R>(const JordanStructure<R>&, int);                                     \
    template std::vector<Complex<R>> project_Dk<R>(const JordanStructure<R>&, const ChainCoords<R>&, int); \
    template ChainCoords<R> section_rho_Dk<R>(const JordanStructure<R>&, const std::vector<Complex<R>>&, int); \
    template AlgElem<R> lift_Gj<R>(const JordanStructure<R>&, int,                                        \
                                   const std::function<Complex<R>(const std::vector<int>&)>&,             \
                                   const std::vector<ChainCoords<R>>&);                                   \
    template ChainCoords<R> module_action<R>(const JordanStructure<R>&, const AlgElem<R>&, const ChainCoords<R>&); \
    template double chain_residual<R>(const JordanStructure<R>&, const Matrix<R>&);

MODAL_INSTANTIATE(double)
MODAL_INSTANTIATE(Rational)

}  // namespace modal
