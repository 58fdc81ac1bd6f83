#pragma once

#include <random>
#include <utility>
#include <vector>

#include "modal/grad_solver.hpp"

namespace modal::testing {

using Q = Rational;
using CQ = Complex<Q>;
using CD = Complex<double>;

template <class R>
MPoly<R> poly(int n, const std::vector<std::pair<Exps, Complex<R>>>& terms) {
    MPoly<R> p(n);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

template <class R>
Matrix<R> mat(const std::vector<std::vector<long>>& rows) {
    const int n = static_cast<int>(rows.size());
    Matrix<R> m(n, static_cast<int>(rows[0].size()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = Complex<R>(Num<R>::from_int(rows[i][j]));
    return m;
}

inline Matrix<Q> golden_matrix() { return mat<Q>({{2, 0, 0}, {0, 2, 0}, {0, 1, 2}}); }
inline Matrix<Q> rotation() { return mat<Q>({{0, -1}, {1, 0}}); }

template <class R>
Matrix<R> to_backend(const Matrix<Q>& m) {
    Matrix<R> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if constexpr (Num<R>::exact) {
                out(i, j) = m(i, j);
            } else {
                out(i, j) = Complex<R>(m(i, j).re.get_d(), m(i, j).im.get_d());
            }
        }
    return out;
}

template <class R>
MPoly<R> to_backend(const MPoly<Q>& p) {
    if constexpr (Num<R>::exact) {
        return p;
    } else {
        MPoly<R> out(p.nvars());
        for (const auto& [e, c] : p.terms()) out.add_term(e, Complex<R>(c.re.get_d(), c.im.get_d()));
        return out;
    }
}

/// Chain lengths with longest exactly l and total n (requires l <= n).
inline std::vector<int> random_partition(std::mt19937& rng, int n, int l) {
    std::vector<int> parts{l};
    int left = n - l;
    while (left > 0) {
        int t = std::uniform_int_distribution<int>(1, std::min(l, left))(rng);
        parts.push_back(t);
        left -= t;
    }
    return parts;
}

/// Small rational coefficient p/q with p in [-5, 5] \ {0}, q in {1, 2, 3}.
template <class R>
Complex<R> random_coeff(std::mt19937& rng, bool complex_coeffs) {
    auto one = [&] {
        int p = std::uniform_int_distribution<int>(-5, 4)(rng);
        if (p >= 0) ++p;
        int q = std::uniform_int_distribution<int>(1, 3)(rng);
        return Num<R>::from_ratio(p, q);
    };
    if (!complex_coeffs) return Complex<R>(one());
    return Complex<R>(one(), one());
}

/// Sparse random polynomial: up to max_terms monomials of total degree <= degree.
template <class R>
MPoly<R> random_poly(std::mt19937& rng, int nvars, int degree, int max_terms, bool complex_coeffs = false) {
    MPoly<R> p(nvars);
    int terms = std::uniform_int_distribution<int>(1, max_terms)(rng);
    for (int t = 0; t < terms; ++t) {
        Exps e(nvars, 0);
        int deg = std::uniform_int_distribution<int>(0, degree)(rng);
        for (int d = 0; d < deg && nvars > 0; ++d) ++e[std::uniform_int_distribution<int>(0, nvars - 1)(rng)];
        p.add_term(e, random_coeff<R>(rng, complex_coeffs));
    }
    return p;
}

template <class R>
ComponentData<R> random_components(std::mt19937& rng, const JordanStructure<R>& js, int degree, int max_terms,
                                   bool complex_coeffs = false) {
    auto cd = zero_components(js);
    for (int k = 0; k < js.l(); ++k)
        cd.f[k] = random_poly<R>(rng, cd.f[k].nvars(), degree, max_terms, complex_coeffs);
    return cd;
}

/// max |a - b| over coefficients.
template <class R>
double poly_distance(const MPoly<R>& a, const MPoly<R>& b) {
    return (a - b).max_abs_coeff();
}

/// Upper triangular integer matrix with unit diagonal times a lower one: determinant 1.
inline Matrix<Q> random_unimodular(std::mt19937& rng, int n) {
    Matrix<Q> up = Matrix<Q>::identity(n), lo = Matrix<Q>::identity(n);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            up(i, j) = CQ(Q(d(rng)));
            lo(j, i) = CQ(Q(d(rng)));
        }
    return up * lo;
}

}  // namespace modal::testing
