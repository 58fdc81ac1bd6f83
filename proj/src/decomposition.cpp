#include "modal/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "modal/errors.hpp"

namespace modal {

template <class R>
Poly1<R> minimal_polynomial(const Matrix<R>& m, double tol) {
    using S = Complex<R>;
    if (m.rows() != m.cols() || m.rows() == 0) throw UsageError("minimal polynomial needs a nonempty square matrix");
    int n = m.rows();
    S s(1);
    Matrix<R> ms = m;
    if constexpr (!Num<R>::exact) {
        double sc = m.scale();
        if (sc > 0) {
            s = S(sc);
            ms = m * (S(1) / s);
        }
    }
    struct Reduced {
        std::vector<S> v;
        std::vector<S> combo;
        int pivot;
    };
    std::vector<Reduced> basis;
    std::vector<S> tau;
    Matrix<R> power = Matrix<R>::identity(n);
    for (int k = 0; k <= n; ++k) {
        std::vector<S> r(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r[static_cast<size_t>(i) * n + j] = power(i, j);
        double ref = 0;
        for (auto& x : r) ref = std::max(ref, x.abs());
        std::vector<S> combo(k + 1);
        combo[k] = S(1);
        for (const auto& b : basis) {
            S f = r[b.pivot] / b.v[b.pivot];
            if (f.is_zero()) continue;
            for (size_t i = 0; i < r.size(); ++i)
                if (!b.v[i].is_zero()) r[i] -= f * b.v[i];
            for (size_t i = 0; i < b.combo.size(); ++i) combo[i] -= f * b.combo[i];
        }
        int piv = -1;
        for (size_t i = 0; i < r.size(); ++i) {
            if (negligible(r[i], tol * std::max(1.0, ref))) continue;
            if (piv < 0 || magnitude_greater(r[i], r[piv])) piv = static_cast<int>(i);
        }
        if (piv < 0) {
            // dependence among P_0..P_{k-1} and P_{k-1} (M/s), where P_i = (M/s)^i / (tau_1 ... tau_i);
            // rescale to a monic polynomial in M
            std::vector<S> c(k + 1);
            c[k] = combo[k];
            S sp = s;
            for (int i = k - 1; i >= 0; --i) {
                c[i] = combo[i] * sp;
                sp = sp * s * tau[i];
            }
            return Poly1<R>(c).monic();
        }
        // keep the accepted power at unit size so the next product is judged against its own scale
        S t(1);
        if constexpr (!Num<R>::exact) {
            if (ref > 0) {
                t = S(ref);
                S inv = S(1) / t;
                for (auto& x : r) x = x * inv;
                for (int i = 0; i < k; ++i) combo[i] = combo[i] * inv;
                power = power * inv;
            }
        }
        tau.push_back(t);
        basis.push_back({std::move(r), std::move(combo), piv});
        power = power * ms;
    }
    throw UsageError("no linear dependence found among matrix powers");
}

namespace {

template <class R>
std::vector<cplx> to_cplx(const Poly1<R>& p) {
    std::vector<cplx> c;
    for (const auto& x : p.coeffs()) c.push_back(x.to_std());
    return c;
}

template <class R>
R snap_real(double x) {
    if constexpr (Num<R>::exact) {
        auto [h, k] = rational_approx(x, 1000000);
        return Num<R>::from_ratio(h, k);
    } else {
        return x;
    }
}

template <class R>
Complex<R> snap(cplx z) {
    return Complex<R>(snap_real<R>(z.real()), snap_real<R>(z.imag()));
}

/// Multiplicity of lambda as a root of p: number of leading Taylor coefficients that vanish.
template <class R>
void sort_factors(AlgebraDecomposition<R>& d) {
    std::sort(d.factors.begin(), d.factors.end(), [](const LocalAlgebra<R>& a, const LocalAlgebra<R>& b) {
        double ar = Num<R>::to_double(a.lambda.re), br = Num<R>::to_double(b.lambda.re);
        if (ar != br) return ar < br;
        return Num<R>::to_double(a.lambda.im) < Num<R>::to_double(b.lambda.im);
    });
}

template <class R>
int root_multiplicity(const Poly1<R>& p, const Complex<R>& lambda, double tol) {
    auto t = p.taylor_at(lambda, p.degree() + 1);
    double ref = 0;
    for (const auto& x : p.coeffs()) ref = std::max(ref, x.abs());
    int m = 0;
    while (m < static_cast<int>(t.size())) {
        double bound = tol * std::max(1.0, ref) * std::pow(1 + lambda.abs(), p.degree() - m);
        if (!negligible(t[m], bound)) break;
        ++m;
    }
    return m;
}

template <class R>
void compute_idempotents(AlgebraDecomposition<R>& d, const FactorOptions& opt) {
    using S = Complex<R>;
    // complex local factors: every root, conjugates included for a real run
    struct Local {
        S lambda;
        int l;
        int owner;
    };
    std::vector<Local> locals;
    for (size_t i = 0; i < d.factors.size(); ++i) {
        const auto& f = d.factors[i];
        locals.push_back({f.lambda, f.l, static_cast<int>(i)});
        if (f.complex_factor()) locals.push_back({f.lambda.conj(), f.l, static_cast<int>(i)});
    }
    Poly1<R> full = Poly1<R>::constant(S(1));
    for (const auto& lc : locals) full = full * Poly1<R>::linear_root(lc.lambda).pow(lc.l);
    d.idempotents.assign(d.factors.size(), Poly1<R>());
    for (size_t a = 0; a < locals.size(); ++a) {
        Poly1<R> rest = Poly1<R>::constant(S(1));
        for (size_t b = 0; b < locals.size(); ++b)
            if (b != a) rest = rest * Poly1<R>::linear_root(locals[b].lambda).pow(locals[b].l);
        LocalAlgebra<R> alg{Field::complex, locals[a].lambda, locals[a].l};
        AlgElem<R> r(alg, rest.taylor_at(locals[a].lambda, locals[a].l));
        AlgElem<R> q = r.inverse();
        Poly1<R> qx = Poly1<R>::from_shifted(q.coeffs(), locals[a].lambda);
        Poly1<R> p = (rest * qx).mod(full);
        auto& slot = d.idempotents[locals[a].owner];
        slot = slot + p;
    }
    if (d.field == Field::real) {
        for (auto& p : d.idempotents) {
            std::vector<S> c = p.coeffs();
            for (auto& x : c) x = S(x.re);
            p = Poly1<R>(c);
        }
    }
    (void)opt;
}

template <class R>
void check_real_coefficients(const Poly1<R>& p, Field field, double tol) {
    if (field != Field::real) return;
    for (const auto& c : p.coeffs())
        if (!negligible(Complex<R>(c.im), tol)) throw UsageError("real run with a non-real polynomial");
}

}  // namespace

template <class R>
Poly1<R> factor_product(const AlgebraDecomposition<R>& d) {
    using S = Complex<R>;
    Poly1<R> prod = Poly1<R>::constant(S(1));
    for (const auto& f : d.factors) {
        prod = prod * Poly1<R>::linear_root(f.lambda).pow(f.l);
        if (f.complex_factor()) prod = prod * Poly1<R>::linear_root(f.lambda.conj()).pow(f.l);
    }
    return prod;
}

namespace {

/// Factorization from single-linkage clusters at relative radius ctol; throws AmbiguityError
/// when the clusters do not reproduce p.
template <class R>
AlgebraDecomposition<R> factor_at(const Poly1<R>& p, const std::vector<cplx>& coeffs, const std::vector<cplx>& raw,
                                  Field field, double ctol, const FactorOptions& opt) {
    AlgebraDecomposition<R> d;
    d.field = field;
    d.source_min_poly = p;
    d.raw_roots = raw;
    auto clusters = cluster_roots(raw, ctol);
    for (auto& cl : clusters) cl.center = refine_multiple_root(coeffs, cl.center, cl.multiplicity);

    std::vector<std::pair<cplx, int>> picked;
    if (field == Field::real) {
        std::vector<bool> used(clusters.size(), false);
        for (size_t a = 0; a < clusters.size(); ++a) {
            if (used[a]) continue;
            cplx z = clusters[a].center;
            double rad = ctol * (1 + std::abs(z));
            if (std::fabs(z.imag()) <= rad) {
                used[a] = true;
                picked.push_back({cplx(z.real(), 0), clusters[a].multiplicity});
                continue;
            }
            int partner = -1;
            for (size_t b = 0; b < clusters.size(); ++b)
                if (b != a && !used[b] && clusters[b].multiplicity == clusters[a].multiplicity &&
                    std::abs(clusters[b].center - std::conj(z)) <= 10 * rad)
                    partner = static_cast<int>(b);
            if (partner < 0) throw AmbiguityError("unpaired non-real root in a real run; supply the eigenvalues explicitly");
            used[a] = used[partner] = true;
            cplx zz = z.imag() > 0 ? (z + std::conj(clusters[partner].center)) / 2.0
                                   : (std::conj(z) + clusters[partner].center) / 2.0;
            picked.push_back({zz, clusters[a].multiplicity});
        }
    } else {
        for (const auto& cl : clusters) picked.push_back({cl.center, cl.multiplicity});
    }
    for (const auto& [z, m] : picked) d.factors.push_back(LocalAlgebra<R>{field, snap<R>(z), m});
    sort_factors(d);

    if constexpr (Num<R>::exact) {
        if (!(factor_product(d) == p)) {
            std::ostringstream msg;
            msg << "eigenvalues are not exactly representable as rationals; supply them explicitly or use float mode";
            throw AmbiguityError(msg.str());
        }
    } else {
        // a cluster that merged distinct roots shows up as a mismatch of the product
        double ref = 0, big = 0, worst = 0;
        for (const auto& x : p.coeffs()) ref = std::max(ref, x.abs());
        for (const auto& f : d.factors) big = std::max(big, f.lambda.abs());
        Poly1<R> diff = factor_product(d) - p;
        for (const auto& x : diff.coeffs()) worst = std::max(worst, x.abs());
        double bound = opt.tol * std::max(1.0, ref) * std::pow(1 + big, p.degree());
        if (worst > bound) {
            std::ostringstream msg;
            msg << "clustered roots do not reproduce the minimal polynomial (mismatch " << worst
                << "); roots are too close to separate at cluster tolerance " << ctol;
            throw AmbiguityError(msg.str());
        }
    }
    return d;
}

}  // namespace

template <class R>
AlgebraDecomposition<R> factor_min_poly(const Poly1<R>& p_in, Field field, const FactorOptions& opt) {
    if (p_in.degree() < 1) throw UsageError("factorization needs degree >= 1");
    check_real_coefficients(p_in, field, opt.tol);
    Poly1<R> p = p_in.monic();
    auto coeffs = to_cplx(p);
    auto raw = aberth_roots(coeffs);

    // a root of multiplicity m spreads like (error)^(1/m), which can exceed cluster_tol; coarser
    // single-linkage levels are tried in turn and accepted only if they reproduce p
    std::vector<double> levels{opt.cluster_tol};
    for (size_t i = 0; i < raw.size(); ++i)
        for (size_t j = i + 1; j < raw.size(); ++j) {
            double t = std::abs(raw[i] - raw[j]) / (1 + std::max(std::abs(raw[i]), std::abs(raw[j])));
            if (t > opt.cluster_tol) levels.push_back(t * (1 + 1e-9));
        }
    std::sort(levels.begin() + 1, levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::optional<AmbiguityError> first;
    for (double ctol : levels) {
        try {
            auto d = factor_at(p, coeffs, raw, field, ctol, opt);
            compute_idempotents(d, opt);
            return d;
        } catch (const AmbiguityError& e) {
            if (!first) first = e;
        }
    }
    throw *first;
}

template <class R>
AlgebraDecomposition<R> factor_with_eigenvalues(const Poly1<R>& p_in, Field field,
                                                const std::vector<Complex<R>>& eigenvalues,
                                                const FactorOptions& opt) {
    if (p_in.degree() < 1) throw UsageError("factorization needs degree >= 1");
    check_real_coefficients(p_in, field, opt.tol);
    Poly1<R> p = p_in.monic();
    AlgebraDecomposition<R> d;
    d.field = field;
    d.source_min_poly = p;
    int total = 0;
    for (const auto& lam : eigenvalues) {
        LocalAlgebra<R> alg{field, lam, 0};
        if (field == Field::real && Num<R>::sign(lam.im) < 0) alg.lambda = lam.conj();
        alg.l = root_multiplicity(p, alg.lambda, opt.tol);
        if (alg.l == 0) throw UsageError("supplied eigenvalue is not a root of the minimal polynomial");
        total += alg.complex_factor() ? 2 * alg.l : alg.l;
        d.factors.push_back(alg);
    }
    if (total != p.degree()) throw UsageError("supplied eigenvalues do not account for the whole minimal polynomial");
    sort_factors(d);
    compute_idempotents(d, opt);
    return d;
}

double IdempotentResiduals::max() const { return std::max({sum_to_identity, orthogonality, idempotency}); }

template <class R>
IdempotentResiduals idempotent_residuals(const AlgebraDecomposition<R>& d, const Matrix<R>& a) {
    IdempotentResiduals res;
    std::vector<Matrix<R>> proj;
    for (const auto& p : d.idempotents) proj.push_back(p.eval(a));
    Matrix<R> sum(a.rows(), a.cols());
    for (const auto& pm : proj) sum = sum + pm;
    res.sum_to_identity = (sum - Matrix<R>::identity(a.rows())).max_abs();
    for (size_t i = 0; i < proj.size(); ++i) {
        res.idempotency = std::max(res.idempotency, (proj[i] * proj[i] - proj[i]).max_abs());
        for (size_t j = 0; j < proj.size(); ++j)
            if (i != j) res.orthogonality = std::max(res.orthogonality, (proj[i] * proj[j]).max_abs());
    }
    return res;
}

#define MODAL_INSTANTIATE(R)                                                                          \
    template Poly1<R> minimal_polynomial<R>(const Matrix<R>&, double);                                \
    template AlgebraDecomposition<R> factor_min_poly<R>(const Poly1<R>&, Field, const FactorOptions&); \
    template AlgebraDecomposition<R> factor_with_eigenvalues<R>(const Poly1<R>&, Field,               \
                                                                const std::vector<Complex<R>>&,       \
                                                                const FactorOptions&);                \
    template Poly1<R> factor_product<R>(const AlgebraDecomposition<R>&);                              \
    template IdempotentResiduals idempotent_residuals<R>(const AlgebraDecomposition<R>&, const Matrix<R>&);

MODAL_INSTANTIATE(double)
MODAL_INSTANTIATE(Rational)

}  // namespace modal
