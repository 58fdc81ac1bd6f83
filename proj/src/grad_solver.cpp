#include "modal/grad_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "modal/sparse_solve.hpp"

namespace modal {

template <class R>
Analysis<R> analyze(const Matrix<R>& m, Field field, const AnalyzeOptions<R>& opt) {
    if (m.rows() != m.cols() || m.rows() == 0) throw UsageError("matrix must be square and non-empty");
    if (!(opt.tol > 0)) throw UsageError("tolerance must be positive");
    if (field == Field::real && !m.is_real()) throw UsageError("real field needs a real matrix");
    Analysis<R> an;
    an.field = field;
    an.m = m;
    an.tol = opt.tol;
    an.min_poly = minimal_polynomial(m, opt.tol);
    FactorOptions fo{opt.tol, opt.cluster_tol};
    an.decomposition = opt.eigenvalues.empty() ? factor_min_poly(an.min_poly, field, fo)
                                               : factor_with_eigenvalues(an.min_poly, field, opt.eigenvalues, fo);
    Matrix<R> mt = m.transpose();
    an.idempotent_residuals = idempotent_residuals(an.decomposition, mt);
    const auto& facs = an.decomposition.factors;
    for (size_t i = 0; i < facs.size(); ++i) {
        Matrix<R> proj = an.decomposition.idempotents[i].eval(mt);
        an.projectors.push_back(proj);
        auto js = jordan_chains(m, facs[i], opt.tol, facs[i].complex_factor());
        for (const auto& w : js.warnings) an.warnings.push_back("factor " + std::to_string(i) + ": " + w);
        an.structures.push_back(std::move(js));
    }
    if constexpr (!Num<R>::exact) {
        if (an.idempotent_residuals.max() > std::sqrt(opt.tol)) {
            std::ostringstream msg;
            msg << "idempotent residual " << an.idempotent_residuals.max() << " is large";
            an.warnings.push_back(msg.str());
        }
    }
    return an;
}

template <class R>
BoundaryData<R> zero_boundary(const Analysis<R>& an) {
    BoundaryData<R> bd;
    for (const auto& js : an.structures) bd.factors.push_back(zero_components(js));
    return bd;
}

namespace {

/// Float residual coefficients count as zero below tol * max(1, ref) * max(1, scale(M)).
template <class R>
double zero_tolerance(double tol, const Matrix<R>& m, double ref) {
    if constexpr (Num<R>::exact) return 0;
    return tol * std::max(1.0, ref) * std::max(1.0, m.scale());
}

template <class R>
void check_boundary(const Analysis<R>& an, const BoundaryData<R>& bd) {
    if (static_cast<int>(bd.factors.size()) != an.num_factors()) {
        std::ostringstream msg;
        msg << "boundary data has " << bd.factors.size() << " factors, the matrix has " << an.num_factors();
        throw UsageError(msg.str());
    }
    for (int i = 0; i < an.num_factors(); ++i) {
        const auto& cd = bd.factors[i];
        const auto& js = an.structures[i];
        if (cd.structure.chains != js.chains || !(cd.structure.algebra == js.algebra))
            throw UsageError("boundary data for factor " + std::to_string(i) + " has a different structure");
        validate_components(cd);
        if (an.field == Field::real && !js.algebra.complex_factor())
            for (const auto& f : cd.f)
                if (!f.is_real())
                    throw UsageError("factor " + std::to_string(i) + " is real; its data must have real coefficients");
    }
}

/// mu(phi((lambda + e) f)): the same expansion as v with every coefficient multiplied by lambda + e.
template <class R>
MPoly<R> phi_times_generator(const ADiffFunction<R>& f) {
    ADiffFunction<R> g = f;
    const int l = f.structure.l();
    const auto& lam = f.structure.algebra.lambda;
    for (int i = 0; i < l; ++i) {
        g.coeffs[i] = f.coeffs[i] * lam;
        if (i > 0) g.coeffs[i] += f.coeffs[i - 1];
    }
    return phi_polynomial(g);
}

}  // namespace

template <class R>
ResidualReport residual_report(const std::vector<std::pair<std::string, MPoly<R>>>& eqs, double zero_tol,
                               const GridSpec* grid) {
    ResidualReport rep;
    for (const auto& [name, p] : eqs) {
        EquationResidual er;
        er.name = name;
        er.max_coeff = p.max_abs_coeff();
        er.symbolic_zero = p.negligible(zero_tol);
        rep.symbolic_zero = rep.symbolic_zero && er.symbolic_zero;
        rep.max_coeff = std::max(rep.max_coeff, er.max_coeff);
        rep.equations.push_back(std::move(er));
    }
    if (grid) {
        rep.grid = *grid;
        rep.grid_evaluated = true;
        const size_t np = grid->size();
        const size_t ne = eqs.size();
        std::vector<double> vals(np * ne, 0.0);
        parallel_for(np, [&](size_t i) {
            auto x = grid->point_as<R>(i);
            for (size_t e = 0; e < ne; ++e)
                if (eqs[e].second.nvars() == grid->dims()) vals[i * ne + e] = eqs[e].second.eval(x).abs();
        });
        for (size_t e = 0; e < ne; ++e) {
            auto& er = rep.equations[e];
            for (size_t i = 0; i < np; ++i) {
                double a = vals[i * ne + e];
                if (er.where.empty() || a > er.max_grid) {
                    er.max_grid = a;
                    er.where = grid->point(i);
                }
            }
            if (rep.where.empty() || er.max_grid > rep.max_abs) {
                rep.max_abs = er.max_grid;
                rep.where = er.where;
            }
        }
    }
    return rep;
}

template <class R>
ResidualReport check_pair(const MPoly<R>& v, const MPoly<R>& w, const Matrix<R>& m, double tol, const GridSpec* grid) {
    const int n = m.rows();
    if (v.nvars() != n || w.nvars() != n) throw UsageError("v and w must have one variable per matrix row");
    std::vector<MPoly<R>> dv;
    for (int j = 0; j < n; ++j) dv.push_back(v.derivative(j));
    std::vector<std::pair<std::string, MPoly<R>>> eqs;
    for (int i = 0; i < n; ++i) {
        MPoly<R> r = w.derivative(i);
        for (int j = 0; j < n; ++j)
            if (!m(i, j).is_zero()) r -= dv[j] * m(i, j);
        eqs.emplace_back("grad[" + std::to_string(i) + "]", std::move(r));
    }
    return residual_report(eqs, zero_tolerance(tol, m, std::max(v.max_abs_coeff(), w.max_abs_coeff())), grid);
}

template <class R>
ResidualReport laplace_report(const MPoly<R>& v, const Matrix<R>& m, double tol, const GridSpec* grid) {
    const int n = m.rows();
    if (v.nvars() != n) throw UsageError("v must have one variable per matrix row");
    auto res = gen_laplace_residual(v, m);
    std::vector<std::pair<std::string, MPoly<R>>> eqs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            eqs.emplace_back("laplace[" + std::to_string(i) + "," + std::to_string(j) + "]", res[i * n + j]);
    return residual_report(eqs, zero_tolerance(tol, m, v.max_abs_coeff()), grid);
}

template <class R>
SolutionPair<R> build_pair(const Analysis<R>& an, const BoundaryData<R>& bd, const Complex<R>& c,
                           const GridSpec* grid) {
    check_boundary(an, bd);
    if (an.field == Field::real && !c.is_real()) throw UsageError("the constant must be real over the reals");
    const int n = an.n();
    SolutionPair<R> sp;
    sp.v = MPoly<R>(n);
    sp.w = MPoly<R>(n);
    sp.c = c;
    for (int i = 0; i < an.num_factors(); ++i) {
        ComponentData<R> cd{an.structures[i], bd.factors[i].f};
        auto f = extend_T(cd);
        sp.v += phi_polynomial(f);
        sp.w += phi_times_generator(f);
        sp.provenance.push_back(std::move(cd));
    }
    if (!c.is_zero()) sp.w += MPoly<R>::constant(n, c);
    if constexpr (!Num<R>::exact) {
        // expansion through complex coordinates leaves rounding-level imaginary parts
        if (an.field == Field::real) {
            sp.v = sp.v.real_part();
            sp.w = sp.w.real_part();
        }
    }
    sp.report = check_pair(sp.v, sp.w, an.m, an.tol, grid);
    return sp;
}

template <class R>
MPoly<R> integrate_w_from_v(const MPoly<R>& v, const Matrix<R>& m, const std::vector<Complex<R>>& b0, double tol) {
    const int n = m.rows();
    if (v.nvars() != n || static_cast<int>(b0.size()) != n) throw UsageError("dimension mismatch");
    auto lap = laplace_report(v, m, tol);
    if (!lap.symbolic_zero)
        throw IntegrabilityError("v violates the generalized Laplace system", lap.max_coeff);
    // variables u_0..u_{n-1}, t
    std::vector<int> keep(n);
    for (int i = 0; i < n; ++i) keep[i] = i;
    MPoly<R> t = MPoly<R>::variable(n + 1, n);
    std::vector<MPoly<R>> path, du;
    for (int i = 0; i < n; ++i) {
        MPoly<R> d = MPoly<R>::variable(n + 1, i) - MPoly<R>::constant(n + 1, b0[i]);
        path.push_back(MPoly<R>::constant(n + 1, b0[i]) + t * d);
        du.push_back(d);
    }
    MPoly<R> integrand(n + 1);
    for (int i = 0; i < n; ++i) {
        MPoly<R> gi(n);
        for (int j = 0; j < n; ++j)
            if (!m(i, j).is_zero()) gi += v.derivative(j) * m(i, j);
        if (gi.is_zero()) continue;
        integrand += gi.compose(path) * du[i];
    }
    MPoly<R> w(n);
    for (const auto& [e, c] : integrand.terms()) {
        Exps ex(e.begin(), e.begin() + n);
        w.add_term(ex, c * Complex<R>(Num<R>::from_ratio(1, e[n] + 1)));
    }
    return w;
}

namespace {

/// Parameters of slice k: one per chain, or (p_c, q_c) with z_c = p_c + i q_c on a complex factor.
template <class R>
struct SliceParams {
    std::vector<int> chains;
    int nparams = 0;
    std::vector<MPoly<R>> x;  // ambient point as polynomials in the parameters
    std::vector<MPoly<R>> z;  // slice coordinates
};

template <class R>
SliceParams<R> slice_params(const JordanStructure<R>& js, int k) {
    using S = Complex<R>;
    SliceParams<R> sp;
    sp.chains = js.slice_chains(k);
    const bool cf = js.real_form;
    const int m = static_cast<int>(sp.chains.size());
    sp.nparams = cf ? 2 * m : m;
    sp.x.assign(js.ambient, MPoly<R>(sp.nparams));
    for (int j = 0; j < m; ++j) {
        int col = js.index(sp.chains[j], 0);
        if (cf) {
            MPoly<R> p = MPoly<R>::variable(sp.nparams, 2 * j), q = MPoly<R>::variable(sp.nparams, 2 * j + 1);
            sp.z.push_back(p + q * S::i());
            for (int r = 0; r < js.ambient; ++r) {
                const S& b = js.basis(r, col);
                if (!Num<R>::is_zero(b.re)) sp.x[r] += p * S(b.re);
                if (!Num<R>::is_zero(b.im)) sp.x[r] -= q * S(b.im);
            }
        } else {
            MPoly<R> p = MPoly<R>::variable(sp.nparams, j);
            sp.z.push_back(p);
            for (int r = 0; r < js.ambient; ++r)
                if (!js.basis(r, col).is_zero()) sp.x[r] += p * js.basis(r, col);
        }
    }
    return sp;
}

template <class R>
MPoly<R> mu(const LocalAlgebra<R>& alg, const MPoly<R>& p) {
    return alg.complex_factor() ? p.imag_part() : p;
}

/// Directions Re(N^{l-1-k} g_c zeta) for zeta in {1, i} (just N^{l-1-k} g_c off a complex factor).
template <class R>
std::vector<std::pair<std::vector<Complex<R>>, Complex<R>>> slice_directions(const JordanStructure<R>& js, int k,
                                                                             int chain) {
    using S = Complex<R>;
    int col = js.index(chain, js.l() - 1 - k);
    auto b = js.basis.column(col);
    std::vector<std::pair<std::vector<S>, S>> out;
    if (!js.real_form) {
        out.emplace_back(b, S(1));
        return out;
    }
    for (S zeta : {S(1), S::i()}) {
        std::vector<S> d(b.size());
        for (size_t r = 0; r < b.size(); ++r) d[r] = S((b[r] * zeta).re);
        out.emplace_back(d, zeta);
    }
    return out;
}

/// Restriction of v to the deepest slice and its directional derivatives on every slice.
template <class R>
std::vector<std::pair<std::string, MPoly<R>>> bvp_data_of_v(const MPoly<R>& v, const JordanStructure<R>& js) {
    const int l = js.l();
    std::vector<std::pair<std::string, MPoly<R>>> out;
    auto top = slice_params(js, l - 1);
    out.emplace_back("slice_value", v.compose(top.x));
    for (int k = 0; k <= l - 2; ++k) {
        auto sp = slice_params(js, k);
        for (size_t j = 0; j < sp.chains.size(); ++j) {
            int part = 0;
            for (const auto& [dir, zeta] : slice_directions(js, k, sp.chains[j])) {
                (void)zeta;
                std::ostringstream name;
                name << "slice_derivative[k=" << k << ",chain=" << sp.chains[j] << ",part=" << part++ << "]";
                out.emplace_back(name.str(), v.directional(dir).compose(sp.x));
            }
        }
    }
    return out;
}

/// The same quantities predicted by the data: mu f_{l-1} and mu(zeta d f_k / d z_c).
template <class R>
std::vector<MPoly<R>> bvp_data_of_f(const ComponentData<R>& cd) {
    const auto& js = cd.structure;
    const int l = js.l();
    std::vector<MPoly<R>> out;
    auto top = slice_params(js, l - 1);
    out.push_back(mu(js.algebra, cd.f[l - 1].compose(top.z)));
    for (int k = 0; k <= l - 2; ++k) {
        auto sp = slice_params(js, k);
        for (size_t j = 0; j < sp.chains.size(); ++j)
            for (const auto& [dir, zeta] : slice_directions(js, k, sp.chains[j])) {
                (void)dir;
                out.push_back(mu(js.algebra, cd.f[k].derivative(static_cast<int>(j)).compose(sp.z) * zeta));
            }
    }
    return out;
}

template <class R>
void require_single_factor(const Analysis<R>& an) {
    if (an.num_factors() != 1)
        throw UsageError("the boundary value problem needs a matrix with a single eigenvalue (or conjugate pair)");
}

}  // namespace

template <class R>
BvpSolution<R> solve_bvp(const Analysis<R>& an, const BoundaryData<R>& bd) {
    require_single_factor(an);
    check_boundary(an, bd);
    BvpSolution<R> sol;
    ComponentData<R> cd{an.structures[0], bd.factors[0].f};
    sol.v = phi_polynomial(extend_T(cd));
    if constexpr (!Num<R>::exact)
        if (an.field == Field::real) sol.v = sol.v.real_part();
    sol.report = check_bvp_conditions(sol.v, an, bd);
    return sol;
}

template <class R>
ResidualReport check_bvp_conditions(const MPoly<R>& v, const Analysis<R>& an, const BoundaryData<R>& bd) {
    require_single_factor(an);
    check_boundary(an, bd);
    const int n = an.n();
    if (v.nvars() != n) throw UsageError("v must have one variable per matrix row");
    ComponentData<R> cd{an.structures[0], bd.factors[0].f};
    std::vector<std::pair<std::string, MPoly<R>>> eqs;
    auto lap = gen_laplace_residual(v, an.m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            eqs.emplace_back("laplace[" + std::to_string(i) + "," + std::to_string(j) + "]", lap[i * n + j]);
    auto lhs = bvp_data_of_v(v, cd.structure);
    auto rhs = bvp_data_of_f(cd);
    double ref = v.max_abs_coeff();
    for (size_t q = 0; q < lhs.size(); ++q) {
        ref = std::max(ref, rhs[q].max_abs_coeff());
        eqs.emplace_back(lhs[q].first, lhs[q].second - rhs[q]);
    }
    return residual_report(eqs, zero_tolerance(an.tol, an.m, ref));
}

template <class R>
KernelReport uniqueness_kernel(const Analysis<R>& an, int degree_bound) {
    require_single_factor(an);
    const auto& js = an.structures[0];
    auto unknowns = gauge_unknowns(js, degree_bound);
    auto cols = phi_columns(js, unknowns);
    SparseSystem<R> sys(static_cast<int>(unknowns.size()));
    std::map<std::pair<int, Exps>, int> rows;
    for (size_t u = 0; u < unknowns.size(); ++u) {
        auto data = bvp_data_of_v(cols[u], js);
        for (size_t q = 0; q < data.size(); ++q)
            for (const auto& [e, c] : data[q].second.terms()) {
                auto [it, fresh] = rows.try_emplace({static_cast<int>(q), e}, 0);
                if (fresh) it->second = sys.add_row();
                sys.add(it->second, static_cast<int>(u), c);
            }
    }
    KernelReport rep;
    rep.unknowns = static_cast<int>(unknowns.size());
    rep.rank = sparse_solve(sys, an.tol).rank;
    rep.kernel = rep.unknowns - rep.rank;
    return rep;
}

#define MODAL_INSTANTIATE(R)                                                                                     \
    template Analysis<R> analyze<R>(const Matrix<R>&, Field, const AnalyzeOptions<R>&);                          \
    template BoundaryData<R> zero_boundary<R>(const Analysis<R>&);                                               \
    template ResidualReport residual_report<R>(const std::vector<std::pair<std::string, MPoly<R>>>&, double,     \
                                               const GridSpec*);                                                 \
    template SolutionPair<R> build_pair<R>(const Analysis<R>&, const BoundaryData<R>&, const Complex<R>&,        \
                                           const GridSpec*);                                                     \
    template ResidualReport check_pair<R>(const MPoly<R>&, const MPoly<R>&, const Matrix<R>&, double,            \
                                          const GridSpec*);                                                      \
    template ResidualReport laplace_report<R>(const MPoly<R>&, const Matrix<R>&, double, const GridSpec*);       \
    template MPoly<R> integrate_w_from_v<R>(const MPoly<R>&, const Matrix<R>&, const std::vector<Complex<R>>&,   \
                                            double);                                                             \
    template BvpSolution<R> solve_bvp<R>(const Analysis<R>&, const BoundaryData<R>&);                            \
    template ResidualReport check_bvp_conditions<R>(const MPoly<R>&, const Analysis<R>&, const BoundaryData<R>&); \
    template KernelReport uniqueness_kernel<R>(const Analysis<R>&, int);

MODAL_INSTANTIATE(double)
MODAL_INSTANTIATE(Rational)

}  // namespace modal
