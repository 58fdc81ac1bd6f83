#include "modal/adiff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "modal/quadrature.hpp"
#include "modal/sparse_solve.hpp"

namespace modal {

namespace {

template <class R>
std::vector<int> slice_map(const JordanStructure<R>& js, int k) {
    return slice_spec(js, k).coords;
}

/// Jets U_c = sum_s u_{c,s} e^s for every chain.
template <class R>
std::vector<JetPoly<R>> chain_jets(const JordanStructure<R>& js) {
    const int d = js.dim(), l = js.l();
    std::vector<JetPoly<R>> u;
    for (int c = 0; c < js.num_chains(); ++c) {
        JetPoly<R> j(l, d);
        for (int s = 0; s < js.chains[c] && s < l; ++s) j.c[s] = MPoly<R>::variable(d, js.index(c, s));
        u.push_back(std::move(j));
    }
    return u;
}

template <class R>
JetPoly<R> jet_one(int l, int d) {
    JetPoly<R> j(l, d);
    j.c[0] = MPoly<R>::constant(d, Complex<R>(1));
    return j;
}

/// Evaluates a slice polynomial at jet arguments, with cached powers.
template <class R>
class JetEvaluator {
public:
    JetEvaluator(const JordanStructure<R>& js) : js_(js), u_(chain_jets(js)), pw_(js.num_chains()) {}

    JetPoly<R> power(int c, int e) {
        auto& cache = pw_[c];
        if (cache.empty()) cache.push_back(jet_one<R>(js_.l(), js_.dim()));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * u_[c]);
        return cache[e];
    }

    JetPoly<R> monomial(const std::vector<int>& chains, const Exps& e) {
        JetPoly<R> acc = jet_one<R>(js_.l(), js_.dim());
        for (size_t i = 0; i < chains.size(); ++i)
            if (e[i]) acc = acc * power(chains[i], e[i]);
        return acc;
    }

    JetPoly<R> eval(const std::vector<int>& chains, const MPoly<R>& p) {
        JetPoly<R> acc(js_.l(), js_.dim());
        for (const auto& [e, c] : p.terms()) acc = acc + monomial(chains, e) * c;
        return acc;
    }

private:
    const JordanStructure<R>& js_;
    std::vector<JetPoly<R>> u_;
    std::vector<std::vector<JetPoly<R>>> pw_;
};

template <class R>
std::vector<MPoly<R>> ambient_substitution(const JordanStructure<R>& js) {
    std::vector<MPoly<R>> subs;
    for (int j = 0; j < js.dim(); ++j) {
        MPoly<R> p(js.ambient);
        for (int x = 0; x < js.ambient; ++x)
            if (!js.coord_map(j, x).is_zero()) p += MPoly<R>::variable(js.ambient, x) * js.coord_map(j, x);
        subs.push_back(std::move(p));
    }
    return subs;
}

template <class R>
MPoly<R> apply_mu_poly(const LocalAlgebra<R>& alg, const MPoly<R>& p) {
    return alg.complex_factor() ? p.imag_part() : p;
}

struct RowKey {
    int part;
    Exps e;
    bool operator<(const RowKey& o) const { return part != o.part ? part < o.part : e < o.e; }
};

template <class R>
class RowIndex {
public:
    explicit RowIndex(SparseSystem<R>& sys) : sys_(sys) {}
    int row(int part, const Exps& e) {
        auto [it, fresh] = idx_.try_emplace(RowKey{part, e}, 0);
        if (fresh) it->second = sys_.add_row();
        return it->second;
    }

private:
    SparseSystem<R>& sys_;
    std::map<RowKey, int> idx_;
};

}  // namespace

template <class R>
void validate_components(const ComponentData<R>& cd) {
    const auto& js = cd.structure;
    if (static_cast<int>(cd.f.size()) != js.l()) {
        std::ostringstream msg;
        msg << "expected " << js.l() << " components, got " << cd.f.size();
        throw UsageError(msg.str());
    }
    for (int k = 0; k < js.l(); ++k) {
        int m = static_cast<int>(js.slice_chains(k).size());
        if (cd.f[k].nvars() != m) {
            std::ostringstream msg;
            msg << "component " << k << " must have " << m << " variables, has " << cd.f[k].nvars();
            throw UsageError(msg.str());
        }
    }
}

template <class R>
ComponentData<R> zero_components(const JordanStructure<R>& js) {
    ComponentData<R> cd{js, {}};
    for (int k = 0; k < js.l(); ++k) cd.f.emplace_back(static_cast<int>(js.slice_chains(k).size()));
    return cd;
}

template <class R>
ADiffFunction<R> extend_T(const ComponentData<R>& cd) {
    validate_components(cd);
    const auto& js = cd.structure;
    const int d = js.dim(), l = js.l(), nc = js.num_chains();
    ADiffFunction<R> out{js, std::vector<MPoly<R>>(l, MPoly<R>(d))};
    for (int k = 0; k < l; ++k) {
        const MPoly<R>& fk = cd.f[k];
        if (fk.is_zero()) continue;
        auto sl = js.slice_chains(k);
        auto map = slice_map(js, k);
        std::vector<int> pos(nc, -1);
        for (size_t i = 0; i < sl.size(); ++i) pos[sl[i]] = static_cast<int>(i);

        // rho_{(e^k)} f_k(pi_{D_k} u)
        out.coeffs[k] += fk.embed(d, map);
        if (k == l - 1) continue;

        // u - rho pi u: every coordinate except the slice generators
        std::vector<MPoly<R>> w(d, MPoly<R>(d));
        for (int c = 0; c < nc; ++c)
            for (int s = 0; s < js.chains[c]; ++s)
                if (!(s == 0 && pos[c] >= 0)) w[js.index(c, s)] = MPoly<R>::variable(d, js.index(c, s));

        std::map<std::vector<int>, MPoly<R>> dcache;
        std::function<MPoly<R>(const std::vector<int>&)> f_data = [&](const std::vector<int>& tuple) {
            std::vector<int> vars;
            for (int c : tuple) {
                if (pos[c] < 0) return MPoly<R>(d);
                vars.push_back(pos[c]);
            }
            std::sort(vars.begin(), vars.end());
            auto it = dcache.find(vars);
            if (it != dcache.end()) return it->second;
            MPoly<R> g = fk;
            for (int v : vars) g = g.derivative(v);
            MPoly<R> emb = g.embed(d, map);
            dcache.emplace(vars, emb);
            return emb;
        };
        for (int j = 1; j <= l - 1 - k; ++j) {
            std::vector<std::vector<MPoly<R>>> args(j, w);
            auto lifted = lift_Gj_generic<R, MPoly<R>>(js, k, f_data, args, MPoly<R>(d));
            Complex<R> w_j = factorial_inv<R>(j);
            for (int i = 0; i < l; ++i)
                if (!lifted[i].is_zero()) out.coeffs[i] += lifted[i] * w_j;
        }
    }
    return out;
}

template <class R>
ADiffFunction<R> extend_T_jet(const ComponentData<R>& cd) {
    validate_components(cd);
    const auto& js = cd.structure;
    const int d = js.dim(), l = js.l();
    JetEvaluator<R> ev(js);
    JetPoly<R> acc(l, d);
    for (int k = 0; k < l; ++k) {
        if (cd.f[k].is_zero()) continue;
        acc = acc + ev.eval(js.slice_chains(k), cd.f[k]).shift(k);
    }
    return ADiffFunction<R>{js, acc.c};
}

template <class R>
ADiffFunction<R> extend_T_free(const LocalAlgebra<R>& alg, int n, const std::vector<MPoly<R>>& components) {
    auto js = JordanStructure<R>::free_module(alg, n);
    return extend_T(ComponentData<R>{js, components});
}

template <class R>
ComponentData<R> reduce_H(const std::vector<MPoly<R>>& f, const JordanStructure<R>& js, int degree_bound,
                          const ReduceOptions& opt) {
    const int l = js.l(), d = js.dim();
    if (static_cast<int>(f.size()) != l) throw UsageError("reduce_H needs l coefficient polynomials");
    for (const auto& p : f)
        if (p.nvars() != d) throw UsageError("coefficient polynomial has the wrong variable count");
    if (!opt.accept_non_differentiable) {
        auto res = cr_residual(f, js);
        if (!cr_symbolic_zero(res, opt.tol)) {
            double worst = 0;
            for (const auto& j : res)
                for (const auto& p : j.c) worst = std::max(worst, p.max_abs_coeff());
            throw NotRepresentableError("input is not A-differentiable", worst);
        }
    }
    for (const auto& p : f)
        if (p.degree() > degree_bound) throw NotRepresentableError("input degree exceeds the degree bound", 0.0);

    struct Unknown {
        int k;
        Exps e;
    };
    std::vector<Unknown> unknowns;
    std::vector<std::vector<int>> slices(l);
    for (int k = 0; k < l; ++k) {
        slices[k] = js.slice_chains(k);
        for (auto& e : monomials_up_to(static_cast<int>(slices[k].size()), degree_bound)) unknowns.push_back({k, e});
    }
    SparseSystem<R> sys(static_cast<int>(unknowns.size()));
    RowIndex<R> rows(sys);
    JetEvaluator<R> ev(js);
    for (size_t u = 0; u < unknowns.size(); ++u) {
        auto col = ev.monomial(slices[unknowns[u].k], unknowns[u].e).shift(unknowns[u].k);
        for (int i = 0; i < l; ++i)
            for (const auto& [e, c] : col.c[i].terms()) sys.add(rows.row(i, e), static_cast<int>(u), c);
    }
    for (int i = 0; i < l; ++i)
        for (const auto& [e, c] : f[i].terms()) sys.rhs[rows.row(i, e)] += c;

    auto sol = sparse_solve(sys, opt.tol);
    if (!sol.consistent) throw NotRepresentableError("no components reproduce the input", sol.residual);
    ComponentData<R> cd = zero_components(js);
    for (size_t u = 0; u < unknowns.size(); ++u)
        cd.f[unknowns[u].k].add_term(unknowns[u].e, sol.x[u]);
    return cd;
}

template <class R>
MPoly<R> phi_polynomial(const ADiffFunction<R>& f) {
    const auto& js = f.structure;
    MPoly<R> top = f.coeffs[js.l() - 1].compose(ambient_substitution(js));
    return apply_mu_poly(js.algebra, top);
}

template <class R>
std::vector<GaugeUnknown> gauge_unknowns(const JordanStructure<R>& js, int degree_bound) {
    const int l = js.l();
    const int nparts = js.algebra.complex_factor() ? 2 : 1;
    std::vector<GaugeUnknown> out;
    for (int k = 0; k < l; ++k) {
        int m = static_cast<int>(js.slice_chains(k).size());
        for (auto& e : monomials_up_to(m, degree_bound)) {
            bool constant = std::all_of(e.begin(), e.end(), [](uint8_t x) { return x == 0; });
            for (int p = 0; p < nparts; ++p) {
                if (constant && k <= l - 2) continue;
                if (constant && k == l - 1 && nparts == 2 && p == 0) continue;
                out.push_back({k, e, p});
            }
        }
    }
    return out;
}

template <class R>
std::vector<MPoly<R>> phi_columns(const JordanStructure<R>& js, const std::vector<GaugeUnknown>& unknowns) {
    using S = Complex<R>;
    const int l = js.l();
    auto subs = ambient_substitution(js);
    JetEvaluator<R> ev(js);
    std::vector<std::vector<int>> slices(l);
    for (int k = 0; k < l; ++k) slices[k] = js.slice_chains(k);
    std::vector<MPoly<R>> out;
    for (const auto& un : unknowns) {
        S part = un.part == 0 ? S(1) : S::i();
        auto col = ev.monomial(slices[un.k], un.e).shift(un.k);
        MPoly<R> top = (col.c[l - 1] * part).compose(subs);
        out.push_back(apply_mu_poly(js.algebra, top));
    }
    return out;
}

template <class R>
ComponentData<R> recover_from_phi(const MPoly<R>& v, const JordanStructure<R>& js, int degree_bound, double tol) {
    using S = Complex<R>;
    if (v.nvars() != js.ambient) throw UsageError("v has the wrong variable count");
    auto unknowns = gauge_unknowns(js, degree_bound);
    auto cols = phi_columns(js, unknowns);
    SparseSystem<R> sys(static_cast<int>(unknowns.size()));
    RowIndex<R> rows(sys);
    for (size_t u = 0; u < unknowns.size(); ++u)
        for (const auto& [e, c] : cols[u].terms()) sys.add(rows.row(0, e), static_cast<int>(u), c);
    for (const auto& [e, c] : v.terms()) sys.rhs[rows.row(0, e)] += c;
    auto sol = sparse_solve(sys, tol);
    if (!sol.consistent) throw NotRepresentableError("v is not a component of an A-differentiable map", sol.residual);
    ComponentData<R> cd = zero_components(js);
    for (size_t u = 0; u < unknowns.size(); ++u)
        cd.f[unknowns[u].k].add_term(unknowns[u].e, sol.x[u] * (unknowns[u].part == 0 ? S(1) : S::i()));
    return cd;
}

template <class R>
AlgElem<R> evaluate_chain(const ADiffFunction<R>& f, const ChainCoords<R>& cc) {
    std::vector<Complex<R>> c;
    for (const auto& p : f.coeffs) c.push_back(p.eval(cc));
    return AlgElem<R>(f.structure.algebra, c);
}

template <class R>
AlgElem<R> evaluate(const ADiffFunction<R>& f, const std::vector<Complex<R>>& u) {
    return evaluate_chain(f, to_chain_coords(f.structure, u));
}

template <class R>
Complex<R> phi_of(const ADiffFunction<R>& f, const std::vector<Complex<R>>& u) {
    return frobenius_phi_field(evaluate(f, u));
}

template <class R>
std::vector<JetPoly<R>> cr_residual(const std::vector<MPoly<R>>& coeffs, const JordanStructure<R>& js) {
    const int l = js.l(), d = js.dim();
    if (static_cast<int>(coeffs.size()) != l) throw UsageError("need l coefficient polynomials");
    auto partial = [&](int var) {
        JetPoly<R> j(l, d);
        for (int i = 0; i < l; ++i) j.c[i] = coeffs[i].derivative(var);
        return j;
    };
    std::vector<JetPoly<R>> out;
    for (int c = 0; c < js.num_chains(); ++c)
        for (int s = 0; s < js.chains[c]; ++s) {
            JetPoly<R> r = partial(js.index(c, s)).shift(1);
            if (s + 1 < js.chains[c]) r = r - partial(js.index(c, s + 1));
            out.push_back(std::move(r));
        }
    return out;
}

template <class R>
std::vector<JetPoly<R>> cr_residual(const ADiffFunction<R>& f) {
    return cr_residual(f.coeffs, f.structure);
}

template <class R>
bool cr_symbolic_zero(const std::vector<JetPoly<R>>& res, double tol) {
    return std::all_of(res.begin(), res.end(), [&](const JetPoly<R>& j) { return j.negligible(tol); });
}

template <class R>
StructureConstants<R> StructureConstants<R>::complex_numbers() {
    using S = Complex<R>;
    StructureConstants sc;
    sc.m = 2;
    sc.alpha = {{{S(1), S(0)}, {S(0), S(1)}}, {{S(0), S(1)}, {S(-1), S(0)}}};
    return sc;
}

template <class R>
std::vector<std::vector<MPoly<R>>> cr_residual_general(const StructureConstants<R>& sc,
                                                       const std::vector<MPoly<R>>& coeffs) {
    const int m = sc.m;
    if (static_cast<int>(coeffs.size()) != m) throw UsageError("need one coefficient polynomial per basis element");
    auto partial = [&](int var) {
        std::vector<MPoly<R>> v;
        for (const auto& p : coeffs) v.push_back(p.derivative(var));
        return v;
    };
    auto d0 = partial(0);
    std::vector<std::vector<MPoly<R>>> out;
    for (int i = 1; i < m; ++i) {
        auto di = partial(i);
        // c_i * d0
        std::vector<MPoly<R>> prod(m, MPoly<R>(m));
        for (int j = 0; j < m; ++j)
            for (int s = 0; s < m; ++s)
                if (!sc.alpha[i][j][s].is_zero()) prod[s] += d0[j] * sc.alpha[i][j][s];
        for (int s = 0; s < m; ++s) di[s] -= prod[s];
        out.push_back(std::move(di));
    }
    return out;
}

template <class R>
std::vector<std::vector<MPoly<R>>> hessian(const MPoly<R>& v) {
    const int n = v.nvars();
    std::vector<std::vector<MPoly<R>>> h(n, std::vector<MPoly<R>>(n, MPoly<R>(n)));
    for (int i = 0; i < n; ++i) {
        MPoly<R> di = v.derivative(i);
        for (int j = i; j < n; ++j) h[i][j] = h[j][i] = di.derivative(j);
    }
    return h;
}

template <class R>
std::vector<MPoly<R>> gen_laplace_residual(const MPoly<R>& v, const Matrix<R>& m) {
    const int n = v.nvars();
    if (m.rows() != n || m.cols() != n) throw UsageError("matrix size does not match the variable count");
    auto h = hessian(v);
    std::vector<MPoly<R>> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            MPoly<R> r(n);
            for (int k = 0; k < n; ++k) {
                if (!m(i, k).is_zero()) r += h[k][j] * m(i, k);
                if (!m(j, k).is_zero()) r -= h[i][k] * m(j, k);
            }
            out.push_back(std::move(r));
        }
    return out;
}

AlgElem<double> contour_integral(const AFunction& f, const std::vector<AlgElem<double>>& vertices, bool closed,
                                 double tol) {
    if (vertices.size() < 2) throw UsageError("a curve needs at least two vertices");
    const auto& alg = vertices[0].algebra();
    const int l = alg.l;
    AlgElem<double> total(alg);
    size_t segs = closed ? vertices.size() : vertices.size() - 1;
    for (size_t s = 0; s < segs; ++s) {
        const auto& p = vertices[s];
        const auto& q = vertices[(s + 1) % vertices.size()];
        AlgElem<double> dx = q - p;
        auto integrand = [&](double t) {
            AlgElem<double> val = f(p + dx * Complex<double>(t)) * dx;
            std::vector<double> out(2 * l);
            for (int i = 0; i < l; ++i) {
                out[2 * i] = val[i].re;
                out[2 * i + 1] = val[i].im;
            }
            return out;
        };
        auto res = integrate_adaptive(integrand, tol);
        for (int i = 0; i < l; ++i) total[i] += Complex<double>(res.value[2 * i], res.value[2 * i + 1]);
    }
    return total;
}

AFunction restrict_to_line(const ADiffFunction<double>& f, const ChainCoords<double>& base, int chain) {
    const auto& js = f.structure;
    if (chain < 0 || chain >= js.num_chains() || js.chains[chain] != js.l())
        throw UsageError("A-line needs a chain of full length");
    return [f, base, chain](const AlgElem<double>& a) {
        ChainCoords<double> cc = base;
        for (int s = 0; s < f.structure.l(); ++s) cc[f.structure.index(chain, s)] += a[s];
        return evaluate_chain(f, cc);
    };
}

template <class R>
ADiffFunction<R> a_primitive(const ADiffFunction<R>& f, const AlgElem<R>& b0) {
    const auto& js = f.structure;
    const int l = js.l();
    if (js.num_chains() != 1 || js.dim() != l) throw UsageError("a_primitive needs f defined on A itself");
    const int nv = l + 1;  // chain coordinates and the path parameter t
    std::vector<MPoly<R>> path;
    MPoly<R> t = MPoly<R>::variable(nv, l);
    for (int s = 0; s < l; ++s) {
        MPoly<R> z = MPoly<R>::variable(nv, s);
        MPoly<R> b = MPoly<R>::constant(nv, b0[s]);
        path.push_back(b + t * (z - b));
    }
    JetPoly<R> integral(l, l);
    for (int i = 0; i < l; ++i) {
        MPoly<R> along = f.coeffs[i].compose(path);
        for (const auto& [e, c] : along.terms()) {
            Exps e2(e.begin(), e.begin() + l);
            integral.c[i].add_term(e2, c / Complex<R>(static_cast<int>(e[l]) + 1));
        }
    }
    JetPoly<R> diff(l, l);
    for (int s = 0; s < l; ++s) diff.c[s] = MPoly<R>::variable(l, s) - MPoly<R>::constant(l, b0[s]);
    return ADiffFunction<R>{js, (diff * integral).c};
}

template <class R>
MultilinearTable<R> symmetrize(int dim, int degree, const std::vector<std::pair<Exps, AlgElem<R>>>& monomials,
                               const LocalAlgebra<R>& alg) {
    MultilinearTable<R> t;
    t.degree = degree;
    t.dim = dim;
    size_t total = 1;
    for (int i = 0; i < degree; ++i) total *= dim;
    t.entries.assign(total, AlgElem<R>(alg));
    std::map<Exps, AlgElem<R>> by_exp;
    for (const auto& [e, a] : monomials) {
        if (static_cast<int>(e.size()) != dim) throw UsageError("monomial exponent length mismatch");
        int deg = 0;
        for (auto x : e) deg += x;
        if (deg != degree) throw UsageError("monomial degree does not match the table degree");
        auto it = by_exp.find(e);
        if (it == by_exp.end())
            by_exp.emplace(e, a);
        else
            it->second = it->second + a;
    }
    for (size_t idx = 0; idx < total; ++idx) {
        Exps e(dim, 0);
        size_t r = idx;
        for (int i = 0; i < degree; ++i) {
            e[r % dim] += 1;
            r /= dim;
        }
        auto it = by_exp.find(e);
        if (it == by_exp.end()) continue;
        // number of orderings of the multiset
        R orderings = Num<R>::from_int(1);
        for (int i = 2; i <= degree; ++i) orderings *= Num<R>::from_int(i);
        for (auto x : e)
            for (int i = 2; i <= x; ++i) orderings /= Num<R>::from_int(i);
        t.entries[idx] = it->second * Complex<R>(Num<R>::from_int(1) / orderings);
    }
    return t;
}

template <class R>
AlgElem<R> apoly_eval(const std::vector<MultilinearTable<R>>& tables, const std::vector<Complex<R>>& x,
                      const LocalAlgebra<R>& alg) {
    AlgElem<R> acc(alg);
    for (const auto& t : tables) {
        if (t.dim != static_cast<int>(x.size())) throw UsageError("table dimension does not match the point");
        size_t total = 1;
        for (int i = 0; i < t.degree; ++i) total *= t.dim;
        if (t.entries.size() != total) throw UsageError("table has the wrong number of entries");
        double scale = 0;
        for (const auto& a : t.entries)
            for (const auto& c : a.coeffs()) scale = std::max(scale, c.abs());
        for (size_t idx = 0; idx < total; ++idx) {
            std::vector<int> tuple(t.degree);
            size_t r = idx;
            for (int i = 0; i < t.degree; ++i) {
                tuple[t.degree - 1 - i] = static_cast<int>(r % t.dim);
                r /= t.dim;
            }
            std::vector<int> sorted = tuple;
            std::sort(sorted.begin(), sorted.end());
            size_t sidx = 0;
            for (int v : sorted) sidx = sidx * t.dim + v;
            const auto& a = t.entries[idx];
            const auto& b = t.entries[sidx];
            for (int i = 0; i < alg.l; ++i)
                if (!negligible(a[i] - b[i], 1e-12 * std::max(scale, 1.0)))
                    throw UsageError("multilinear table is not symmetric");
            Complex<R> prod(1);
            for (int v : tuple) prod = prod * x[v];
            if (!prod.is_zero()) acc = acc + a * prod;
        }
    }
    return acc;
}

double alg_norm(const AlgElem<double>& a) {
    double s = 0;
    for (const auto& c : a.coeffs()) s += c.abs();
    return s;
}

std::vector<ChainCoords<double>> unit_directions(int dim, bool complex_coords) {
    using S = Complex<double>;
    std::vector<ChainCoords<double>> out;
    const double h = 1 / std::sqrt(2.0);
    std::vector<S> units{S(1)};
    if (complex_coords) units.push_back(S::i());
    for (int j = 0; j < dim; ++j)
        for (const auto& u : units) {
            ChainCoords<double> v(dim);
            v[j] = u;
            out.push_back(v);
        }
    for (int j = 0; j < dim; ++j)
        for (int k = j + 1; k < dim; ++k)
            for (const auto& u : units)
                for (double sgn : {1.0, -1.0}) {
                    ChainCoords<double> v(dim);
                    v[j] = S(h);
                    v[k] = u * S(sgn * h);
                    out.push_back(v);
                }
    return out;
}

NormEstimate estimate_norm_k(const ADiffFunction<double>& f, const std::vector<ChainCoords<double>>& points, int k,
                             double spacing) {
    using S = Complex<double>;
    const auto& js = f.structure;
    const int d = js.dim(), l = js.l();
    auto dirs = unit_directions(d, !f.structure.algebra.lambda.is_real() || f.structure.algebra.field == Field::complex);
    NormEstimate est;
    est.spacing = spacing;
    est.points = static_cast<int>(points.size());
    est.directions = static_cast<int>(dirs.size());
    std::vector<double> sup(k + 1, 0.0);
    for (const auto& p : points) {
        sup[0] = std::max(sup[0], alg_norm(evaluate_chain(f, p)));
        if (k == 0) continue;
        for (const auto& y : dirs) {
            std::vector<MPoly<double>> line;
            for (int j = 0; j < d; ++j)
                line.push_back(MPoly<double>::constant(1, p[j]) + MPoly<double>::variable(1, 0) * y[j]);
            std::vector<std::vector<S>> taylor(k + 1, std::vector<S>(l));
            for (int i = 0; i < l; ++i) {
                MPoly<double> g = f.coeffs[i].compose(line);
                for (int o = 1; o <= k; ++o) taylor[o][i] = g.coeff(Exps{static_cast<uint8_t>(o)});
            }
            for (int o = 1; o <= k; ++o) sup[o] = std::max(sup[o], alg_norm(AlgElem<double>(js.algebra, taylor[o])));
        }
    }
    for (double s : sup) est.value += s;
    return est;
}

#define MODAL_INSTANTIATE(R)                                                                                  \
    template void validate_components<R>(const ComponentData<R>&);                                            \
    template ComponentData<R> zero_components<R>(const JordanStructure<R>&);                                  \
    template ADiffFunction<R> extend_T<R>(const ComponentData<R>&);                                           \
    template ADiffFunction<R> extend_T_jet<R>(const ComponentData<R>&);                                       \
    template ADiffFunction<R> extend_T_free<R>(const LocalAlgebra<R>&, int, const std::vector<MPoly<R>>&);    \
    template ComponentData<R> reduce_H<R>(const std::vector<MPoly<R>>&, const JordanStructure<R>&, int,       \
                                          const ReduceOptions&);                                              \
    template MPoly<R> phi_polynomial<R>(const ADiffFunction<R>&);                                             \
    template ComponentData<R> recover_from_phi<R>(const MPoly<R>&, const JordanStructure<R>&, int, double);   \
    template std::vector<GaugeUnknown> gauge_unknowns<R>(const JordanStructure<R>&, int);                     \
    template std::vector<MPoly<R>> phi_columns<R>(const JordanStructure<R>&, const std::vector<GaugeUnknown>&); \
    template AlgElem<R> evaluate_chain<R>(const ADiffFunction<R>&, const ChainCoords<R>&);                    \
    template AlgElem<R> evaluate<R>(const ADiffFunction<R>&, const std::vector<Complex<R>>&);                 \
    template Complex<R> phi_of<R>(const ADiffFunction<R>&, const std::vector<Complex<R>>&);                   \
    template std::vector<JetPoly<R>> cr_residual<R>(const ADiffFunction<R>&);                                 \
    template std::vector<JetPoly<R>> cr_residual<R>(const std::vector<MPoly<R>>&, const JordanStructure<R>&); \
    template bool cr_symbolic_zero<R>(const std::vector<JetPoly<R>>&, double);                                \
    template struct StructureConstants<R>;                                                                    \
    template std::vector<std::vector<MPoly<R>>> cr_residual_general<R>(const StructureConstants<R>&,          \
                                                                       const std::vector<MPoly<R>>&);         \
    template std::vector<std::vector<MPoly<R>>> hessian<R>(const MPoly<R>&);                                  \
    template std::vector<MPoly<R>> gen_laplace_residual<R>(const MPoly<R>&, const Matrix<R>&);                \
    template ADiffFunction<R> a_primitive<R>(const ADiffFunction<R>&, const AlgElem<R>&);                     \
    template MultilinearTable<R> symmetrize<R>(int, int, const std::vector<std::pair<Exps, AlgElem<R>>>&,     \
                                               const LocalAlgebra<R>&);                                       \
    template AlgElem<R> apoly_eval<R>(const std::vector<MultilinearTable<R>>&, const std::vector<Complex<R>>&, \
                                      const LocalAlgebra<R>&);

MODAL_INSTANTIATE(double)
MODAL_INSTANTIATE(Rational)

}  // namespace modal
