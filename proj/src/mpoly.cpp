#include "modal/mpoly.hpp"

#include <algorithm>

#include "modal/errors.hpp"

namespace modal {

template <class R>
MPoly<R> MPoly<R>::constant(int nvars, const S& c) {
    MPoly p(nvars);
    p.add_term(Exps(nvars, 0), c);
    return p;
}

template <class R>
MPoly<R> MPoly<R>::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw UsageError("variable index out of range");
    Exps e(nvars, 0);
    e[i] = 1;
    return monomial(nvars, e);
}

template <class R>
MPoly<R> MPoly<R>::monomial(int nvars, const Exps& e, const S& c) {
    MPoly p(nvars);
    p.add_term(e, c);
    return p;
}

template <class R>
int MPoly<R>::degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) {
        int s = 0;
        for (auto x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

template <class R>
Complex<R> MPoly<R>::coeff(const Exps& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? S() : it->second;
}

template <class R>
void MPoly<R>::add_term(const Exps& e, const S& c) {
    if (static_cast<int>(e.size()) != n_) throw UsageError("exponent length does not match variable count");
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

template <class R>
void MPoly<R>::check(const MPoly& o) const {
    if (n_ != o.n_) throw UsageError("polynomials in different variable counts");
}

template <class R>
MPoly<R>& MPoly<R>::operator+=(const MPoly& o) {
    check(o);
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

template <class R>
MPoly<R>& MPoly<R>::operator-=(const MPoly& o) {
    check(o);
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

template <class R>
MPoly<R> MPoly<R>::operator+(const MPoly& o) const {
    MPoly r = *this;
    return r += o;
}

template <class R>
MPoly<R> MPoly<R>::operator-(const MPoly& o) const {
    MPoly r = *this;
    return r -= o;
}

template <class R>
MPoly<R> MPoly<R>::operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

template <class R>
MPoly<R> MPoly<R>::operator*(const MPoly& o) const {
    check(o);
    MPoly r(n_);
    Exps e(n_);
    for (const auto& [ea, ca] : t_)
        for (const auto& [eb, cb] : o.t_) {
            for (int i = 0; i < n_; ++i) e[i] = static_cast<uint8_t>(ea[i] + eb[i]);
            r.add_term(e, ca * cb);
        }
    return r;
}

template <class R>
MPoly<R> MPoly<R>::operator*(const S& s) const {
    if (s.is_zero()) return MPoly(n_);
    MPoly r = *this;
    for (auto& [e, c] : r.t_) c = c * s;
    return r;
}

template <class R>
MPoly<R> MPoly<R>::pow(int k) const {
    MPoly r = constant(n_, S(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

template <class R>
MPoly<R> MPoly<R>::derivative(int i) const {
    if (i < 0 || i >= n_) throw UsageError("derivative variable out of range");
    MPoly r(n_);
    for (const auto& [e, c] : t_) {
        if (e[i] == 0) continue;
        Exps f = e;
        f[i] -= 1;
        r.add_term(f, c * S(static_cast<int>(e[i])));
    }
    return r;
}

template <class R>
MPoly<R> MPoly<R>::directional(const std::vector<S>& dir) const {
    if (static_cast<int>(dir.size()) != n_) throw UsageError("direction length mismatch");
    MPoly r(n_);
    for (int i = 0; i < n_; ++i)
        if (!dir[i].is_zero()) r += derivative(i) * dir[i];
    return r;
}

template <class R>
Complex<R> MPoly<R>::eval(const std::vector<S>& x) const {
    if (static_cast<int>(x.size()) != n_) throw UsageError("evaluation point has the wrong dimension");
    // cache powers per variable
    int deg = std::max(degree(), 0);
    std::vector<std::vector<S>> pw(n_, std::vector<S>(deg + 1));
    for (int i = 0; i < n_; ++i) {
        pw[i][0] = S(1);
        for (int k = 1; k <= deg; ++k) pw[i][k] = pw[i][k - 1] * x[i];
    }
    S acc;
    for (const auto& [e, c] : t_) {
        S m = c;
        for (int i = 0; i < n_; ++i)
            if (e[i]) m = m * pw[i][e[i]];
        acc += m;
    }
    return acc;
}

template <class R>
MPoly<R> MPoly<R>::compose(const std::vector<MPoly>& subs) const {
    if (static_cast<int>(subs.size()) != n_) throw UsageError("substitution count mismatch");
    int m = subs.empty() ? 0 : subs[0].nvars();
    for (const auto& s : subs)
        if (s.nvars() != m) throw UsageError("substitutions in different variable counts");
    std::vector<std::vector<MPoly>> pw(n_);
    MPoly r(m);
    for (const auto& [e, c] : t_) {
        MPoly term = constant(m, c);
        for (int i = 0; i < n_; ++i) {
            if (!e[i]) continue;
            auto& cache = pw[i];
            if (cache.empty()) cache.push_back(constant(m, S(1)));
            while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * subs[i]);
            term = term * cache[e[i]];
        }
        r += term;
    }
    return r;
}

template <class R>
MPoly<R> MPoly<R>::embed(int new_n, const std::vector<int>& map) const {
    if (static_cast<int>(map.size()) != n_) throw UsageError("embedding map length mismatch");
    MPoly r(new_n);
    for (const auto& [e, c] : t_) {
        Exps f(new_n, 0);
        for (int i = 0; i < n_; ++i) {
            if (!e[i]) continue;
            if (map[i] < 0 || map[i] >= new_n) throw UsageError("embedding drops a used variable");
            f[map[i]] = static_cast<uint8_t>(f[map[i]] + e[i]);
        }
        r.add_term(f, c);
    }
    return r;
}

template <class R>
MPoly<R> MPoly<R>::map_coeffs(const std::function<S(const S&)>& f) const {
    MPoly r(n_);
    for (const auto& [e, c] : t_) r.add_term(e, f(c));
    return r;
}

template <class R>
MPoly<R> MPoly<R>::real_part() const {
    return map_coeffs([](const S& c) { return S(c.re); });
}

template <class R>
MPoly<R> MPoly<R>::imag_part() const {
    return map_coeffs([](const S& c) { return S(c.im); });
}

template <class R>
MPoly<R> MPoly<R>::conj() const {
    return map_coeffs([](const S& c) { return c.conj(); });
}

template <class R>
bool MPoly<R>::is_real() const {
    return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.second.is_real(); });
}

template <class R>
double MPoly<R>::max_abs_coeff() const {
    double m = 0;
    for (const auto& [e, c] : t_) m = std::max(m, c.abs());
    return m;
}

template <class R>
bool MPoly<R>::negligible(double tol) const {
    if constexpr (Num<R>::exact)
        return t_.empty();
    else
        return max_abs_coeff() <= tol;
}

std::vector<Exps> monomials_up_to(int n, int d) {
    std::vector<Exps> out;
    Exps e(n, 0);
    for (int total = 0; total <= d; ++total) {
        // all compositions of total into n parts, lexicographically descending in the first variable
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == n - 1) {
                e[i] = static_cast<uint8_t>(left);
                out.push_back(e);
                return;
            }
            for (int k = left; k >= 0; --k) {
                e[i] = static_cast<uint8_t>(k);
                rec(i + 1, left - k);
            }
        };
        if (n == 0) {
            if (total == 0) out.push_back(e);
            continue;
        }
        rec(0, total);
    }
    return out;
}

template <class R>
JetPoly<R> JetPoly<R>::operator+(const JetPoly& o) const {
    JetPoly r = *this;
    for (int i = 0; i < l(); ++i) r.c[i] += o.c[i];
    return r;
}

template <class R>
JetPoly<R> JetPoly<R>::operator-(const JetPoly& o) const {
    JetPoly r = *this;
    for (int i = 0; i < l(); ++i) r.c[i] -= o.c[i];
    return r;
}

template <class R>
JetPoly<R> JetPoly<R>::operator*(const JetPoly& o) const {
    if (l() != o.l()) throw UsageError("jets of different lengths");
    int n = l() ? c[0].nvars() : 0;
    JetPoly r(l(), n);
    for (int i = 0; i < l(); ++i) {
        if (c[i].is_zero()) continue;
        for (int j = 0; i + j < l(); ++j)
            if (!o.c[j].is_zero()) r.c[i + j] += c[i] * o.c[j];
    }
    return r;
}

template <class R>
JetPoly<R> JetPoly<R>::operator*(const Complex<R>& s) const {
    JetPoly r = *this;
    for (auto& x : r.c) x = x * s;
    return r;
}

template <class R>
JetPoly<R> JetPoly<R>::shift(int j) const {
    int n = l() ? c[0].nvars() : 0;
    JetPoly r(l(), n);
    for (int i = 0; i + j < l(); ++i) r.c[i + j] = c[i];
    return r;
}

template <class R>
bool JetPoly<R>::negligible(double tol) const {
    return std::all_of(c.begin(), c.end(), [&](const MPoly<R>& p) { return p.negligible(tol); });
}

template class MPoly<double>;
template class MPoly<Rational>;
template struct JetPoly<double>;
template struct JetPoly<Rational>;

}  // namespace modal
