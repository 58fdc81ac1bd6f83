#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "modal/scalar.hpp"

namespace modal {

using Exps = std::vector<uint8_t>;

/// Sparse multivariate polynomial; zero coefficients are never stored.
template <class R>
class MPoly {
public:
    using S = Complex<R>;
    using Terms = std::map<Exps, S>;

    MPoly() = default;
    explicit MPoly(int nvars) : n_(nvars) {}

    static MPoly constant(int nvars, const S& c);
    static MPoly variable(int nvars, int i);
    static MPoly monomial(int nvars, const Exps& e, const S& c = S(1));

    int nvars() const { return n_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }
    int degree() const;
    S coeff(const Exps& e) const;
    S constant_term() const { return coeff(Exps(n_, 0)); }

    void add_term(const Exps& e, const S& c);

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const S& s) const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly pow(int k) const;

    MPoly derivative(int i) const;
    /// Derivative along a constant direction vector.
    MPoly directional(const std::vector<S>& dir) const;
    S eval(const std::vector<S>& x) const;
    /// Substitutes subs[i] for variable i; all subs share one variable count.
    MPoly compose(const std::vector<MPoly>& subs) const;
    /// Renames variable i to map[i] in a ring with new_n variables.
    MPoly embed(int new_n, const std::vector<int>& map) const;
    MPoly map_coeffs(const std::function<S(const S&)>& f) const;
    MPoly real_part() const;
    MPoly imag_part() const;
    MPoly conj() const;

    bool is_real() const;
    double max_abs_coeff() const;
    /// Exact zero test for rationals, max coefficient <= tol for floats.
    bool negligible(double tol) const;

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

private:
    void check(const MPoly& o) const;
    int n_ = 0;
    Terms t_;
};

/// All exponent vectors in n variables with total degree <= d, graded then lexicographic.
std::vector<Exps> monomials_up_to(int n, int d);

/// Truncated power series in e with polynomial coefficients: sum_i c[i] e^i, e^l = 0.
template <class R>
struct JetPoly {
    std::vector<MPoly<R>> c;

    JetPoly() = default;
    JetPoly(int l, int nvars) : c(l, MPoly<R>(nvars)) {}
    int l() const { return static_cast<int>(c.size()); }

    JetPoly operator+(const JetPoly& o) const;
    JetPoly operator-(const JetPoly& o) const;
    JetPoly operator*(const JetPoly& o) const;
    JetPoly operator*(const Complex<R>& s) const;
    JetPoly shift(int j) const;
    bool negligible(double tol) const;
};

}  // namespace modal
