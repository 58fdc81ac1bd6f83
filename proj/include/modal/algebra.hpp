#pragma once

#include <vector>

#include "modal/scalar.hpp"

namespace modal {

/// F[x]/((x - lambda)^l) with e = x - lambda, so e^l = 0.
template <class R>
struct LocalAlgebra {
    Field field = Field::real;
    Complex<R> lambda;
    int l = 1;

    /// Complex factor of a real run, handled in complex arithmetic with mu = Im.
    bool complex_factor() const { return field == Field::real && !lambda.is_real(); }
    friend bool operator==(const LocalAlgebra& a, const LocalAlgebra& b) {
        return a.field == b.field && a.lambda == b.lambda && a.l == b.l;
    }
    friend bool operator!=(const LocalAlgebra& a, const LocalAlgebra& b) { return !(a == b); }
};

template <class R>
class AlgElem {
public:
    using S = Complex<R>;

    AlgElem() = default;
    explicit AlgElem(const LocalAlgebra<R>& alg) : alg_(alg), c_(alg.l) {}
    AlgElem(const LocalAlgebra<R>& alg, std::vector<S> coeffs);

    static AlgElem scalar(const LocalAlgebra<R>& alg, const S& a);
    /// e^j, zero when j >= l.
    static AlgElem e_power(const LocalAlgebra<R>& alg, int j);
    /// The class of x itself, lambda + e.
    static AlgElem generator(const LocalAlgebra<R>& alg);

    const LocalAlgebra<R>& algebra() const { return alg_; }
    int l() const { return alg_.l; }
    const std::vector<S>& coeffs() const { return c_; }
    const S& operator[](int i) const { return c_[i]; }
    S& operator[](int i) { return c_[i]; }
    bool is_zero() const;

    AlgElem operator+(const AlgElem& o) const;
    AlgElem operator-(const AlgElem& o) const;
    AlgElem operator-() const;
    AlgElem operator*(const AlgElem& o) const;
    AlgElem operator*(const S& s) const;
    /// Multiplication by e^j.
    AlgElem shift(int j) const;
    /// Inverse of a unit; throws UndefinedInputError for non-units.
    AlgElem inverse() const;

    friend bool operator==(const AlgElem& a, const AlgElem& b) { return a.alg_ == b.alg_ && a.c_ == b.c_; }

private:
    void check_same(const AlgElem& o) const;
    LocalAlgebra<R> alg_;
    std::vector<S> c_;
};

/// Truncated product: coefficient k is the sum over i + j = k < l of a_i b_j.
template <class R>
AlgElem<R> alg_mul(const AlgElem<R>& a, const AlgElem<R>& b);

/// Largest k with e^k a != 0, i.e. l - 1 - (lowest nonzero index).
template <class R>
int nil_index(const AlgElem<R>& a);

/// Top coefficient a_{l-1}.
template <class R>
Complex<R> frobenius_phi(const AlgElem<R>& a);

/// mu applied to the top coefficient: Im for a complex factor of a real run, identity otherwise.
template <class R>
Complex<R> frobenius_phi_field(const AlgElem<R>& a);

/// mu on a bare scalar, for the given algebra.
template <class R>
Complex<R> apply_mu(const LocalAlgebra<R>& alg, const Complex<R>& x);

/// Unique c with K(x) = phi(x c); K given by its values on e^0..e^{l-1}.
template <class R>
AlgElem<R> frobenius_solve(const LocalAlgebra<R>& alg, const std::vector<Complex<R>>& K);

}  // namespace modal
