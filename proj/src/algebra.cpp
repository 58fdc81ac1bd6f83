#include "modal/algebra.hpp"

#include <algorithm>

#include "modal/errors.hpp"

namespace modal {

template <class R>
AlgElem<R>::AlgElem(const LocalAlgebra<R>& alg, std::vector<S> coeffs) : alg_(alg), c_(std::move(coeffs)) {
    if (alg.l < 1) throw UsageError("local algebra needs l >= 1");
    if (static_cast<int>(c_.size()) > alg.l) {
        for (size_t i = alg.l; i < c_.size(); ++i)
            if (!c_[i].is_zero()) throw UsageError("coefficient beyond nilpotency degree");
    }
    c_.resize(alg.l);
}

template <class R>
AlgElem<R> AlgElem<R>::scalar(const LocalAlgebra<R>& alg, const S& a) {
    AlgElem r(alg);
    r.c_[0] = a;
    return r;
}

template <class R>
AlgElem<R> AlgElem<R>::e_power(const LocalAlgebra<R>& alg, int j) {
    AlgElem r(alg);
    if (j >= 0 && j < alg.l) r.c_[j] = S(1);
    return r;
}

template <class R>
AlgElem<R> AlgElem<R>::generator(const LocalAlgebra<R>& alg) {
    return scalar(alg, alg.lambda) + e_power(alg, 1);
}

template <class R>
bool AlgElem<R>::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const S& x) { return x.is_zero(); });
}

template <class R>
void AlgElem<R>::check_same(const AlgElem& o) const {
    if (alg_ != o.alg_) throw UsageError("elements of different algebras");
}

template <class R>
AlgElem<R> AlgElem<R>::operator+(const AlgElem& o) const {
    check_same(o);
    AlgElem r = *this;
    for (int i = 0; i < l(); ++i) r.c_[i] += o.c_[i];
    return r;
}

template <class R>
AlgElem<R> AlgElem<R>::operator-(const AlgElem& o) const {
    check_same(o);
    AlgElem r = *this;
    for (int i = 0; i < l(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

template <class R>
AlgElem<R> AlgElem<R>::operator-() const {
    AlgElem r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

template <class R>
AlgElem<R> AlgElem<R>::operator*(const AlgElem& o) const {
    return alg_mul(*this, o);
}

template <class R>
AlgElem<R> AlgElem<R>::operator*(const S& s) const {
    AlgElem r = *this;
    for (auto& x : r.c_) x = x * s;
    return r;
}

template <class R>
AlgElem<R> AlgElem<R>::shift(int j) const {
    AlgElem r(alg_);
    for (int i = 0; i + j < l(); ++i) r.c_[i + j] = c_[i];
    return r;
}

template <class R>
AlgElem<R> AlgElem<R>::inverse() const {
    if (c_[0].is_zero()) throw UndefinedInputError("element is not a unit");
    // b_0 = 1/a_0, b_k = -(sum_{i=1..k} a_i b_{k-i}) / a_0
    AlgElem r(alg_);
    S inv0 = S(1) / c_[0];
    r.c_[0] = inv0;
    for (int k = 1; k < l(); ++k) {
        S acc;
        for (int i = 1; i <= k; ++i) acc += c_[i] * r.c_[k - i];
        r.c_[k] = -acc * inv0;
    }
    return r;
}

template <class R>
AlgElem<R> alg_mul(const AlgElem<R>& a, const AlgElem<R>& b) {
    if (a.algebra() != b.algebra()) throw UsageError("elements of different algebras");
    int l = a.l();
    AlgElem<R> r(a.algebra());
    for (int i = 0; i < l; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j < l; ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

template <class R>
int nil_index(const AlgElem<R>& a) {
    for (int i = 0; i < a.l(); ++i)
        if (!a[i].is_zero()) return a.l() - 1 - i;
    throw UndefinedInputError("nil index of the zero element is undefined");
}

template <class R>
Complex<R> frobenius_phi(const AlgElem<R>& a) {
    return a[a.l() - 1];
}

template <class R>
Complex<R> apply_mu(const LocalAlgebra<R>& alg, const Complex<R>& x) {
    if (alg.complex_factor()) return Complex<R>(x.im);
    return x;
}

template <class R>
Complex<R> frobenius_phi_field(const AlgElem<R>& a) {
    return apply_mu(a.algebra(), frobenius_phi(a));
}

template <class R>
AlgElem<R> frobenius_solve(const LocalAlgebra<R>& alg, const std::vector<Complex<R>>& K) {
    if (static_cast<int>(K.size()) != alg.l) throw UsageError("functional needs l values");
    // phi(e^i c) = c_{l-1-i}; the pairing matrix is the anti-diagonal identity
    AlgElem<R> c(alg);
    for (int i = 0; i < alg.l; ++i) c[alg.l - 1 - i] = K[i];
    return c;
}

#define MODAL_INSTANTIATE(R)                                                             \
    template class AlgElem<R>;                                                           \
    template AlgElem<R> alg_mul<R>(const AlgElem<R>&, const AlgElem<R>&);                \
    template int nil_index<R>(const AlgElem<R>&);                                        \
    template Complex<R> frobenius_phi<R>(const AlgElem<R>&);                             \
    template Complex<R> frobenius_phi_field<R>(const AlgElem<R>&);                       \
    template Complex<R> apply_mu<R>(const LocalAlgebra<R>&, const Complex<R>&);          \
    template AlgElem<R> frobenius_solve<R>(const LocalAlgebra<R>&, const std::vector<Complex<R>>&);

MODAL_INSTANTIATE(double)
MODAL_INSTANTIATE(Rational)

}  // namespace modal
