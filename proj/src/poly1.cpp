#include "modal/poly1.hpp"

#include <algorithm>

#include "modal/errors.hpp"

namespace modal {

template <class R>
void Poly1<R>::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

template <class R>
Poly1<R> Poly1<R>::monomial(int d, const S& a) {
    std::vector<S> c(d + 1);
    c[d] = a;
    return Poly1(c);
}

template <class R>
bool Poly1<R>::is_real() const {
    return std::all_of(c_.begin(), c_.end(), [](const S& x) { return x.is_real(); });
}

template <class R>
Poly1<R> Poly1<R>::operator+(const Poly1& o) const {
    std::vector<S> c(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return Poly1(c);
}

template <class R>
Poly1<R> Poly1<R>::operator-(const Poly1& o) const {
    std::vector<S> c(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
    return Poly1(c);
}

template <class R>
Poly1<R> Poly1<R>::operator*(const Poly1& o) const {
    if (is_zero() || o.is_zero()) return Poly1();
    std::vector<S> c(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return Poly1(c);
}

template <class R>
Poly1<R> Poly1<R>::operator*(const S& s) const {
    std::vector<S> c = c_;
    for (auto& x : c) x = x * s;
    return Poly1(c);
}

template <class R>
Poly1<R> Poly1<R>::pow(int k) const {
    Poly1 r = constant(S(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

template <class R>
Poly1<R> Poly1<R>::conj() const {
    std::vector<S> c = c_;
    for (auto& x : c) x = x.conj();
    return Poly1(c);
}

template <class R>
Poly1<R> Poly1<R>::derivative() const {
    if (c_.size() <= 1) return Poly1();
    std::vector<S> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * S(static_cast<int>(i));
    return Poly1(c);
}

template <class R>
Poly1<R> Poly1<R>::monic() const {
    if (is_zero()) throw UsageError("monic of the zero polynomial");
    return *this * (S(1) / leading());
}

template <class R>
std::pair<Poly1<R>, Poly1<R>> Poly1<R>::divmod(const Poly1& d) const {
    if (d.is_zero()) throw UsageError("polynomial division by zero");
    std::vector<S> r = c_;
    int dd = d.degree();
    if (degree() < dd) return {Poly1(), *this};
    std::vector<S> q(degree() - dd + 1);
    S inv = S(1) / d.leading();
    for (int i = degree(); i >= dd; --i) {
        S f = r[i] * inv;
        q[i - dd] = f;
        if (f.is_zero()) continue;
        for (int j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
        r[i] = S();
    }
    r.resize(dd);
    return {Poly1(q), Poly1(r)};
}

template <class R>
Complex<R> Poly1<R>::eval(const S& x) const {
    S acc;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

template <class R>
Matrix<R> Poly1<R>::eval(const Matrix<R>& m) const {
    if (m.rows() != m.cols()) throw UsageError("polynomial of a non-square matrix");
    Matrix<R> acc(m.rows(), m.cols());
    Matrix<R> id = Matrix<R>::identity(m.rows());
    for (int i = degree(); i >= 0; --i) acc = acc * m + id * c_[i];
    return acc;
}

template <class R>
std::vector<Complex<R>> Poly1<R>::taylor_at(const S& a, int m) const {
    // repeated synthetic division by (x - a)
    std::vector<S> out(m);
    std::vector<S> c = c_;
    for (int k = 0; k < m && !c.empty(); ++k) {
        std::vector<S> q(c.size() > 1 ? c.size() - 1 : 0);
        S acc;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
            acc = acc * a + c[i];
            if (i > 0) q[i - 1] = acc;
        }
        out[k] = acc;
        c = q;
    }
    return out;
}

template <class R>
Poly1<R> Poly1<R>::from_shifted(const std::vector<S>& c, const S& a) {
    Poly1 acc;
    Poly1 lin = linear_root(a);
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) acc = acc * lin + constant(c[i]);
    return acc;
}

template class Poly1<double>;
template class Poly1<Rational>;

}  // namespace modal
