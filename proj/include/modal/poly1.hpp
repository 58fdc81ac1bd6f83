#pragma once

#include <vector>

#include "modal/matrix.hpp"

namespace modal {

/// Dense univariate polynomial, lowest degree first.
template <class R>
class Poly1 {
public:
    using S = Complex<R>;

    Poly1() = default;
    explicit Poly1(std::vector<S> c) : c_(std::move(c)) { trim(); }

    static Poly1 constant(const S& a) { return Poly1(std::vector<S>{a}); }
    /// x - a
    static Poly1 linear_root(const S& a) { return Poly1(std::vector<S>{-a, S(1)}); }
    static Poly1 monomial(int d, const S& a = S(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_real() const;
    const std::vector<S>& coeffs() const { return c_; }
    S coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : S(); }
    S leading() const { return c_.empty() ? S() : c_.back(); }

    Poly1 operator+(const Poly1& o) const;
    Poly1 operator-(const Poly1& o) const;
    Poly1 operator*(const Poly1& o) const;
    Poly1 operator*(const S& s) const;
    Poly1 pow(int k) const;
    Poly1 conj() const;
    Poly1 derivative() const;
    Poly1 monic() const;

    /// Quotient and remainder by a nonzero divisor.
    std::pair<Poly1, Poly1> divmod(const Poly1& d) const;
    Poly1 mod(const Poly1& d) const { return divmod(d).second; }

    S eval(const S& x) const;
    Matrix<R> eval(const Matrix<R>& m) const;

    /// First m coefficients of p(a + e) as a polynomial in e.
    std::vector<S> taylor_at(const S& a, int m) const;
    /// Polynomial in x from coefficients in powers of (x - a).
    static Poly1 from_shifted(const std::vector<S>& c, const S& a);

    friend bool operator==(const Poly1& a, const Poly1& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<S> c_;
};

}  // namespace modal
