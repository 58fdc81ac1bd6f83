#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

namespace modal {

using Rational = mpq_class;

enum class Field { real, complex };

const char* field_name(Field f);
Field parse_field(const std::string& s);

/// Real-backend helpers. Two backends exist: exact rationals and IEEE doubles.
template <class R>
struct Num;

template <>
struct Num<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    static double from_int(long v) { return static_cast<double>(v); }
    static double from_ratio(long p, long q) { return static_cast<double>(p) / static_cast<double>(q); }
    static double from_double(double v) { return v; }
    static double to_double(double v) { return v; }
    static bool is_zero(double v) { return v == 0.0; }
    static int sign(double v) { return (v > 0) - (v < 0); }
    static double abs(double v) { return std::fabs(v); }
    static double sqrt(double v) { return std::sqrt(v); }
    static std::string format(double v);
    static double parse(const std::string& s);
};

template <>
struct Num<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";
    static Rational from_int(long v) { return Rational(v); }
    static Rational from_ratio(long p, long q) {
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
    /// Exact binary value of v.
    static Rational from_double(double v) { return Rational(v); }
    static double to_double(const Rational& v) { return v.get_d(); }
    static bool is_zero(const Rational& v) { return sgn(v) == 0; }
    static int sign(const Rational& v) { return sgn(v); }
    static Rational abs(const Rational& v) { return ::abs(v); }
    static std::string format(const Rational& v);
    /// Accepts "p", "p/q" and plain decimals such as "-1.25e-3".
    static Rational parse(const std::string& s);
};

/// Field element stored as a real pair. Real-tagged values keep im == 0 exactly.
template <class R>
struct Complex {
    R re{};
    R im{};

    Complex() : re(Num<R>::from_int(0)), im(Num<R>::from_int(0)) {}
    Complex(const R& r) : re(r), im(Num<R>::from_int(0)) {}  // NOLINT
    Complex(const R& r, const R& i) : re(r), im(i) {}
    Complex(int r) : re(Num<R>::from_int(r)), im(Num<R>::from_int(0)) {}  // NOLINT

    bool is_zero() const { return Num<R>::is_zero(re) && Num<R>::is_zero(im); }
    bool is_real() const { return Num<R>::is_zero(im); }

    Complex conj() const { return Complex(re, -im); }
    R norm2() const { return re * re + im * im; }
    double abs() const { return std::hypot(Num<R>::to_double(re), Num<R>::to_double(im)); }
    std::complex<double> to_std() const { return {Num<R>::to_double(re), Num<R>::to_double(im)}; }

    Complex operator-() const { return Complex(-re, -im); }
    Complex& operator+=(const Complex& o) {
        re += o.re;
        if (!Num<R>::is_zero(o.im)) im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        if (!Num<R>::is_zero(o.im)) im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        *this = *this * o;
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        *this = *this / o;
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        const bool ar = a.is_real(), br = b.is_real();
        if (ar && br) return Complex(a.re * b.re);
        if (br) return Complex(a.re * b.re, a.im * b.re);
        if (ar) return Complex(a.re * b.re, a.re * b.im);
        return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        if (b.is_real()) return Complex(a.re / b.re, a.im / b.re);
        R d = b.norm2();
        return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
    }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

    static Complex i() { return Complex(Num<R>::from_int(0), Num<R>::from_int(1)); }
    static Complex from_std(std::complex<double> z) {
        return Complex(Num<R>::from_double(z.real()), Num<R>::from_double(z.imag()));
    }
};

template <class R>
using Scalar = Complex<R>;

template <class R>
Complex<R> factorial_inv(int j) {
    R f = Num<R>::from_int(1);
    for (int i = 2; i <= j; ++i) f *= Num<R>::from_int(i);
    return Complex<R>(Num<R>::from_int(1) / f);
}

/// Binomial coefficient as a backend number.
template <class R>
R binom(int n, int k) {
    R r = Num<R>::from_int(1);
    for (int i = 1; i <= k; ++i) r = r * Num<R>::from_int(n - k + i) / Num<R>::from_int(i);
    return r;
}

}  // namespace modal
