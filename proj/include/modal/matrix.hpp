#pragma once

#include <vector>

#include "modal/scalar.hpp"

namespace modal {

template <class R>
class Matrix {
public:
    using S = Complex<R>;

    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static Matrix identity(int n);
    static Matrix from_columns(const std::vector<std::vector<S>>& cols, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const S& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<S> column(int j) const;
    void set_column(int j, const std::vector<S>& v);
    Matrix transpose() const;
    Matrix conj() const;
    Matrix block(int r0, int c0, int nr, int nc) const;
    /// Horizontal concatenation.
    Matrix hcat(const Matrix& o) const;
    /// Vertical concatenation.
    Matrix vcat(const Matrix& o) const;

    bool is_zero() const;
    bool is_real() const;
    /// Maximum absolute column sum.
    double scale() const;
    double max_abs() const;

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const S& s) const;
    std::vector<S> operator*(const std::vector<S>& v) const;
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<S> a_;
};

template <class R>
struct RrefResult {
    Matrix<R> reduced;
    std::vector<int> pivots;  // pivot column per nonzero row
    /// Smallest accepted pivot magnitude, infinity if rank is 0.
    double min_pivot = 0;
    /// A pivot landed within [tol, 10 tol].
    bool near_threshold = false;
    int rank() const { return static_cast<int>(pivots.size()); }
};

/// Gauss-Jordan reduction with partial pivoting by largest magnitude, ties to the lowest row.
/// In float mode entries with magnitude <= tol are treated as zero.
template <class R>
RrefResult<R> rref(const Matrix<R>& a, double tol);

template <class R>
int rank(const Matrix<R>& a, double tol);

/// Kernel basis, one column per free variable, with that variable set to 1.
template <class R>
Matrix<R> nullspace(const Matrix<R>& a, double tol);

/// Throws UsageError when singular.
template <class R>
Matrix<R> inverse(const Matrix<R>& a, double tol);

template <class R>
bool magnitude_greater(const Complex<R>& a, const Complex<R>& b);

/// Treats an entry as zero: exact test for rationals, |x| <= tol for floats.
template <class R>
bool negligible(const Complex<R>& a, double tol) {
    if constexpr (Num<R>::exact)
        return a.is_zero();
    else
        return a.abs() <= tol;
}

}  // namespace modal
