#include "modal/matrix.hpp"

#include <algorithm>
#include <limits>

#include "modal/errors.hpp"

namespace modal {

template <class R>
Matrix<R> Matrix<R>::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
}

template <class R>
Matrix<R> Matrix<R>::from_columns(const std::vector<std::vector<S>>& cols, int rows) {
    Matrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) m.set_column(j, cols[j]);
    return m;
}

template <class R>
std::vector<Complex<R>> Matrix<R>::column(int j) const {
    std::vector<S> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

template <class R>
void Matrix<R>::set_column(int j, const std::vector<S>& v) {
    if (static_cast<int>(v.size()) != rows_) throw UsageError("column length mismatch");
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

template <class R>
Matrix<R> Matrix<R>::transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

template <class R>
Matrix<R> Matrix<R>::conj() const {
    Matrix t = *this;
    for (auto& x : t.a_) x = x.conj();
    return t;
}

template <class R>
Matrix<R> Matrix<R>::block(int r0, int c0, int nr, int nc) const {
    Matrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

template <class R>
Matrix<R> Matrix<R>::hcat(const Matrix& o) const {
    if (o.rows_ != rows_) throw UsageError("hcat row mismatch");
    Matrix m(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
        for (int j = 0; j < o.cols_; ++j) m(i, cols_ + j) = o(i, j);
    }
    return m;
}

template <class R>
Matrix<R> Matrix<R>::vcat(const Matrix& o) const {
    if (o.cols_ != cols_) throw UsageError("vcat column mismatch");
    Matrix m(rows_ + o.rows_, cols_);
    for (int j = 0; j < cols_; ++j) {
        for (int i = 0; i < rows_; ++i) m(i, j) = (*this)(i, j);
        for (int i = 0; i < o.rows_; ++i) m(rows_ + i, j) = o(i, j);
    }
    return m;
}

template <class R>
bool Matrix<R>::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const S& x) { return x.is_zero(); });
}

template <class R>
bool Matrix<R>::is_real() const {
    return std::all_of(a_.begin(), a_.end(), [](const S& x) { return x.is_real(); });
}

template <class R>
double Matrix<R>::scale() const {
    double best = 0;
    for (int j = 0; j < cols_; ++j) {
        double s = 0;
        for (int i = 0; i < rows_; ++i) s += (*this)(i, j).abs();
        best = std::max(best, s);
    }
    return best;
}

template <class R>
double Matrix<R>::max_abs() const {
    double best = 0;
    for (const auto& x : a_) best = std::max(best, x.abs());
    return best;
}

template <class R>
Matrix<R> Matrix<R>::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw UsageError("matrix product shape mismatch");
    Matrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const S& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                if (!o(k, j).is_zero()) m(i, j) += a * o(k, j);
        }
    return m;
}

template <class R>
Matrix<R> Matrix<R>::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix sum shape mismatch");
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
}

template <class R>
Matrix<R> Matrix<R>::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix difference shape mismatch");
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

template <class R>
Matrix<R> Matrix<R>::operator*(const S& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x = x * s;
    return m;
}

template <class R>
std::vector<Complex<R>> Matrix<R>::operator*(const std::vector<S>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw UsageError("matrix-vector shape mismatch");
    std::vector<S> r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!v[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
}

template <class R>
bool magnitude_greater(const Complex<R>& a, const Complex<R>& b) {
    if constexpr (Num<R>::exact)
        return a.norm2() > b.norm2();
    else
        return a.abs() > b.abs();
}

template <class R>
RrefResult<R> rref(const Matrix<R>& a, double tol) {
    using S = Complex<R>;
    RrefResult<R> res;
    res.reduced = a;
    res.min_pivot = std::numeric_limits<double>::infinity();
    Matrix<R>& m = res.reduced;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int best = -1;
        for (int i = row; i < m.rows(); ++i) {
            if (negligible(m(i, col), tol)) continue;
            if (best < 0 || magnitude_greater(m(i, col), m(best, col))) best = i;
        }
        if (best < 0) {
            for (int i = row; i < m.rows(); ++i) m(i, col) = S();
            continue;
        }
        double mag = m(best, col).abs();
        res.min_pivot = std::min(res.min_pivot, mag);
        if (!Num<R>::exact && mag <= 10 * tol) res.near_threshold = true;
        if (best != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
        S inv = S(1) / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        m(row, col) = S(1);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            S f = m(i, col);
            for (int j = col; j < m.cols(); ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
            m(i, col) = S();
        }
        res.pivots.push_back(col);
        ++row;
    }
    for (int i = row; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = S();
    return res;
}

template <class R>
int rank(const Matrix<R>& a, double tol) {
    return rref(a, tol).rank();
}

template <class R>
Matrix<R> nullspace(const Matrix<R>& a, double tol) {
    using S = Complex<R>;
    auto rr = rref(a, tol);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int p : rr.pivots) is_pivot[p] = true;
    std::vector<std::vector<S>> cols;
    for (int f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<S> v(a.cols());
        v[f] = S(1);
        for (int r = 0; r < rr.rank(); ++r) v[rr.pivots[r]] = -rr.reduced(r, f);
        cols.push_back(std::move(v));
    }
    return Matrix<R>::from_columns(cols, a.cols());
}

template <class R>
Matrix<R> inverse(const Matrix<R>& a, double tol) {
    if (a.rows() != a.cols()) throw UsageError("inverse of a non-square matrix");
    int n = a.rows();
    auto rr = rref(a.hcat(Matrix<R>::identity(n)), tol);
    if (rr.rank() < n || rr.pivots[n - 1] != n - 1) throw UsageError("matrix is singular");
    return rr.reduced.block(0, n, n, n);
}

#define MODAL_INSTANTIATE(R)                                              \
    template class Matrix<R>;                                             \
    template bool magnitude_greater<R>(const Complex<R>&, const Complex<R>&); \
    template RrefResult<R> rref<R>(const Matrix<R>&, double);             \
    template int rank<R>(const Matrix<R>&, double);                       \
    template Matrix<R> nullspace<R>(const Matrix<R>&, double);            \
    template Matrix<R> inverse<R>(const Matrix<R>&, double);

MODAL_INSTANTIATE(double)
MODAL_INSTANTIATE(Rational)

}  // namespace modal
