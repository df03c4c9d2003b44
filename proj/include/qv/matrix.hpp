#pragma once

// Dense row-major matrices over an exact scalar type K (qv::Rat or qv::Fp).
//
// K must provide: value semantics, K(long) literals, +, -, *, unary -, ==,
// and the free functions is_zero / inv / scalar_str found by lookup in qv.
// Row-major vectorization convention: vec_row stacks the rows of M, so
//     vec_row(A * M * B) == kron(A, transpose(B)) * vec_row(M),
// which is the identity the linear-system assemblers below rely on.

#include <stdexcept>
#include <string>
#include <vector>

#include "qv/field.hpp"

namespace qv {

template <class K>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    K& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const K& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    friend Mat operator+(const Mat& x, const Mat& y) {
        x.require_same_shape(y, "+");
        Mat r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        x.require_same_shape(y, "-");
        Mat r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    Mat operator-() const {
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols_ != y.rows_)
            throw std::invalid_argument("Mat: product shape mismatch " + x.shape_str() + " * " + y.shape_str());
        Mat r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const K& xv = x.at(i, k);
                if (is_zero(xv)) continue;
                for (int j = 0; j < y.cols_; ++j) r.at(i, j) += xv * y.at(k, j);
            }
        return r;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            if (!(x.a_[i] == y.a_[i])) return false;
        return true;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

    bool is_zero_mat() const {
        for (const K& v : a_)
            if (!is_zero(v)) return false;
        return true;
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

private:
    void require_same_shape(const Mat& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("Mat: shape mismatch for ") + op + ": " +
                                        shape_str() + " vs " + o.shape_str());
    }

    int rows_ = 0, cols_ = 0;
    std::vector<K> a_;
};

template <class K>
Mat<K> scale(const K& k, const Mat<K>& m) {
    Mat<K> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = k * m.at(i, j);
    return r;
}

template <class K>
Mat<K> transpose(const Mat<K>& m) {
    Mat<K> r(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(j, i) = m.at(i, j);
    return r;
}

template <class K>
Mat<K> kron(const Mat<K>& a, const Mat<K>& b) {
    Mat<K> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i1 = 0; i1 < a.rows(); ++i1)
        for (int j1 = 0; j1 < a.cols(); ++j1) {
            const K& av = a.at(i1, j1);
            if (is_zero(av)) continue;
            for (int i2 = 0; i2 < b.rows(); ++i2)
                for (int j2 = 0; j2 < b.cols(); ++j2)
                    r.at(i1 * b.rows() + i2, j1 * b.cols() + j2) = av * b.at(i2, j2);
        }
    return r;
}

/// Column vector stacking the rows of m.
template <class K>
Mat<K> vec_row(const Mat<K>& m) {
    Mat<K> v(m.rows() * m.cols(), 1);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.at(i * m.cols() + j, 0) = m.at(i, j);
    return v;
}

template <class K>
Mat<K> unvec_row(const Mat<K>& v, int rows, int cols) {
    if (v.cols() != 1 || v.rows() != rows * cols)
        throw std::invalid_argument("unvec_row: size mismatch");
    Mat<K> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = v.at(i * cols + j, 0);
    return m;
}

/// Adds sign · src into dst starting at (r0, c0); bounds must already fit.
template <class K>
void add_block(Mat<K>& dst, int r0, int c0, const Mat<K>& src, int sign = +1) {
    if (r0 < 0 || c0 < 0 || r0 + src.rows() > dst.rows() || c0 + src.cols() > dst.cols())
        throw std::invalid_argument("add_block: block exceeds target");
    for (int i = 0; i < src.rows(); ++i)
        for (int j = 0; j < src.cols(); ++j) {
            K& cell = dst.at(r0 + i, c0 + j);
            if (sign > 0) cell = cell + src.at(i, j);
            else cell = cell - src.at(i, j);
        }
}

/// Writes src into dst starting at (r0, c0); bounds must already fit.
template <class K>
void set_block(Mat<K>& dst, int r0, int c0, const Mat<K>& src) {
    if (r0 < 0 || c0 < 0 || r0 + src.rows() > dst.rows() || c0 + src.cols() > dst.cols())
        throw std::invalid_argument("set_block: block exceeds target" );
    for (int i = 0; i < src.rows(); ++i)
        for (int j = 0; j < src.cols(); ++j) dst.at(r0 + i, c0 + j) = src.at(i, j);
}

template <class K>
Mat<K> block(const Mat<K>& m, int r0, int c0, int rows, int cols) {
    if (r0 < 0 || c0 < 0 || r0 + rows > m.rows() || c0 + cols > m.cols())
        throw std::invalid_argument("block: range exceeds source");
    Mat<K> r(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(i, j) = m.at(r0 + i, c0 + j);
    return r;
}

template <class K>
Mat<K> hstack(const Mat<K>& a, const Mat<K>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Mat<K> r(a.rows(), a.cols() + b.cols());
    set_block(r, 0, 0, a);
    set_block(r, 0, a.cols(), b);
    return r;
}

template <class K>
Mat<K> vstack(const Mat<K>& a, const Mat<K>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    Mat<K> r(a.rows() + b.rows(), a.cols());
    set_block(r, 0, 0, a);
    set_block(r, a.rows(), 0, b);
    return r;
}

template <class K>
Mat<K> random_mat(int rows, int cols, Rng& rng, const FieldCtx<K>& ctx) {
    Mat<K> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = ctx.random(rng);
    return m;
}

template <class K>
std::string mat_str(const Mat<K>& m) {
    std::string s;
    for (int i = 0; i < m.rows(); ++i) {
        s += "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) s += " ";
            s += scalar_str(m.at(i, j));
        }
        s += "]\n";
    }
    return s;
}

/// F_p housekeeping: propagate one modulus to every entry of the matrix so
/// later pivoting can invert any nonzero element.  No-op over the rationals
/// and for matrices that contain no bound element.
template <class K>
void harmonize(Mat<K>& m) {
    if constexpr (std::is_same_v<K, Fp>) {
        std::uint32_t p = 0;
        for (int i = 0; i < m.rows() && p == 0; ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (m.at(i, j).bound()) { p = m.at(i, j).p; break; }
        if (p == 0) return;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = m.at(i, j).bind(p);
    } else {
        (void)m;
    }
}

} // namespace qv
