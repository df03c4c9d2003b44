#pragma once

// Exact Gaussian elimination and the solvers built on it.
//
// Everything here is fraction-free only in spirit: scalars are exact (Rat or
// Fp), so plain reduced row echelon form is both canonical and safe.  All
// entry points harmonize F_p moduli first (see matrix.hpp).

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qv/matrix.hpp"

namespace qv {

struct RrefInfo {
    int rank = 0;
    std::vector<int> pivot_cols;
};

/// In-place reduction to *reduced* row echelon form (pivots are 1, pivot
/// columns are cleared above and below).  Returns rank and pivot columns.
template <class K>
RrefInfo rref_in_place(Mat<K>& m) {
    harmonize(m);
    RrefInfo info;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!is_zero(m.at(r, col))) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = col; c < m.cols(); ++c) std::swap(m.at(piv, c), m.at(row, c));
        const K piv_inv = inv(m.at(row, col));
        for (int c = col; c < m.cols(); ++c) m.at(row, c) = piv_inv * m.at(row, c);
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || is_zero(m.at(r, col))) continue;
            const K factor = m.at(r, col);
            for (int c = col; c < m.cols(); ++c)
                m.at(r, c) = m.at(r, c) - factor * m.at(row, c);
        }
        info.pivot_cols.push_back(col);
        ++row;
    }
    info.rank = row;
    return info;
}

template <class K>
int rank(Mat<K> m) {
    return rref_in_place(m).rank;
}

/// Rows of the result form a basis of the right null space {x : m x = 0}.
/// Basis vectors are indexed by the free columns of the RREF, in column order.
template <class K>
Mat<K> kernel_basis(Mat<K> m) {
    const RrefInfo info = rref_in_place(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int c : info.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    const int nfree = m.cols() - info.rank;
    Mat<K> basis(nfree, m.cols());
    int out = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        basis.at(out, c) = K(1);
        for (int r = 0; r < info.rank; ++r)
            basis.at(out, info.pivot_cols[static_cast<std::size_t>(r)]) = -m.at(r, c);
        ++out;
    }
    return basis;
}

/// One solution of A x = b (b a column vector), or nullopt if inconsistent.
/// Free variables are filled by `free_value(column_index)`; pass the default
/// to get the minimal (zero free part) solution.
template <class K>
std::optional<Mat<K>> solve(
    const Mat<K>& a, const Mat<K>& b,
    const std::function<K(int)>& free_value = [](int) { return K(0); }) {
    if (b.cols() != 1 || b.rows() != a.rows())
        throw std::invalid_argument("solve: right-hand side must be a matching column");
    Mat<K> aug = hstack(a, b);
    const RrefInfo info = rref_in_place(aug);
    for (int c : info.pivot_cols)
        if (c == a.cols()) return std::nullopt; // pivot in the RHS column
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (int c : info.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    Mat<K> x(a.cols(), 1);
    for (int c = 0; c < a.cols(); ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) x.at(c, 0) = free_value(c);
    for (int r = 0; r < info.rank; ++r) {
        const int pc = info.pivot_cols[static_cast<std::size_t>(r)];
        K v = aug.at(r, a.cols());
        for (int c = pc + 1; c < a.cols(); ++c)
            if (!is_zero(aug.at(r, c)) && !is_zero(x.at(c, 0))) v = v - aug.at(r, c) * x.at(c, 0);
        x.at(pc, 0) = v;
    }
    return x;
}

template <class K>
bool is_invertible(const Mat<K>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

/// Random invertible n x n matrix; draws until the sample is invertible
/// (immediate over Q, a few tries over small F_p).
template <class K>
Mat<K> random_invertible(int n, Rng& rng, const FieldCtx<K>& ctx) {
    for (int tries = 0; tries < 256; ++tries) {
        Mat<K> m = random_mat<K>(n, n, rng, ctx);
        if (is_invertible(m)) return m;
    }
    throw std::runtime_error("random_invertible: no invertible sample found");
}

template <class K>
Mat<K> inverse(const Mat<K>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    Mat<K> aug = hstack(m, Mat<K>::identity(m.rows()));
    const RrefInfo info = rref_in_place(aug);
    // The augmented block [m | I] always has full row rank; m itself is
    // invertible exactly when every pivot lands in the left block.
    if (info.rank != m.rows()) throw std::domain_error("inverse: matrix is singular");
    for (int pc : info.pivot_cols)
        if (pc >= m.cols()) throw std::domain_error("inverse: matrix is singular");
    return block(aug, 0, m.rows(), m.rows(), m.rows());
}

/// Assembles sparse block-structured linear systems whose unknowns are
/// matrices U_k and whose equations are sums of sandwich terms A·U_k·B plus
/// constants.  Row-major vectorization turns A·U·B into kron(A, Bᵀ)·vec(U),
/// giving one flat system over the stacked unknowns.
template <class K>
class BlockSystem {
public:
    /// Declares an unknown matrix of the given shape; returns its handle.
    int add_unknown(int rows, int cols) {
        unknown_shape_.emplace_back(rows, cols);
        unknown_offset_.push_back(total_cols_);
        total_cols_ += rows * cols;
        return static_cast<int>(unknown_shape_.size()) - 1;
    }

    /// Declares a matrix equation block "(sum of terms) + (constants) = 0".
    int add_equation(int rows, int cols) {
        eq_shape_.emplace_back(rows, cols);
        eq_offset_.push_back(total_rows_);
        eq_const_.push_back(Mat<K>(rows, cols));
        total_rows_ += rows * cols;
        return static_cast<int>(eq_shape_.size()) - 1;
    }

    /// Adds sign · A·U_unk·B to equation eq.
    void add_term(int eq, int unk, Mat<K> a, Mat<K> b, int sign) {
        const auto [ur, uc] = unknown_shape_[static_cast<std::size_t>(unk)];
        const auto [er, ec] = eq_shape_[static_cast<std::size_t>(eq)];
        if (a.cols() != ur || b.rows() != uc || a.rows() != er || b.cols() != ec)
            throw std::invalid_argument("BlockSystem: term shape mismatch");
        terms_.push_back(Term{eq, unk, std::move(a), std::move(b), sign});
    }

    /// Adds sign · c to the constant part of equation eq.
    void add_const(int eq, const Mat<K>& c, int sign) {
        auto& acc = eq_const_[static_cast<std::size_t>(eq)];
        acc = sign > 0 ? acc + c : acc - c;
    }

    /// Flattens to (M, rhs) with the convention M·u = rhs, rhs = -constants.
    std::pair<Mat<K>, Mat<K>> assemble() const {
        Mat<K> m(total_rows_, total_cols_);
        for (const Term& t : terms_) {
            const Mat<K> k = kron(t.a, transpose(t.b));
            const Mat<K> blk = t.sign > 0 ? k : -k;
            accumulate_block(m, eq_offset_[static_cast<std::size_t>(t.eq)],
                             unknown_offset_[static_cast<std::size_t>(t.unk)], blk);
        }
        Mat<K> rhs(total_rows_, 1);
        for (std::size_t e = 0; e < eq_const_.size(); ++e)
            set_block(rhs, eq_offset_[e], 0, -vec_row(eq_const_[e]));
        return {std::move(m), std::move(rhs)};
    }

    /// Splits a stacked solution column back into the unknown matrices.
    std::vector<Mat<K>> unpack(const Mat<K>& sol) const {
        if (sol.cols() != 1 || sol.rows() != total_cols_)
            throw std::invalid_argument("BlockSystem: solution shape mismatch");
        std::vector<Mat<K>> out;
        for (std::size_t k = 0; k < unknown_shape_.size(); ++k) {
            const auto [r, c] = unknown_shape_[k];
            out.push_back(unvec_row(block(sol, unknown_offset_[k], 0, r * c, 1), r, c));
        }
        return out;
    }

    int num_unknown_entries() const { return total_cols_; }
    int num_equation_entries() const { return total_rows_; }

private:
    struct Term {
        int eq, unk;
        Mat<K> a, b;
        int sign;
    };

    static void accumulate_block(Mat<K>& dst, int r0, int c0, const Mat<K>& src) {
        for (int i = 0; i < src.rows(); ++i)
            for (int j = 0; j < src.cols(); ++j)
                dst.at(r0 + i, c0 + j) += src.at(i, j);
    }

    std::vector<std::pair<int, int>> unknown_shape_, eq_shape_;
    std::vector<int> unknown_offset_, eq_offset_;
    std::vector<Mat<K>> eq_const_;
    std::vector<Term> terms_;
    int total_rows_ = 0, total_cols_ = 0;
};

} // namespace qv
