#pragma once

// Subspaces of K^n with a canonical reduced-row-echelon basis, the lattice
// operations on them, graded (multi-vertex) invariant-subspace fixpoints, and
// exhaustive enumeration of subspaces over prime fields.
//
// Conventions: ambient vectors are columns and maps act by left
// multiplication, but a Subspace stores its basis vectors as the *rows* of a
// matrix kept in reduced row echelon form with no zero rows — the unique
// canonical representative, so subspace equality is matrix equality.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qv/linalg.hpp"

namespace qv {

template <class K>
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(int ambient) { return Subspace(Mat<K>(0, ambient), ambient); }
    static Subspace full(int ambient) { return Subspace(Mat<K>::identity(ambient), ambient); }

    /// Span of the rows of `rows` (they need not be independent).
    static Subspace from_rows(Mat<K> rows) {
        const int ambient = rows.cols();
        const RrefInfo info = rref_in_place(rows);
        return Subspace(block(rows, 0, 0, info.rank, ambient), ambient);
    }

    /// Span of the columns of a map, i.e. its image as a subspace of K^rows.
    static Subspace column_space(const Mat<K>& a) { return from_rows(transpose(a)); }

    int ambient() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Mat<K>& basis() const { return basis_; }

    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient_; }

    /// Membership of a column vector.
    bool contains(const Mat<K>& v) const {
        if (v.cols() != 1 || v.rows() != ambient_)
            throw std::invalid_argument("Subspace::contains: vector shape mismatch");
        if (v.is_zero_mat()) return true;
        Mat<K> stacked = vstack(basis_, transpose(v));
        return rank(std::move(stacked)) == dim();
    }

    bool contains(const Subspace& other) const {
        require_same_ambient(other);
        if (other.dim() > dim()) return false;
        Mat<K> stacked = vstack(basis_, other.basis_);
        return rank(std::move(stacked)) == dim();
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    friend Subspace sum(const Subspace& a, const Subspace& b) {
        a.require_same_ambient(b);
        return from_rows(vstack(a.basis_, b.basis_));
    }

    friend Subspace intersect(const Subspace& a, const Subspace& b) {
        a.require_same_ambient(b);
        if (a.is_zero() || b.is_zero()) return zero(a.ambient_);
        // x·A = y·B  ⟺  [Aᵀ | -Bᵀ]·(xᵀ; yᵀ) = 0; each kernel row (x|y)
        // contributes the intersection vector x·A.
        const Mat<K> sys = hstack(transpose(a.basis_), -transpose(b.basis_));
        const Mat<K> ker = kernel_basis(sys);
        const Mat<K> xs = block(ker, 0, 0, ker.rows(), a.dim());
        return from_rows(xs * a.basis_);
    }

    std::string str() const {
        return "Subspace(dim " + std::to_string(dim()) + " of " + std::to_string(ambient_) +
               ")\n" + mat_str(basis_);
    }

private:
    Subspace(Mat<K> basis, int ambient) : basis_(std::move(basis)), ambient_(ambient) {}

    void require_same_ambient(const Subspace& o) const {
        if (ambient_ != o.ambient_)
            throw std::invalid_argument("Subspace: ambient mismatch (" + std::to_string(ambient_) +
                                        " vs " + std::to_string(o.ambient_) + ")");
    }

    Mat<K> basis_; // dim x ambient, reduced row echelon, no zero rows
    int ambient_ = 0;
};

/// Right kernel of a map, as a subspace of its source.
template <class K>
Subspace<K> kernel(const Mat<K>& a) {
    return Subspace<K>::from_rows(kernel_basis(a));
}

/// Image (column space) of a map, as a subspace of its target.
template <class K>
Subspace<K> image(const Mat<K>& a) {
    return Subspace<K>::column_space(a);
}

/// Pushforward: span of { a·u : u in s }.
template <class K>
Subspace<K> image(const Mat<K>& a, const Subspace<K>& s) {
    if (a.cols() != s.ambient())
        throw std::invalid_argument("image: map source does not match subspace ambient");
    return Subspace<K>::from_rows(s.basis() * transpose(a));
}

/// Preimage { v : a·v in s }.  Uses duality: a·v lies in S exactly when every
/// kernel row z of S's basis has zᵀ·a·v = 0.
template <class K>
Subspace<K> preimage(const Mat<K>& a, const Subspace<K>& s) {
    if (a.rows() != s.ambient())
        throw std::invalid_argument("preimage: map target does not match subspace ambient");
    const Mat<K> annihilator = kernel_basis(s.basis());
    return kernel(Mat<K>(annihilator * a));
}

// ---------------------------------------------------------------------------
// Graded (multi-vertex) subspace families and their closure fixpoints.

template <class K>
struct GradedMap {
    int src = 0;
    int dst = 0;
    Mat<K> a;
};

template <class K>
struct GradedSubspace {
    std::vector<Subspace<K>> part;

    static GradedSubspace zero(const std::vector<int>& dims) {
        GradedSubspace g;
        for (int d : dims) g.part.push_back(Subspace<K>::zero(d));
        return g;
    }
    static GradedSubspace full(const std::vector<int>& dims) {
        GradedSubspace g;
        for (int d : dims) g.part.push_back(Subspace<K>::full(d));
        return g;
    }

    int total_dim() const {
        int t = 0;
        for (const auto& s : part) t += s.dim();
        return t;
    }
    bool is_zero() const { return total_dim() == 0; }
    bool is_full() const {
        for (const auto& s : part)
            if (!s.is_full()) return false;
        return true;
    }

    friend bool operator==(const GradedSubspace& a, const GradedSubspace& b) {
        return a.part == b.part;
    }
    friend bool operator!=(const GradedSubspace& a, const GradedSubspace& b) { return !(a == b); }
};

template <class K>
void require_graded_shapes(const std::vector<GradedMap<K>>& maps, const GradedSubspace<K>& s) {
    const int n = static_cast<int>(s.part.size());
    for (const auto& f : maps) {
        if (f.src < 0 || f.src >= n || f.dst < 0 || f.dst >= n)
            throw std::invalid_argument("graded map: vertex index out of range");
        if (f.a.cols() != s.part[static_cast<std::size_t>(f.src)].ambient() ||
            f.a.rows() != s.part[static_cast<std::size_t>(f.dst)].ambient())
            throw std::invalid_argument("graded map: shape mismatch at arrow " +
                                        std::to_string(f.src) + "->" + std::to_string(f.dst));
    }
}

/// True when f(S_src) is contained in S_dst for every map.
template <class K>
bool is_closed_under(const std::vector<GradedMap<K>>& maps, const GradedSubspace<K>& s) {
    for (const auto& f : maps) {
        const auto& src = s.part[static_cast<std::size_t>(f.src)];
        const auto& dst = s.part[static_cast<std::size_t>(f.dst)];
        if (!dst.contains(image(f.a, src))) return false;
    }
    return true;
}

/// Largest family contained in `bound` and closed under every map: decreasing
/// fixpoint S_src <- S_src ∩ preimage(f, S_dst) until no dimension drops.
template <class K>
GradedSubspace<K> max_invariant_in(const std::vector<GradedMap<K>>& maps,
                                   GradedSubspace<K> bound) {
    require_graded_shapes(maps, bound);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& f : maps) {
            auto& src = bound.part[static_cast<std::size_t>(f.src)];
            const auto& dst = bound.part[static_cast<std::size_t>(f.dst)];
            Subspace<K> cut = intersect(src, preimage(f.a, dst));
            if (cut.dim() < src.dim()) {
                src = std::move(cut);
                changed = true;
            }
        }
    }
    return bound;
}

/// Smallest family containing `seed` and closed under every map: increasing
/// fixpoint S_dst <- S_dst + f(S_src) until no dimension grows.
template <class K>
GradedSubspace<K> closure_generated_by(const std::vector<GradedMap<K>>& maps,
                                       GradedSubspace<K> seed) {
    require_graded_shapes(maps, seed);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& f : maps) {
            const auto& src = seed.part[static_cast<std::size_t>(f.src)];
            auto& dst = seed.part[static_cast<std::size_t>(f.dst)];
            Subspace<K> grown = sum(dst, image(f.a, src));
            if (grown.dim() > dst.dim()) {
                dst = std::move(grown);
                changed = true;
            }
        }
    }
    return seed;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of k-dimensional subspaces of F_p^n.

inline Int gaussian_binomial(int n, int k, std::uint32_t p) {
    if (k < 0 || k > n) return Int(0);
    Int num(1), den(1);
    const Int P(static_cast<unsigned long>(p));
    for (int i = 0; i < k; ++i) {
        Int pn, pd;
        mpz_pow_ui(pn.get_mpz_t(), P.get_mpz_t(), static_cast<unsigned long>(n - i));
        mpz_pow_ui(pd.get_mpz_t(), P.get_mpz_t(), static_cast<unsigned long>(i + 1));
        num *= pn - 1;
        den *= pd - 1;
    }
    return Int(num / den);
}

/// Yields every k-dimensional subspace of F_p^n exactly once, by walking the
/// canonical echelon forms: pivot-column sets in lexicographic order, free
/// entries as an odometer (last free position fastest).  Construction refuses
/// outright when the subspace count exceeds the budget.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(int dim_ambient, int k, std::uint32_t p, unsigned long budget = 1000000)
        : n_(dim_ambient), k_(k), p_(p) {
        if (n_ < 0 || k_ < 0 || k_ > n_)
            throw std::invalid_argument("enumerate_subspaces: need 0 <= k <= dim");
        if (!is_prime_u32(p)) throw std::invalid_argument("enumerate_subspaces: p must be prime");
        const Int count = gaussian_binomial(n_, k_, p_);
        if (count > Int(budget))
            throw std::runtime_error("enumerate_subspaces: budget exceeded (" + count.get_str() +
                                     " subspaces of F_" + std::to_string(p) + "^" +
                                     std::to_string(n_) + " exceed limit " +
                                     std::to_string(budget) + ")");
        for (int i = 0; i < k_; ++i) pivots_.push_back(i);
        reset_free_positions();
    }

    Int count() const { return gaussian_binomial(n_, k_, p_); }

    std::optional<Subspace<Fp>> next() {
        if (done_) return std::nullopt;
        Subspace<Fp> out = current();
        advance();
        return out;
    }

private:
    Subspace<Fp> current() const {
        Mat<Fp> m(k_, n_);
        for (int r = 0; r < k_; ++r) m.at(r, pivots_[static_cast<std::size_t>(r)]) = Fp(1, p_);
        for (std::size_t i = 0; i < free_pos_.size(); ++i)
            m.at(free_pos_[i].first, free_pos_[i].second) =
                Fp(static_cast<long long>(free_val_[i]), p_);
        // Already in reduced echelon form by construction.
        return Subspace<Fp>::from_rows(std::move(m));
    }

    void reset_free_positions() {
        free_pos_.clear();
        std::vector<bool> is_pivot(static_cast<std::size_t>(n_), false);
        for (int c : pivots_) is_pivot[static_cast<std::size_t>(c)] = true;
        for (int r = 0; r < k_; ++r)
            for (int c = pivots_[static_cast<std::size_t>(r)] + 1; c < n_; ++c)
                if (!is_pivot[static_cast<std::size_t>(c)])
                    free_pos_.emplace_back(r, c);
        free_val_.assign(free_pos_.size(), 0);
    }

    void advance() {
        // Odometer over free entries, base p, last position fastest.
        for (std::size_t i = free_pos_.size(); i-- > 0;) {
            if (++free_val_[i] < p_) return;
            free_val_[i] = 0;
        }
        // Next pivot-column combination in lexicographic order.
        int i = k_ - 1;
        while (i >= 0 && pivots_[static_cast<std::size_t>(i)] == n_ - k_ + i) --i;
        if (i < 0 || k_ == 0) {
            done_ = true;
            return;
        }
        ++pivots_[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k_; ++j)
            pivots_[static_cast<std::size_t>(j)] = pivots_[static_cast<std::size_t>(i)] + (j - i);
        reset_free_positions();
    }

    int n_, k_;
    std::uint32_t p_;
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> free_pos_;
    std::vector<std::uint32_t> free_val_;
    bool done_ = false;
};

} // namespace qv
