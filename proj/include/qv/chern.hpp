#pragma once

// Truncated bigraded Chern-class calculus with exact integer coefficients:
// Whitney products, Segre inversion, tensor-product classes via formal roots
// with exact symmetric-function reduction, alternating products over two-step
// complexes, top-degree extraction, and Kunneth-style splitting into left and
// right factors.
//
// Classes live in a free truncated polynomial ring: formal variables c_k(B)
// for named bundle symbols B, with integer coefficients and no relations
// beyond rank vanishing (c_k(B) = 0 for k > rank B) and the degree cut.  Each
// symbol belongs to a "left" or "right" factor; the cohomological degree of
// c_k is 2k, tracked internally as the weight k (all degrees are even).

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qv/rational.hpp"
#include "qv/quiver.hpp"

namespace qv {

enum class Side { Left, Right };

struct BundleSymbol {
    std::string name;
    int rank = 0;
    Side side = Side::Left;
};

/// One formal variable c_k(B).  Ordered by (side, bundle name, k).
struct ChernVar {
    int side = 0;  // 0 = left, 1 = right
    std::string bundle;
    int k = 0;

    friend bool operator<(const ChernVar& a, const ChernVar& b) {
        return std::tie(a.side, a.bundle, a.k) < std::tie(b.side, b.bundle, b.k);
    }
    friend bool operator==(const ChernVar& a, const ChernVar& b) {
        return std::tie(a.side, a.bundle, a.k) == std::tie(b.side, b.bundle, b.k);
    }
};

/// Sorted list of (variable, exponent >= 1) pairs; the empty list is 1.
using ChernMonomial = std::vector<std::pair<ChernVar, int>>;

/// Total weight (half the cohomological degree): sum of k * exponent.
int monomial_weight(const ChernMonomial& m);
/// Weight carried by one side only.
int monomial_weight(const ChernMonomial& m, int side);
/// The sub-monomial of variables on the given side.
ChernMonomial monomial_side(const ChernMonomial& m, int side);

class GradedClass {
public:
    explicit GradedClass(int trunc);
    static GradedClass unit(int trunc);

    int truncation() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<ChernMonomial, Int>& terms() const { return terms_; }
    Int coefficient(const ChernMonomial& m) const;

    /// Adds c * m, dropping the term if its weight exceeds the truncation.
    void add_term(const ChernMonomial& m, const Int& c);

    friend GradedClass operator+(const GradedClass& a, const GradedClass& b);
    friend GradedClass operator-(const GradedClass& a, const GradedClass& b);
    friend GradedClass operator*(const GradedClass& a, const GradedClass& b);
    friend bool operator==(const GradedClass& a, const GradedClass& b) {
        return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }

private:
    int trunc_;
    std::map<ChernMonomial, Int> terms_;
};

/// 1 + c_1(B) + ... + c_rank(B), truncated.
GradedClass total_chern(const BundleSymbol& b, int trunc);

/// Truncated product; throws std::invalid_argument on truncation mismatch.
GradedClass whitney(const GradedClass& a, const GradedClass& b);

/// Truncated multiplicative inverse of a class with constant term 1: the
/// total Segre class.  Coefficients stay integral.  Throws
/// std::invalid_argument when the constant term differs from 1.
GradedClass segre_inverse(const GradedClass& a);

/// Total Chern class of the tensor product of two distinct bundle symbols,
/// computed by the splitting principle: expand prod_{p,q} (1 + x_p + y_q)
/// over formal roots, then rewrite exactly in elementary symmetric
/// polynomials of each root family and substitute c_k's.  The reduction is
/// exact division; a nonzero remainder raises std::logic_error (internal
/// bug guard).  A rank-0 factor yields 1 (the zero bundle).
GradedClass chern_tensor(const BundleSymbol& e, const BundleSymbol& f, int trunc);

/// One term of a two-step complex: a product bundle placed in cohomological
/// degree -1, 0, or +1.  A rank-0 symbol on either side marks a trivial line
/// factor: the term degenerates to the other side's bundle alone (both rank
/// 0: the trivial line bundle, class 1).
struct RTerm {
    BundleSymbol left;
    BundleSymbol right;
    int degree = 0;
};

/// Alternating Whitney product: degree-0 terms contribute their total Chern
/// class, degree +-1 terms contribute its Segre inverse.
GradedClass chern_of_complex(const std::vector<RTerm>& terms, int trunc);

/// Homogeneous part of weight d (cohomological degree 2d).
GradedClass top_class(const GradedClass& a, int d);

/// Splitting a = sum_i x_i (x) y_i with monic monomial right factors y_i:
/// returns the pairs (x_i, y_i), ordered by the right monomial.  Summing
/// x_i * y_i reproduces a.
std::vector<std::pair<GradedClass, GradedClass>> kunneth_decompose(const GradedClass& a);

/// The left factors {x_i} of kunneth_decompose.
std::vector<GradedClass> kunneth_left_components(const GradedClass& a);

/// Canonical rendering: terms in graded-lex order (weight first, then
/// variable order), e.g. "1 + 3*c1(E)*c2(F) - c1(E)^2".
std::string class_str(const GradedClass& a);

/// The terms of the tautological two-step complex for a doubled framed
/// quiver with dimension vector alpha: per unframed vertex i a degree -1
/// term (E[i], F[i,0]) and a degree +1 term (E[i], F[i,2]), and per doubled
/// arrow h a degree 0 term (E[s(h)], F[t(h),1]).  Symbols at the framing
/// vertex get rank 0 (their bundles are trivial lines on the moduli).
std::vector<RTerm> standard_complex_terms(const DoubledQuiver& dq, const DimVec& alpha);

} // namespace qv
