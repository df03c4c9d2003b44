#pragma once

// GIT stability for framed doubled quivers and their graded triples:
// integer-valued linearizations, the framing transfer that makes theta(alpha)
// vanish, nondegeneracy checks, the three-band symbolic-T functional on the
// graded triple, exact verdicts via subrepresentation enumeration over F_p
// (the oracle), a fast invariant-subspace path (the production route), and
// the verdict-transfer check between a point and its slice-shift module.

#include <functional>
#include <optional>

#include "qv/rep.hpp"
#include "qv/tvalue.hpp"

namespace qv {

// ---------------------------------------------------------------------------
// Integer linearizations.

struct Theta {
    std::vector<int> c; // aligned with a quiver's vertex order

    int size() const { return static_cast<int>(c.size()); }
    int at(int i) const { return c[static_cast<std::size_t>(i)]; }
};

long long theta_eval(const Theta& th, const DimVec& beta);

/// Extend a linearization over the framing vertex so that it pairs to zero
/// with cb_dimension(v): theta_inf = -Σ theta_i · v_i.
Theta cb_theta(const Theta& theta0, const DimVec& v);

struct NondegResult {
    bool nondegenerate = false;
    std::optional<DimVec> witness; // a proper nonzero beta with theta(beta) = 0
    bool theta_alpha_zero = true;  // informational: whether theta(alpha) = 0 held
};

/// Exhaustively checks theta(beta) != 0 over all 0 < beta < alpha
/// (componentwise).  Refuses when Π(alpha_i + 1) exceeds the budget.
NondegResult is_nondegenerate(const Theta& th, const DimVec& alpha,
                              unsigned long budget = 1000000);

// ---------------------------------------------------------------------------
// The symbolic-T functional on a graded triple.

struct GtrTheta {
    std::vector<TValue> coeffs; // per graded vertex (slice-major order)
    std::vector<TValue> lg, mid, sm; // the three bands, same indexing
    TValue C;                        // correction constant at the framing vertex, slice a
};

TValue gtr_theta_eval(const GtrTheta& th, const DimVec& m);

/// Builds the graded functional from an integer linearization on the framed
/// vertex set.  With r the number of unframed vertices in declaration order
/// (the framing vertex takes exponent r+1) and [a,b] the window:
///   large band:  T^{exp(i)} at (i,b) minus T^{exp(i)} at (i,a), all i;
///   middle band: theta_i at (i,a), all i;
///   small band:  -T^{-exp(i)} at (i,a) for unframed i, plus T^{-r-1} at
///                every interior vertex (i,n), a < n < b, framing included;
///   correction:  C = (sum of bands)(alpha^gtr), subtracted at (inf,a).
/// By construction the result pairs to zero with alpha^gtr, and the large
/// band alone already does; both identities are verified here.
GtrTheta build_theta_gtr(const Theta& th, const DimVec& alpha, const GtrQuiver& gtr,
                         unsigned long nondeg_budget = 1000000);

struct GtrNondegReport {
    bool nondegenerate = false;
    std::optional<DimVec> witness;
    // Sub-vectors checked, split by the value of m at the framing vertex in
    // the lowest slice (the two cases of the interior-zero analysis).
    unsigned long checked_frame0 = 0;
    unsigned long checked_frame1 = 0;
};

/// Exhaustively verifies t_sign(theta_gtr(m)) != 0 over all proper nonzero
/// m <= alpha_gtr.  Refuses when Π(alpha_gtr_{i,n} + 1) exceeds the budget.
GtrNondegReport check_gtr_nondegenerate(const GtrTheta& th, const GtrQuiver& gtr,
                                        const DimVec& alpha_gtr,
                                        unsigned long budget = 1000000);

// ---------------------------------------------------------------------------
// Verdicts.

enum class Stability { Stable, StrictlySemistable, Unstable };

std::string stability_str(Stability s);

struct BruteVerdict {
    Stability verdict = Stability::Stable;
    std::optional<GradedSubspace<Fp>> witness; // destabilizing subrepresentation
    std::optional<DimVec> witness_dim;
    int witness_sign = 0; // theta sign at the witness (-1 or 0)
};

/// Enumerates every graded subspace family over F_p, filters to families
/// closed under all arrow matrices, and classifies by the sign of the
/// functional: any negative value is a destabilizer (unstable), otherwise any
/// zero value on a proper nonzero subrepresentation means strictly
/// semistable, otherwise stable.  The reported witness is the one of highest
/// severity with the lowest enumeration index, so serial and parallel runs
/// agree bit for bit.
BruteVerdict stability_bruteforce_core(const Quiver& graph, const DimVec& dims,
                                       const std::vector<Mat<Fp>>& mats,
                                       const std::function<int(const DimVec&)>& theta_sign,
                                       std::uint32_t p, unsigned long budget, bool parallel);

BruteVerdict is_stable_bruteforce(const CBRep<Fp>& x, const Theta& th, std::uint32_t p,
                                  unsigned long budget = 1000000, bool parallel = true);

BruteVerdict is_stable_bruteforce(const GtrRep<Fp>& v, const GtrTheta& th, std::uint32_t p,
                                  unsigned long budget = 1000000, bool parallel = true);

/// Converts a representation's arrow matrices to graded maps for the
/// subspace fixpoints.
template <class K>
std::vector<GradedMap<K>> rep_maps(const Quiver& g, const std::vector<Mat<K>>& mats) {
    std::vector<GradedMap<K>> out;
    for (int h = 0; h < g.num_arrows(); ++h)
        out.push_back(GradedMap<K>{g.arrow(h).src, g.arrow(h).tgt,
                                   mats[static_cast<std::size_t>(h)]});
    return out;
}

/// Production-path verdict without enumeration, valid when the linearization
/// has one strict sign on all unframed vertices (framing dimension must be 1
/// and theta(alpha) = 0):
///   all positive: every potential destabilizer contains the framing line, so
///     x is stable iff the closure generated by that line is everything;
///   all negative: every potential destabilizer avoids the framing line, so
///     x is stable iff the largest invariant family with zero framing part is
///     zero.
/// In both chambers a proper subrepresentation can never pair to zero, so
/// strictly-semistable cannot occur.  Mixed or vanishing signs are refused.
template <class K>
Stability is_stable_fast(const CBRep<K>& x, const Theta& th) {
    x.validate();
    const Quiver& g = x.quiver->graph;
    const int inf = g.vertex_index(kFramingVertex);
    if (th.size() != g.num_vertices())
        throw std::invalid_argument("is_stable_fast: theta size mismatch");
    if (x.dim.at(inf) != 1)
        throw std::invalid_argument("is_stable_fast: framing dimension must be 1");
    if (theta_eval(th, x.dim) != 0)
        throw std::invalid_argument("is_stable_fast: theta(alpha) != 0");
    int pos = 0, neg = 0, zero = 0;
    for (int i = 0; i < g.num_vertices(); ++i) {
        if (i == inf) continue;
        if (th.at(i) > 0)
            ++pos;
        else if (th.at(i) < 0)
            ++neg;
        else
            ++zero;
    }
    const auto maps = rep_maps(g, x.mats);
    if (zero == 0 && neg == 0) {
        GradedSubspace<K> seed = GradedSubspace<K>::zero(x.dim.d);
        seed.part[static_cast<std::size_t>(inf)] = Subspace<K>::full(1);
        return closure_generated_by(maps, seed).is_full() ? Stability::Stable
                                                          : Stability::Unstable;
    }
    if (zero == 0 && pos == 0) {
        GradedSubspace<K> bound = GradedSubspace<K>::full(x.dim.d);
        bound.part[static_cast<std::size_t>(inf)] = Subspace<K>::zero(1);
        return max_invariant_in(maps, bound).is_zero() ? Stability::Stable
                                                       : Stability::Unstable;
    }
    throw std::runtime_error(
        "is_stable_fast: unsupported chamber (theta must carry a single strict sign on the "
        "unframed vertices; fall back to the enumeration oracle)");
}

// ---------------------------------------------------------------------------
// Verdict transfer between a zero-fiber point and its slice-shift module.

struct TransferReport {
    BruteVerdict cb;
    BruteVerdict gtr;
    bool agree = false;              // same verdict on both sides
    bool degree_a_generated = false; // stable case: lowest slice generates everything
    bool witness_transfers = false;  // unstable case: constant extension of the
                                     // framed witness destabilizes the graded side
    bool ok = false;                 // agree plus the applicable side condition
};

TransferReport check_ind_stability_transfer(const CBRep<Fp>& x, const Theta& th,
                                            const GtrTheta& gth,
                                            std::shared_ptr<const GtrQuiver> gtr,
                                            std::uint32_t p, unsigned long budget = 1000000,
                                            bool parallel = true);

} // namespace qv
