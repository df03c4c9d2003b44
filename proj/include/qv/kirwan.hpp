#pragma once

// Tautological two-step complex attached to a pair of graded modules, together
// with its canonical section and the undeformed comparison maps on plain
// framed-quiver data.
//
// Given two graded representations V, W of the tripled quiver on the window
// [0, 2], with every shift map of V invertible, we form three block spaces
//
//   L0 = (+)_{i}            Hom(V_{i,0}, W_{i,0})   (i over all base vertices)
//   E  = (+)_{h}            Hom(V_{s(h),0}, W_{t(h),1})   (h over doubled arrows)
//   L2 = (+)_{i}            Hom(V_{i,0}, W_{i,2})
//
// and two maps assembled from the arrow and shift matrices:
//
//   (d0 phi)_h = a^W_{h,0} phi_{s(h)}
//              - e^W_{t(h),0} phi_{t(h)} (e^V_{t(h),0})^{-1} a^V_{h,0}
//
//   (d1 psi)_k = sum_{h : t(h)=k} eps(h) [ a^W_{h,1} psi_{hbar}
//              + e^W_{k,1} psi_h (e^V_{s(h),0})^{-1} a^V_{hbar,0} ]
//
// When both modules satisfy the preprojective-style relations, d1 . d0 = 0.
// The "truncated" maps delta0 / delta1 drop the framing-vertex block from the
// source of d0 and from the target of d1; the canonical section s is (minus)
// the framing column of the full d0, so that d0 = [delta0 | -s] blockwise.
//
// For pairs of points of the doubled framed quiver (no grading), sigma_tau
// builds the classical comparison pair
//
//   sigma(xi) = (B' xi - xi B,  -xi i,  j' xi)
//   tau(C, a, b) = eps B' C + eps C B + i' b + a j
//
// whose composition is tau(sigma(xi)) = mu(y) xi - xi mu(x); in particular it
// vanishes when both points lie in the zero fiber of the moment map.  With
// identity shift maps, delta0 / delta1 of the induced graded modules coincide
// with sigma / tau up to the block permutation implemented by the offset
// tables below, and the graded section reduces to (0, -i', j).

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qv/matrix.hpp"
#include "qv/linalg.hpp"
#include "qv/subspace.hpp"
#include "qv/quiver.hpp"
#include "qv/rep.hpp"

namespace qv {

namespace detail {

/// Copies all columns of m except the range [lo, lo+count).
template <class K>
Mat<K> drop_col_range(const Mat<K>& m, int lo, int count) {
    Mat<K> out(m.rows(), m.cols() - count);
    for (int i = 0; i < m.rows(); ++i) {
        int cj = 0;
        for (int j = 0; j < m.cols(); ++j) {
            if (j >= lo && j < lo + count) continue;
            out.at(i, cj++) = m.at(i, j);
        }
    }
    return out;
}

/// Adds sign · (row-major flattening of src) into a column vector at offset.
template <class K>
void add_flat(Mat<K>& col, int off, const Mat<K>& src, int sign) {
    int t = 0;
    for (int i = 0; i < src.rows(); ++i)
        for (int j = 0; j < src.cols(); ++j, ++t) {
            K& cell = col.at(off + t, 0);
            if (sign > 0) cell = cell + src.at(i, j);
            else cell = cell - src.at(i, j);
        }
}

/// Copies all rows of m except the range [lo, lo+count).
template <class K>
Mat<K> drop_row_range(const Mat<K>& m, int lo, int count) {
    Mat<K> out(m.rows() - count, m.cols());
    int ci = 0;
    for (int i = 0; i < m.rows(); ++i) {
        if (i >= lo && i < lo + count) continue;
        for (int j = 0; j < m.cols(); ++j) out.at(ci, j) = m.at(i, j);
        ++ci;
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// The two-step complex at a pair of graded modules.
// ---------------------------------------------------------------------------

template <class K>
struct TautComplexFiber {
    std::shared_ptr<const GtrQuiver> gtr;
    GtrRep<K> source;  // V: the module whose shift maps are inverted
    GtrRep<K> target;  // W

    int framing = 0;  // index of the framing vertex in the base graph

    // Block offsets: l0_off / l2_off per base vertex, e_off per doubled arrow.
    std::vector<int> l0_off, e_off, l2_off;
    int l0_dim = 0, e_dim = 0, l2_dim = 0;

    Mat<K> d0_full;  // e_dim x l0_dim
    Mat<K> d1_full;  // l2_dim x e_dim
    Mat<K> d0;       // truncated: framing block removed from the source
    Mat<K> d1;       // truncated: framing block removed from the target

    bool has_section = false;
    Mat<K> s;  // column vector in E coordinates (when has_section)
};

/// Assembles the two-step complex for (V, W).  Requires the window [0, 2] and
/// every shift map of V invertible; throws std::invalid_argument /
/// std::domain_error otherwise.  Neither module needs to satisfy the
/// relations -- the composite d1 * d0 vanishes exactly when they do.
template <class K>
TautComplexFiber<K> build_fiber(const GtrRep<K>& v, const GtrRep<K>& w) {
    if (!v.gtr || !w.gtr) throw std::invalid_argument("build_fiber: empty module");
    if (!same_quiver(v.gtr->graph, w.gtr->graph))
        throw std::invalid_argument("build_fiber: modules live over different graded quivers");
    const GtrQuiver& g = *v.gtr;
    if (g.a != 0 || g.b != 2)
        throw std::invalid_argument("build_fiber: window must be [0,2]");

    const DoubledQuiver& base = g.base;
    const int nv = static_cast<int>(base.graph.num_vertices());
    const int na = static_cast<int>(base.graph.num_arrows());

    TautComplexFiber<K> f;
    f.gtr = v.gtr;
    f.source = v;
    f.target = w;
    f.framing = base.graph.vertex_index(kFramingVertex);

    auto dv = [&](int i, int n) { return v.dim.at(g.vertex_at(i, n)); };
    auto dw = [&](int i, int n) { return w.dim.at(g.vertex_at(i, n)); };

    // Invertibility of every shift map of the source module, plus cached
    // inverses of the level-0 ones (the only ones the formulas divide by).
    std::vector<Mat<K>> e0_inv;
    e0_inv.reserve(nv);
    for (int i = 0; i < nv; ++i) {
        for (int n = g.a; n < g.b; ++n) {
            const Mat<K>& e = v.e(i, n);
            if (e.rows() != e.cols() || !is_invertible(e))
                throw std::domain_error(
                    "build_fiber: source shift map e:" + base.graph.vertex(i) + "@" +
                    std::to_string(n) + " is singular (boundary point)");
        }
        e0_inv.push_back(inverse(v.e(i, 0)));
    }

    // Block layout.
    f.l0_off.resize(nv);
    f.l2_off.resize(nv);
    f.e_off.resize(na);
    for (int i = 0; i < nv; ++i) {
        f.l0_off[i] = f.l0_dim;
        f.l0_dim += dw(i, 0) * dv(i, 0);
        f.l2_off[i] = f.l2_dim;
        f.l2_dim += dw(i, 2) * dv(i, 0);
    }
    for (int h = 0; h < na; ++h) {
        const Arrow& ar = base.graph.arrow(h);
        const int si = ar.src;
        const int ti = ar.tgt;
        f.e_off[h] = f.e_dim;
        f.e_dim += dw(ti, 1) * dv(si, 0);
    }

    f.d0_full = Mat<K>(f.e_dim, f.l0_dim);
    f.d1_full = Mat<K>(f.l2_dim, f.e_dim);

    for (int h = 0; h < na; ++h) {
        const Arrow& ar = base.graph.arrow(h);
        const int si = ar.src;
        const int ti = ar.tgt;
        const int hb = base.bar[h];
        const int sign = base.eps[h];

        // d0 row block h:  + a^W_{h,0} . phi_{s(h)}
        //                  - e^W_{t(h),0} . phi_{t(h)} . (e^V_{t(h),0})^{-1} a^V_{h,0}
        add_block(f.d0_full, f.e_off[h], f.l0_off[si],
                  kron(w.a(h, 0), Mat<K>::identity(dv(si, 0))), +1);
        add_block(f.d0_full, f.e_off[h], f.l0_off[ti],
                  kron(w.e(ti, 0), transpose(e0_inv[ti] * v.a(h, 0))), -1);

        // d1 row block t(h):  eps(h) [ a^W_{h,1} . psi_{hbar}
        //                            + e^W_{t(h),1} . psi_h . (e^V_{s(h),0})^{-1} a^V_{hbar,0} ]
        add_block(f.d1_full, f.l2_off[ti], f.e_off[hb],
                  kron(w.a(h, 1), Mat<K>::identity(dv(ti, 0))), sign);
        add_block(f.d1_full, f.l2_off[ti], f.e_off[h],
                  kron(w.e(ti, 1), transpose(e0_inv[si] * v.a(hb, 0))), sign);
    }

    const int fr = f.framing;
    f.d0 = detail::drop_col_range(f.d0_full, f.l0_off[fr], dw(fr, 0) * dv(fr, 0));
    f.d1 = detail::drop_row_range(f.d1_full, f.l2_off[fr], dw(fr, 2) * dv(fr, 0));

    // Canonical section: minus the framing column of the full d0, i.e. the
    // image of the (negated) unit generator of Hom(V_{fr,0}, W_{fr,0}).
    if (dv(fr, 0) == 1 && dw(fr, 0) == 1) {
        f.has_section = true;
        f.s = Mat<K>(f.e_dim, 1);
        for (int r = 0; r < f.e_dim; ++r) f.s.at(r, 0) = -f.d0_full.at(r, f.l0_off[fr]);
    }
    return f;
}

/// The canonical section as a column in E coordinates.  Defined whenever both
/// modules have one-dimensional framing at level 0.
template <class K>
Mat<K> section_s(const TautComplexFiber<K>& f) {
    if (!f.has_section)
        throw std::logic_error(
            "section_s: section requires one-dimensional framing at level 0 on both modules");
    return f.s;
}

// ---------------------------------------------------------------------------
// Verification report.
// ---------------------------------------------------------------------------

template <class K>
struct FiberReport {
    bool composite_zero = false;  // d1_full * d0_full == 0 (hence also truncated)
    int rank_d0 = 0, rank_d1 = 0;               // truncated maps
    int dim_ker_d0 = 0, dim_coker_d1 = 0;       // truncated maps
    int dim_ker_d0_full = 0, dim_coker_d1_full = 0;
    int rank_H0 = 0;  // e_dim - rank_d0 - rank_d1
    int hom_vw = -1, hom_wv = -1;  // intertwiner space dimensions (-1: not computed)
    bool relations_ok = false;     // both modules satisfy the relations
    bool hom_cross_check = false;  // full kernel/cokernel dims match hom_vw / hom_wv
};

template <class K>
FiberReport<K> verify_fiber(const TautComplexFiber<K>& f) {
    FiberReport<K> r;
    Mat<K> comp = f.d1_full * f.d0_full;
    r.composite_zero = (comp == Mat<K>(f.l2_dim, f.l0_dim));

    r.rank_d0 = rank(f.d0);
    r.rank_d1 = rank(f.d1);
    r.dim_ker_d0 = f.d0.cols() - r.rank_d0;
    r.dim_coker_d1 = f.d1.rows() - r.rank_d1;
    const int rank_d0_full = rank(f.d0_full);
    const int rank_d1_full = rank(f.d1_full);
    r.dim_ker_d0_full = f.l0_dim - rank_d0_full;
    r.dim_coker_d1_full = f.l2_dim - rank_d1_full;
    r.rank_H0 = f.e_dim - r.rank_d0 - r.rank_d1;

    r.relations_ok = check_A_relations(f.source).empty() && check_A_relations(f.target).empty();
    if (r.relations_ok) {
        r.hom_vw = hom_A(f.source, f.target).dimension;
        r.hom_wv = hom_A(f.target, f.source).dimension;
        r.hom_cross_check =
            (r.dim_ker_d0_full == r.hom_vw) && (r.dim_coker_d1_full == r.hom_wv);
    }
    return r;
}

/// Expected generic rank of the middle cohomology: for a framed doubled quiver
/// with dimension vector alpha (framing vertex included with value 1),
///   2 * sum_{original arrows} alpha_{s} alpha_{t}  -  2 * sum_{unframed i} alpha_i^2.
/// `framed` is the undoubled framed quiver (its arrows are the originals).
inline int expected_rank(const Quiver& framed, const DimVec& alpha) {
    if (alpha.size() != framed.num_vertices())
        throw std::invalid_argument("expected_rank: dimension vector size mismatch");
    long long arrows = 0;
    for (int h = 0; h < framed.num_arrows(); ++h) {
        const Arrow& ar = framed.arrow(h);
        arrows += static_cast<long long>(alpha.at(ar.src)) * alpha.at(ar.tgt);
    }
    long long verts = 0;
    for (int i = 0; i < framed.num_vertices(); ++i) {
        if (framed.vertex(i) == kFramingVertex) continue;
        const long long d = alpha.at(i);
        verts += d * d;
    }
    const long long out = 2 * arrows - 2 * verts;
    return static_cast<int>(out);
}

// ---------------------------------------------------------------------------
// Undeformed comparison maps on pairs of doubled framed-quiver points.
// ---------------------------------------------------------------------------

template <class K>
struct SigmaTau {
    // Middle-space block order: non-framing doubled arrows (in arrow order),
    // then framing arrows (the -xi i blocks), then framing bars (the j' xi
    // blocks).  `mid_block` maps a doubled-arrow index to its offset.
    std::vector<int> l_off;      // per unframed base vertex (framing skipped -> -1)
    std::vector<int> mid_block;  // per doubled arrow -> offset in the middle space
    int l_dim = 0, mid_dim = 0;

    Mat<K> sigma;  // mid_dim x l_dim
    Mat<K> tau;    // l_dim x mid_dim
    Mat<K> s;      // the section (0, -i', j) as a column in middle coordinates
};

/// Builds sigma(xi) = (B' xi - xi B, -xi i, j' xi) and
/// tau(C, a, b) = eps B' C + eps C B + i' b + a j for a pair of points x
/// (primed letters come from y).  Requires equal dimension vectors.
template <class K>
SigmaTau<K> sigma_tau(const CBRep<K>& x, const CBRep<K>& y) {
    if (!x.quiver || !y.quiver || !same_quiver(x.quiver->graph, y.quiver->graph))
        throw std::invalid_argument("sigma_tau: points live over different quivers");
    if (!(x.dim == y.dim))
        throw std::invalid_argument("sigma_tau: dimension vectors differ");
    const DoubledQuiver& dq = *x.quiver;
    const int nv = static_cast<int>(dq.graph.num_vertices());
    const int na = static_cast<int>(dq.graph.num_arrows());
    const int fr = dq.graph.vertex_index(kFramingVertex);

    SigmaTau<K> st;
    st.l_off.assign(nv, -1);
    for (int i = 0; i < nv; ++i) {
        if (i == fr) continue;
        st.l_off[i] = st.l_dim;
        st.l_dim += x.dim.at(i) * x.dim.at(i);  // Hom(V1_i, V2_i), equal dims
    }

    auto touches_framing = [&](int h) {
        const Arrow& ar = dq.graph.arrow(h);
        return ar.src == fr || ar.tgt == fr;
    };
    st.mid_block.assign(na, -1);
    auto block_size = [&](int h) {
        const Arrow& ar = dq.graph.arrow(h);
        return x.dim.at(ar.tgt) *
               x.dim.at(ar.src);
    };
    for (int h = 0; h < na; ++h)  // non-framing doubled arrows: Hom(V1_s, V2_t)
        if (!touches_framing(h)) { st.mid_block[h] = st.mid_dim; st.mid_dim += block_size(h); }
    for (int h = 0; h < na; ++h)  // framing arrows: Hom(F, V2_t)
        if (touches_framing(h) && dq.graph.arrow(h).src == fr) {
            st.mid_block[h] = st.mid_dim;
            st.mid_dim += block_size(h);
        }
    for (int h = 0; h < na; ++h)  // framing bars: Hom(V1_s, F)
        if (touches_framing(h) && dq.graph.arrow(h).tgt == fr) {
            st.mid_block[h] = st.mid_dim;
            st.mid_dim += block_size(h);
        }

    st.sigma = Mat<K>(st.mid_dim, st.l_dim);
    st.tau = Mat<K>(st.l_dim, st.mid_dim);
    st.s = Mat<K>(st.mid_dim, 1);

    for (int h = 0; h < na; ++h) {
        const Arrow& ar = dq.graph.arrow(h);
        const int si = ar.src;
        const int ti = ar.tgt;
        const int hb = dq.bar[h];
        const int sign = dq.eps[h];

        if (!touches_framing(h)) {
            // sigma, non-framing block h: y_h xi_{s(h)} - xi_{t(h)} x_h.
            add_block(st.sigma, st.mid_block[h], st.l_off[si],
                      kron(y.at(h), Mat<K>::identity(x.dim.at(si))), +1);
            add_block(st.sigma, st.mid_block[h], st.l_off[ti],
                      kron(Mat<K>::identity(x.dim.at(ti)), transpose(x.at(h))), -1);
            // tau, target block t(h):
            //   eps(h) y_h C_{hbar}   (hbar is also non-framing)
            //   eps(h) C_h x_{hbar}
            add_block(st.tau, st.l_off[ti], st.mid_block[hb],
                      kron(y.at(h), Mat<K>::identity(x.dim.at(ti))), sign);
            add_block(st.tau, st.l_off[ti], st.mid_block[h],
                      kron(Mat<K>::identity(x.dim.at(ti)), transpose(x.at(hb))), sign);
        } else if (si == fr) {
            // Framing arrow i_h : F -> V_t.
            // sigma block: -xi_{t(h)} x_h;   section component: -y_h.
            add_block(st.sigma, st.mid_block[h], st.l_off[ti],
                      kron(Mat<K>::identity(x.dim.at(ti)), transpose(x.at(h))), -1);
            detail::add_flat(st.s, st.mid_block[h], y.at(h), -1);
            // tau, target block t(h): + i'_h b_{hbar}  ->  y_h C_{hbar}.
            add_block(st.tau, st.l_off[ti], st.mid_block[hb],
                      kron(y.at(h), Mat<K>::identity(x.dim.at(ti))), +1);
        } else {
            // Framing bar j_h : V_s -> F.
            // sigma block: + y_h xi_{s(h)};  section component: +x_h.
            add_block(st.sigma, st.mid_block[h], st.l_off[si],
                      kron(y.at(h), Mat<K>::identity(x.dim.at(si))), +1);
            detail::add_flat(st.s, st.mid_block[h], x.at(h), +1);
            // tau, target block s(h): + a_{hbar} j_h  ->  C_{hbar} x_h.
            add_block(st.tau, st.l_off[si], st.mid_block[hb],
                      kron(Mat<K>::identity(x.dim.at(si)), transpose(x.at(h))), +1);
        }
    }
    return st;
}

// ---------------------------------------------------------------------------
// First-order transversality probe at a point of the zero fiber.
// ---------------------------------------------------------------------------

struct TransversalityReport {
    int tangent_dim = 0;       // dim ker (d mu at x)
    int l_dim = 0;             // domain of the linearized map
    int rank_equal = 0;        // rank with both deformations equal
    bool identity_in_kernel = false;
    int rank_independent = 0;  // rank with independent deformations
    bool full_rank_independent = false;
    bool witness_verified = false;  // kernel witness intertwines the deformations exactly
};

/// Linearization of the pairing map along two tangent directions at x: the map
/// phi |-> bW phi - phi bV on L = (+)_i End(V_i) (all base vertices).  With
/// bV = bW the identity lies in the kernel; for independent generic tangent
/// vectors the map has full column rank.  Whenever the rank drops, the report
/// carries an exactness check on a kernel witness phi: bW_h phi_{s(h)} =
/// phi_{t(h)} bV_h for every doubled arrow h (so 1 + t*phi intertwines the
/// deformed points to first order).
template <class K>
TransversalityReport transversality_probe(const CBRep<K>& x, std::uint64_t seed,
                                          const FieldCtx<K>& ctx) {
    const DoubledQuiver& dq = *x.quiver;
    const int nv = static_cast<int>(dq.graph.num_vertices());
    const int na = static_cast<int>(dq.graph.num_arrows());

    // Differential of the moment map at x: per vertex k,
    //   b |-> sum_{t(h)=k} eps(h) (b_h x_{hbar} + x_h b_{hbar}).
    BlockSystem<K> dmu;
    std::vector<int> unk(na), eq(nv);
    for (int h = 0; h < na; ++h) {
        const Arrow& ar = dq.graph.arrow(h);
        unk[h] = dmu.add_unknown(x.dim.at(ar.tgt),
                                 x.dim.at(ar.src));
    }
    for (int k = 0; k < nv; ++k) eq[k] = dmu.add_equation(x.dim.at(k), x.dim.at(k));
    for (int h = 0; h < na; ++h) {
        const Arrow& ar = dq.graph.arrow(h);
        const int ti = ar.tgt;
        const int hb = dq.bar[h];
        // eps(h) b_h x_{hbar} contributes at vertex t(h) via the unknown b_h.
        dmu.add_term(eq[ti], unk[h], Mat<K>::identity(x.dim.at(ti)), x.at(hb), dq.eps[h]);
        // eps(h) x_h b_{hbar} also lands at t(h), through the unknown b_{hbar}.
        dmu.add_term(eq[ti], unk[hb], x.at(h), Mat<K>::identity(x.dim.at(ti)), dq.eps[h]);
    }
    Mat<K> dmu_mat = dmu.assemble().first;
    Mat<K> tangent = kernel_basis(dmu_mat);  // rows span ker(d mu)

    TransversalityReport rep;
    rep.tangent_dim = tangent.rows();

    Rng rng(seed);
    auto draw_tangent = [&](Rng& r) {
        Mat<K> coeffs(1, tangent.rows());
        for (int j = 0; j < tangent.rows(); ++j) coeffs.at(0, j) = ctx.random(r);
        Mat<K> flat = coeffs * tangent;  // 1 x (total arrow entries)
        return dmu.unpack(transpose(flat));
    };

    auto linearized = [&](const std::vector<Mat<K>>& bW, const std::vector<Mat<K>>& bV) {
        // phi |-> bW phi - phi bV, from (+)_i End(V_i) to (+)_h Hom(V_s, V_t).
        std::vector<int> l_off(nv), e_off(na);
        int l_dim = 0, e_dim = 0;
        for (int i = 0; i < nv; ++i) { l_off[i] = l_dim; l_dim += x.dim.at(i) * x.dim.at(i); }
        for (int h = 0; h < na; ++h) {
            const Arrow& ar = dq.graph.arrow(h);
            e_off[h] = e_dim;
            e_dim += x.dim.at(ar.tgt) *
                     x.dim.at(ar.src);
        }
        Mat<K> m(e_dim, l_dim);
        for (int h = 0; h < na; ++h) {
            const Arrow& ar = dq.graph.arrow(h);
            const int si = ar.src;
            const int ti = ar.tgt;
            add_block(m, e_off[h], l_off[si], kron(bW[h], Mat<K>::identity(x.dim.at(si))), +1);
            add_block(m, e_off[h], l_off[ti],
                      kron(Mat<K>::identity(x.dim.at(ti)), transpose(bV[h])), -1);
        }
        return m;
    };

    auto intertwines = [&](const std::vector<Mat<K>>& bW, const std::vector<Mat<K>>& bV,
                           const std::vector<Mat<K>>& phi) {
        for (int h = 0; h < na; ++h) {
            const Arrow& ar = dq.graph.arrow(h);
            const int si = ar.src;
            const int ti = ar.tgt;
            if (!(bW[h] * phi[si] == phi[ti] * bV[h])) return false;
        }
        return true;
    };

    auto unpack_l = [&](const Mat<K>& flat_row) {
        std::vector<Mat<K>> phi(nv);
        int off = 0;
        for (int i = 0; i < nv; ++i) {
            const int d = x.dim.at(i);
            Mat<K> col(d * d, 1);
            for (int t = 0; t < d * d; ++t) col.at(t, 0) = flat_row.at(0, off + t);
            phi[i] = unvec_row(col, d, d);
            off += d * d;
        }
        return phi;
    };

    Rng rng_b = rng.child(0), rng_v = rng.child(1), rng_w = rng.child(2);
    std::vector<Mat<K>> b_eq = draw_tangent(rng_b);
    std::vector<Mat<K>> b_v = draw_tangent(rng_v);
    std::vector<Mat<K>> b_w = draw_tangent(rng_w);

    Mat<K> m_eq = linearized(b_eq, b_eq);
    rep.l_dim = m_eq.cols();
    rep.rank_equal = rank(m_eq);
    std::vector<Mat<K>> id(nv);
    for (int i = 0; i < nv; ++i) id[i] = Mat<K>::identity(x.dim.at(i));
    rep.identity_in_kernel = intertwines(b_eq, b_eq, id);
    bool witness_ok = rep.identity_in_kernel;

    Mat<K> m_ind = linearized(b_w, b_v);
    rep.rank_independent = rank(m_ind);
    rep.full_rank_independent = (rep.rank_independent == rep.l_dim);
    if (!rep.full_rank_independent) {
        Mat<K> ker = kernel_basis(m_ind);
        bool any = false;
        for (int r = 0; r < ker.rows() && !any; ++r) {
            Mat<K> row(1, ker.cols());
            for (int j = 0; j < ker.cols(); ++j) row.at(0, j) = ker.at(r, j);
            any = intertwines(b_w, b_v, unpack_l(row));
        }
        witness_ok = witness_ok && any;
    }
    rep.witness_verified = witness_ok;
    return rep;
}

// ---------------------------------------------------------------------------
// Exterior-power rank table.
// ---------------------------------------------------------------------------

struct KoszulTable {
    std::vector<Int> ranks;  // ranks[k] = C(rank_h, k), k = 0..rank_h
    Int alternating_sum;     // sum (-1)^k ranks[k]; zero whenever rank_h > 0
    bool alternating_sum_zero = false;
};

inline KoszulTable koszul_rank_table(int rank_h) {
    if (rank_h < 0) throw std::invalid_argument("koszul_rank_table: negative rank");
    KoszulTable t;
    t.alternating_sum = 0;
    for (int k = 0; k <= rank_h; ++k) {
        Int b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(rank_h),
                     static_cast<unsigned long>(k));
        t.ranks.push_back(b);
        if (k % 2 == 0) t.alternating_sum += b; else t.alternating_sum -= b;
    }
    t.alternating_sum_zero = (sgn(t.alternating_sum) == 0);
    return t;
}

} // namespace qv
