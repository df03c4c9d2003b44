#pragma once

// Matrix representations of doubled (framed) quivers and of graded triples:
// the moment map, exact sampling of its zero fiber, the slice-shift
// constructions ind / ind_inverse, relation checkers, graded intertwiner
// (hom) spaces, and base change by invertible vertex-wise group elements.
//
// Shape convention: the matrix of an arrow h is dim(tgt) x dim(src), acting
// on column vectors by left multiplication.

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qv/quiver.hpp"
#include "qv/subspace.hpp"

namespace qv {

// ---------------------------------------------------------------------------
// Representations of a doubled quiver (points of the cotangent space).

template <class K>
struct CBRep {
    std::shared_ptr<const DoubledQuiver> quiver;
    DimVec dim;              // aligned with quiver->graph vertex order
    std::vector<Mat<K>> mats; // aligned with quiver->graph arrow order

    const Mat<K>& at(int arrow) const { return mats[static_cast<std::size_t>(arrow)]; }
    Mat<K>& at(int arrow) { return mats[static_cast<std::size_t>(arrow)]; }

    void validate() const {
        const Quiver& g = quiver->graph;
        if (dim.size() != g.num_vertices())
            throw std::invalid_argument("representation: dimension vector size mismatch");
        if (static_cast<int>(mats.size()) != g.num_arrows())
            throw std::invalid_argument("representation: arrow matrix count mismatch");
        for (int h = 0; h < g.num_arrows(); ++h) {
            const Arrow& ar = g.arrow(h);
            if (at(h).rows() != dim.at(ar.tgt) || at(h).cols() != dim.at(ar.src))
                throw std::invalid_argument("representation: shape mismatch at arrow '" + ar.id +
                                            "'");
        }
    }
};

template <class K>
CBRep<K> zero_cb_rep(std::shared_ptr<const DoubledQuiver> quiver, DimVec dim) {
    CBRep<K> x;
    x.quiver = std::move(quiver);
    x.dim = std::move(dim);
    const Quiver& g = x.quiver->graph;
    for (int h = 0; h < g.num_arrows(); ++h) {
        const Arrow& ar = g.arrow(h);
        x.mats.emplace_back(x.dim.at(ar.tgt), x.dim.at(ar.src));
    }
    x.validate();
    return x;
}

template <class K>
CBRep<K> random_cb_rep(std::shared_ptr<const DoubledQuiver> quiver, DimVec dim, Rng& rng,
                       const FieldCtx<K>& ctx) {
    CBRep<K> x = zero_cb_rep<K>(std::move(quiver), std::move(dim));
    for (auto& m : x.mats) m = random_mat<K>(m.rows(), m.cols(), rng, ctx);
    return x;
}

/// Per-vertex moment map blocks: at vertex k, Σ_{t(h)=k} eps(h)·x_h·x_{bar h}.
/// The point lies in the zero fiber exactly when every block vanishes.
template <class K>
std::vector<Mat<K>> moment_map(const CBRep<K>& x) {
    x.validate();
    const DoubledQuiver& d = *x.quiver;
    std::vector<Mat<K>> mu;
    for (int k = 0; k < d.graph.num_vertices(); ++k) mu.emplace_back(x.dim.at(k), x.dim.at(k));
    for (int h = 0; h < d.graph.num_arrows(); ++h) {
        const int k = d.graph.arrow(h).tgt;
        const Mat<K> term = x.at(h) * x.at(d.bar[static_cast<std::size_t>(h)]);
        auto& acc = mu[static_cast<std::size_t>(k)];
        acc = d.eps[static_cast<std::size_t>(h)] > 0 ? acc + term : acc - term;
    }
    return mu;
}

template <class K>
bool is_in_zero_fiber(const CBRep<K>& x) {
    for (const Mat<K>& m : moment_map(x))
        if (!m.is_zero_mat()) return false;
    return true;
}

/// Draws an exact point of the zero moment fiber: all forward-direction
/// matrices (and a random subset of the reversed ones) are sampled freely,
/// the remaining reversed matrices are solved for — the moment equation is
/// linear in them.  Inconsistent draws are retried with fresh randomness.
template <class K>
CBRep<K> sample_moment_fiber(std::shared_ptr<const DoubledQuiver> quiver, const DimVec& dim,
                             std::uint64_t seed, const FieldCtx<K>& ctx, int max_retries = 64) {
    const Rng base_rng(seed);
    const DoubledQuiver& d = *quiver;
    const int m = d.num_original;
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng = base_rng.child(static_cast<std::uint64_t>(attempt));
        CBRep<K> x = zero_cb_rep<K>(quiver, dim);
        for (int o = 0; o < m; ++o)
            x.at(o) = random_mat<K>(x.at(o).rows(), x.at(o).cols(), rng, ctx);
        std::vector<bool> solved(static_cast<std::size_t>(m), false);
        for (int o = 0; o < m; ++o) {
            if (rng.coin()) {
                solved[static_cast<std::size_t>(o)] = true; // leave the bar as an unknown
            } else {
                Mat<K>& bar = x.at(m + o);
                bar = random_mat<K>(bar.rows(), bar.cols(), rng, ctx);
            }
        }

        BlockSystem<K> sys;
        std::vector<int> eq_of_vertex, unknown_of_bar(static_cast<std::size_t>(m), -1);
        for (int k = 0; k < d.graph.num_vertices(); ++k)
            eq_of_vertex.push_back(sys.add_equation(dim.at(k), dim.at(k)));
        for (int o = 0; o < m; ++o)
            if (solved[static_cast<std::size_t>(o)])
                unknown_of_bar[static_cast<std::size_t>(o)] =
                    sys.add_unknown(x.at(m + o).rows(), x.at(m + o).cols());

        for (int o = 0; o < m; ++o) {
            const Arrow& ar = d.graph.arrow(o);
            const int eq_t = eq_of_vertex[static_cast<std::size_t>(ar.tgt)];
            const int eq_s = eq_of_vertex[static_cast<std::size_t>(ar.src)];
            if (solved[static_cast<std::size_t>(o)]) {
                const int u = unknown_of_bar[static_cast<std::size_t>(o)];
                sys.add_term(eq_t, u, x.at(o), Mat<K>::identity(dim.at(ar.tgt)), +1);
                sys.add_term(eq_s, u, Mat<K>::identity(dim.at(ar.src)), x.at(o), -1);
            } else {
                sys.add_const(eq_t, x.at(o) * x.at(m + o), +1);
                sys.add_const(eq_s, x.at(m + o) * x.at(o), -1);
            }
        }

        auto [a_sys, rhs] = sys.assemble();
        const auto sol = solve<K>(a_sys, rhs, [&](int) { return ctx.random(rng); });
        if (!sol) continue;
        const std::vector<Mat<K>> bars = sys.unpack(*sol);
        for (int o = 0; o < m; ++o)
            if (solved[static_cast<std::size_t>(o)])
                x.at(m + o) = bars[static_cast<std::size_t>(
                    std::count(solved.begin(), solved.begin() + o, true))];
        if (!is_in_zero_fiber(x))
            throw std::logic_error("sample_moment_fiber: solved point fails the moment equation");
        return x;
    }
    throw std::runtime_error("fiber sampling failed after " + std::to_string(max_retries) +
                             " attempts");
}

// ---------------------------------------------------------------------------
// Representations of a graded triple.

template <class K>
struct GtrRep {
    std::shared_ptr<const GtrQuiver> gtr;
    DimVec dim;               // aligned with gtr->graph vertex order
    std::vector<Mat<K>> mats; // aligned with gtr->graph arrow order

    const Mat<K>& a(int h, int n) const { return mats[static_cast<std::size_t>(gtr->a_arrow(h, n))]; }
    Mat<K>& a(int h, int n) { return mats[static_cast<std::size_t>(gtr->a_arrow(h, n))]; }
    const Mat<K>& e(int i, int n) const { return mats[static_cast<std::size_t>(gtr->e_arrow(i, n))]; }
    Mat<K>& e(int i, int n) { return mats[static_cast<std::size_t>(gtr->e_arrow(i, n))]; }

    void validate() const {
        const Quiver& g = gtr->graph;
        if (dim.size() != g.num_vertices())
            throw std::invalid_argument("graded representation: dimension vector size mismatch");
        if (static_cast<int>(mats.size()) != g.num_arrows())
            throw std::invalid_argument("graded representation: arrow matrix count mismatch");
        for (int h = 0; h < g.num_arrows(); ++h) {
            const Arrow& ar = g.arrow(h);
            const Mat<K>& m = mats[static_cast<std::size_t>(h)];
            if (m.rows() != dim.at(ar.tgt) || m.cols() != dim.at(ar.src))
                throw std::invalid_argument("graded representation: shape mismatch at arrow '" +
                                            ar.id + "'");
        }
    }
};

template <class K>
GtrRep<K> zero_gtr_rep(std::shared_ptr<const GtrQuiver> gtr, DimVec dim) {
    GtrRep<K> v;
    v.gtr = std::move(gtr);
    v.dim = std::move(dim);
    const Quiver& g = v.gtr->graph;
    for (int h = 0; h < g.num_arrows(); ++h) {
        const Arrow& ar = g.arrow(h);
        v.mats.emplace_back(v.dim.at(ar.tgt), v.dim.at(ar.src));
    }
    v.validate();
    return v;
}

template <class K>
GtrRep<K> random_gtr_rep(std::shared_ptr<const GtrQuiver> gtr, DimVec dim, Rng& rng,
                         const FieldCtx<K>& ctx) {
    GtrRep<K> v = zero_gtr_rep<K>(std::move(gtr), std::move(dim));
    for (auto& m : v.mats) m = random_mat<K>(m.rows(), m.cols(), rng, ctx);
    return v;
}

struct ARelationViolation {
    int relation = 0;    // 1 = preprojective composite, 2 = shift commutation
    std::string where;   // base vertex id (relation 1) or base arrow id (relation 2)
    int slice = 0;       // the n of the lower factor
    std::string details; // rendering of the offending matrix
};

/// Checks the two families of module relations on a graded triple:
///   (1) per base vertex i and n in [a, b-2]:
///       Σ_{s(h)=i} eps(h) · a_{bar h, n+1} · a_{h,n} = 0,
///   (2) per doubled arrow h and n in [a, b-2]:
///       e_{t(h),n+1} · a_{h,n} = a_{h,n+1} · e_{s(h),n}.
/// Returns every violated instance; empty means the relations hold.
template <class K>
std::vector<ARelationViolation> check_A_relations(const GtrRep<K>& v) {
    v.validate();
    const GtrQuiver& g = *v.gtr;
    const DoubledQuiver& d = g.base;
    std::vector<ARelationViolation> out;
    for (int n = g.a; n <= g.b - 2; ++n) {
        for (int i = 0; i < d.graph.num_vertices(); ++i) {
            Mat<K> acc(v.dim.at(g.vertex_at(i, n + 2)), v.dim.at(g.vertex_at(i, n)));
            for (int h = 0; h < d.graph.num_arrows(); ++h) {
                if (d.graph.arrow(h).src != i) continue;
                const Mat<K> term = v.a(d.bar[static_cast<std::size_t>(h)], n + 1) * v.a(h, n);
                acc = d.eps[static_cast<std::size_t>(h)] > 0 ? acc + term : acc - term;
            }
            if (!acc.is_zero_mat())
                out.push_back({1, d.graph.vertex(i), n, mat_str(acc)});
        }
        for (int h = 0; h < d.graph.num_arrows(); ++h) {
            const Arrow& ar = d.graph.arrow(h);
            const Mat<K> lhs = v.e(ar.tgt, n + 1) * v.a(h, n);
            const Mat<K> rhs = v.a(h, n + 1) * v.e(ar.src, n);
            if (lhs != rhs) out.push_back({2, ar.id, n, mat_str(lhs - rhs)});
        }
    }
    return out;
}

/// Slice-shift construction: from a zero-fiber point x and invertible group
/// elements g_{(i,n)} (one per graded vertex) build the graded module with
///   a_{h,n} = g_{t(h),n+1} · x_h · g_{s(h),n}^{-1},
///   e_{i,n} = g_{i,n+1} · g_{i,n}^{-1}.
/// The output always satisfies the module relations and every shift map is
/// invertible.
template <class K>
GtrRep<K> ind(const std::vector<Mat<K>>& g, const CBRep<K>& x,
              std::shared_ptr<const GtrQuiver> gtr) {
    if (!same_quiver(x.quiver->graph, gtr->base.graph))
        throw std::invalid_argument("ind: representation and graded triple disagree on the base");
    if (!is_in_zero_fiber(x))
        throw std::invalid_argument("ind: point is not in the zero moment fiber");
    const GtrQuiver& gq = *gtr;
    if (static_cast<int>(g.size()) != gq.graph.num_vertices())
        throw std::invalid_argument("ind: need one group element per graded vertex");
    std::vector<Mat<K>> ginv;
    for (int v = 0; v < gq.graph.num_vertices(); ++v) {
        const Mat<K>& gm = g[static_cast<std::size_t>(v)];
        const int base_vertex = v % gq.base.graph.num_vertices();
        if (gm.rows() != x.dim.at(base_vertex) || gm.cols() != x.dim.at(base_vertex))
            throw std::invalid_argument("ind: group element at " + gq.graph.vertex(v) +
                                        " has the wrong shape");
        if (!is_invertible(gm))
            throw std::invalid_argument("ind: group element at " + gq.graph.vertex(v) +
                                        " is singular");
        ginv.push_back(inverse(gm));
    }
    GtrRep<K> out = zero_gtr_rep<K>(gtr, constant_gtr_dimension(x.dim, gq.a, gq.b));
    for (int n = gq.a; n < gq.b; ++n) {
        for (int h = 0; h < gq.base.graph.num_arrows(); ++h) {
            const Arrow& ar = gq.base.graph.arrow(h);
            out.a(h, n) = g[static_cast<std::size_t>(gq.vertex_at(ar.tgt, n + 1))] * x.at(h) *
                          ginv[static_cast<std::size_t>(gq.vertex_at(ar.src, n))];
        }
        for (int i = 0; i < gq.base.graph.num_vertices(); ++i)
            out.e(i, n) = g[static_cast<std::size_t>(gq.vertex_at(i, n + 1))] *
                          ginv[static_cast<std::size_t>(gq.vertex_at(i, n))];
    }
    return out;
}

/// Identity group family for a graded triple over dimension vector alpha.
template <class K>
std::vector<Mat<K>> identity_group(const GtrQuiver& gtr, const DimVec& alpha) {
    std::vector<Mat<K>> g;
    for (int v = 0; v < gtr.graph.num_vertices(); ++v)
        g.push_back(Mat<K>::identity(alpha.at(v % gtr.base.graph.num_vertices())));
    return g;
}

/// Inverts the slice-shift construction at an interior point: requires every
/// shift map invertible, and returns the normalized section g_{i,a} = Id,
/// g_{i,n} = e_{i,n-1} ··· e_{i,a} together with the base point.  Points with
/// a singular shift map lie outside the construction's image.
template <class K>
std::pair<std::vector<Mat<K>>, CBRep<K>> ind_inverse(const GtrRep<K>& v) {
    v.validate();
    const GtrQuiver& gq = *v.gtr;
    const int nv = gq.base.graph.num_vertices();
    for (int n = gq.a; n < gq.b; ++n)
        for (int i = 0; i < nv; ++i)
            if (!is_invertible(v.e(i, n)))
                throw std::domain_error("ind_inverse: boundary point (shift map e:" +
                                        gq.base.graph.vertex(i) + "@" + std::to_string(n) +
                                        " is singular)");
    std::vector<Mat<K>> g(static_cast<std::size_t>(gq.graph.num_vertices()));
    for (int i = 0; i < nv; ++i) {
        g[static_cast<std::size_t>(gq.vertex_at(i, gq.a))] =
            Mat<K>::identity(v.dim.at(gq.vertex_at(i, gq.a)));
        for (int n = gq.a + 1; n <= gq.b; ++n)
            g[static_cast<std::size_t>(gq.vertex_at(i, n))] =
                v.e(i, n - 1) * g[static_cast<std::size_t>(gq.vertex_at(i, n - 1))];
    }
    CBRep<K> x;
    x.quiver = std::shared_ptr<const DoubledQuiver>(v.gtr, &v.gtr->base);
    for (int i = 0; i < nv; ++i) x.dim.d.push_back(v.dim.at(gq.vertex_at(i, gq.a)));
    for (int h = 0; h < gq.base.graph.num_arrows(); ++h) {
        const Arrow& ar = gq.base.graph.arrow(h);
        x.mats.push_back(inverse(g[static_cast<std::size_t>(gq.vertex_at(ar.tgt, gq.a + 1))]) *
                         v.a(h, gq.a) *
                         g[static_cast<std::size_t>(gq.vertex_at(ar.src, gq.a))]);
    }
    x.validate();
    return {std::move(g), std::move(x)};
}

// ---------------------------------------------------------------------------
// Graded intertwiners.

template <class K>
struct HomBasis {
    int dimension = 0;
    std::vector<std::vector<Mat<K>>> basis; // each element: one block per graded vertex
};

/// Solves the full graded intertwiner system {Φ_t · M^V = M^W · Φ_s over all
/// arrows of the graded triple}.  Both inputs must satisfy the module
/// relations (the relations constrain the objects, not the morphism system,
/// but hom spaces of non-modules are not meaningful here).
template <class K>
HomBasis<K> hom_A(const GtrRep<K>& v, const GtrRep<K>& w) {
    if (!same_quiver(v.gtr->graph, w.gtr->graph))
        throw std::invalid_argument("hom_A: representations live on different graded triples");
    if (!check_A_relations(v).empty())
        throw std::invalid_argument("hom_A: relation check failure on the source");
    if (!check_A_relations(w).empty())
        throw std::invalid_argument("hom_A: relation check failure on the target");
    const Quiver& g = v.gtr->graph;
    BlockSystem<K> sys;
    std::vector<int> phi;
    for (int i = 0; i < g.num_vertices(); ++i)
        phi.push_back(sys.add_unknown(w.dim.at(i), v.dim.at(i)));
    for (int h = 0; h < g.num_arrows(); ++h) {
        const Arrow& ar = g.arrow(h);
        const int eq = sys.add_equation(w.dim.at(ar.tgt), v.dim.at(ar.src));
        sys.add_term(eq, phi[static_cast<std::size_t>(ar.tgt)],
                     Mat<K>::identity(w.dim.at(ar.tgt)), v.mats[static_cast<std::size_t>(h)], +1);
        sys.add_term(eq, phi[static_cast<std::size_t>(ar.src)], w.mats[static_cast<std::size_t>(h)],
                     Mat<K>::identity(v.dim.at(ar.src)), -1);
    }
    const Mat<K> a_sys = sys.assemble().first;
    const Mat<K> ker = kernel_basis(a_sys);
    HomBasis<K> out;
    out.dimension = ker.rows();
    for (int r = 0; r < ker.rows(); ++r)
        out.basis.push_back(sys.unpack(transpose(block(ker, r, 0, 1, ker.cols()))));
    return out;
}

// ---------------------------------------------------------------------------
// Base change.

/// Acts by x_h -> g_{t(h)} · x_h · g_{s(h)}^{-1} on every arrow.
template <class K>
std::vector<Mat<K>> act_on_arrows(const Quiver& g, const std::vector<Mat<K>>& group,
                                  const std::vector<Mat<K>>& mats) {
    std::vector<Mat<K>> ginv;
    for (const Mat<K>& gm : group) ginv.push_back(inverse(gm));
    std::vector<Mat<K>> out;
    for (int h = 0; h < g.num_arrows(); ++h) {
        const Arrow& ar = g.arrow(h);
        out.push_back(group[static_cast<std::size_t>(ar.tgt)] *
                      mats[static_cast<std::size_t>(h)] *
                      ginv[static_cast<std::size_t>(ar.src)]);
    }
    return out;
}

template <class K>
CBRep<K> act(const std::vector<Mat<K>>& group, const CBRep<K>& x) {
    CBRep<K> y = x;
    y.mats = act_on_arrows(x.quiver->graph, group, x.mats);
    return y;
}

template <class K>
GtrRep<K> act(const std::vector<Mat<K>>& group, const GtrRep<K>& v) {
    GtrRep<K> w = v;
    w.mats = act_on_arrows(v.gtr->graph, group, v.mats);
    return w;
}

/// Random invertible group family, one block per vertex of `g`.
template <class K>
std::vector<Mat<K>> random_group(const Quiver& g, const DimVec& dim, Rng& rng,
                                 const FieldCtx<K>& ctx) {
    std::vector<Mat<K>> out;
    for (int i = 0; i < g.num_vertices(); ++i)
        out.push_back(dim.at(i) == 0 ? Mat<K>(0, 0) : random_invertible<K>(dim.at(i), rng, ctx));
    return out;
}

// ---------------------------------------------------------------------------
// Deterministic text form (field tag, dims, per-arrow matrices row-major).

template <class K>
std::string rep_text(const Quiver& g, const DimVec& dim, const std::vector<Mat<K>>& mats,
                     const std::string& field_tag) {
    std::string s = "field " + field_tag + "\ndims";
    for (int i = 0; i < dim.size(); ++i) s += " " + std::to_string(dim.at(i));
    s += "\n";
    for (int h = 0; h < g.num_arrows(); ++h) {
        const Mat<K>& m = mats[static_cast<std::size_t>(h)];
        s += "arrow " + g.arrow(h).id + " " + m.shape_str() + "\n";
        for (int i = 0; i < m.rows(); ++i) {
            for (int j = 0; j < m.cols(); ++j) s += (j ? " " : "") + scalar_str(m.at(i, j));
            s += "\n";
        }
    }
    return s;
}

template <class K>
std::string rep_text(const CBRep<K>& x, const std::string& field_tag) {
    return "rep cb\n" + rep_text(x.quiver->graph, x.dim, x.mats, field_tag);
}

template <class K>
std::string rep_text(const GtrRep<K>& v, const std::string& field_tag) {
    return "rep gtr\n" + rep_text(v.gtr->graph, v.dim, v.mats, field_tag);
}

} // namespace qv
