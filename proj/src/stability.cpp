#include "qv/stability.hpp"

#include <limits>

namespace qv {
namespace {

/// Odometer over all beta with 0 <= beta <= alpha componentwise, starting at
/// zero; returns false once wrapped.  First component fastest.
bool next_subvector(std::vector<int>& beta, const DimVec& alpha) {
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (beta[i] < alpha.at(static_cast<int>(i))) {
            ++beta[i];
            return true;
        }
        beta[i] = 0;
    }
    return false;
}

Int subvector_count(const DimVec& alpha) {
    Int n(1);
    for (int i = 0; i < alpha.size(); ++i) n *= alpha.at(i) + 1;
    return n;
}

} // namespace

long long theta_eval(const Theta& th, const DimVec& beta) {
    if (th.size() != beta.size())
        throw std::invalid_argument("theta_eval: vertex set mismatch");
    long long acc = 0;
    for (int i = 0; i < th.size(); ++i) acc += static_cast<long long>(th.at(i)) * beta.at(i);
    return acc;
}

Theta cb_theta(const Theta& theta0, const DimVec& v) {
    if (theta0.size() != v.size())
        throw std::invalid_argument("cb_theta: vertex set mismatch");
    long long d = 0;
    for (int i = 0; i < v.size(); ++i) d += static_cast<long long>(theta0.at(i)) * v.at(i);
    if (d < std::numeric_limits<int>::min() || d > std::numeric_limits<int>::max())
        throw std::overflow_error("cb_theta: framing coefficient overflows");
    Theta th = theta0;
    th.c.push_back(static_cast<int>(-d));
    return th;
}

NondegResult is_nondegenerate(const Theta& th, const DimVec& alpha, unsigned long budget) {
    if (th.size() != alpha.size())
        throw std::invalid_argument("is_nondegenerate: vertex set mismatch");
    if (subvector_count(alpha) > Int(budget))
        throw std::runtime_error("is_nondegenerate: enumeration budget exceeded (" +
                                 subvector_count(alpha).get_str() + " sub-vectors)");
    NondegResult res;
    res.theta_alpha_zero = theta_eval(th, alpha) == 0;
    std::vector<int> beta(static_cast<std::size_t>(alpha.size()), 0);
    while (next_subvector(beta, alpha)) {
        const DimVec bv{std::vector<int>(beta)};
        if (bv == alpha) continue;
        if (theta_eval(th, bv) == 0) {
            res.nondegenerate = false;
            res.witness = bv;
            return res;
        }
    }
    res.nondegenerate = true;
    return res;
}

TValue gtr_theta_eval(const GtrTheta& th, const DimVec& m) {
    if (static_cast<int>(th.coeffs.size()) != m.size())
        throw std::invalid_argument("gtr_theta_eval: vertex set mismatch");
    TValue acc;
    for (int i = 0; i < m.size(); ++i)
        acc += static_cast<long>(m.at(i)) * th.coeffs[static_cast<std::size_t>(i)];
    return acc;
}

GtrTheta build_theta_gtr(const Theta& th, const DimVec& alpha, const GtrQuiver& gtr,
                         unsigned long nondeg_budget) {
    const Quiver& base = gtr.base.graph;
    if (th.size() != base.num_vertices() || alpha.size() != base.num_vertices())
        throw std::invalid_argument("build_theta_gtr: vertex set mismatch");
    const int inf = base.vertex_index(kFramingVertex);
    if (theta_eval(th, alpha) != 0)
        throw std::invalid_argument("build_theta_gtr: theta(alpha) != 0");
    const NondegResult nd = is_nondegenerate(th, alpha, nondeg_budget);
    if (!nd.nondegenerate) {
        std::string w;
        for (int i = 0; i < nd.witness->size(); ++i)
            w += (i ? "," : "") + std::to_string(nd.witness->at(i));
        throw std::invalid_argument("build_theta_gtr: theta is degenerate (witness beta = (" + w +
                                    "))");
    }

    // Exponent of each base vertex: unframed vertices get 1..r in declaration
    // order, the framing vertex gets r+1.
    const int r = base.num_vertices() - 1;
    std::vector<int> expo(static_cast<std::size_t>(base.num_vertices()), 0);
    {
        int next = 1;
        for (int i = 0; i < base.num_vertices(); ++i)
            expo[static_cast<std::size_t>(i)] = (i == inf) ? r + 1 : next++;
    }

    const int nv = gtr.graph.num_vertices();
    GtrTheta out;
    out.lg.assign(static_cast<std::size_t>(nv), TValue());
    out.mid.assign(static_cast<std::size_t>(nv), TValue());
    out.sm.assign(static_cast<std::size_t>(nv), TValue());
    for (int i = 0; i < base.num_vertices(); ++i) {
        const int e = expo[static_cast<std::size_t>(i)];
        out.lg[static_cast<std::size_t>(gtr.vertex_at(i, gtr.b))] += TValue::t_power(e);
        out.lg[static_cast<std::size_t>(gtr.vertex_at(i, gtr.a))] -= TValue::t_power(e);
        out.mid[static_cast<std::size_t>(gtr.vertex_at(i, gtr.a))] += TValue(th.at(i));
        if (i != inf)
            out.sm[static_cast<std::size_t>(gtr.vertex_at(i, gtr.a))] -= TValue::t_power(-e);
        for (int n = gtr.a + 1; n < gtr.b; ++n)
            out.sm[static_cast<std::size_t>(gtr.vertex_at(i, n))] += TValue::t_power(-r - 1);
    }
    out.coeffs.assign(static_cast<std::size_t>(nv), TValue());
    for (int v = 0; v < nv; ++v)
        out.coeffs[static_cast<std::size_t>(v)] = out.lg[static_cast<std::size_t>(v)] +
                                                  out.mid[static_cast<std::size_t>(v)] +
                                                  out.sm[static_cast<std::size_t>(v)];
    const DimVec alpha_gtr = constant_gtr_dimension(alpha, gtr.a, gtr.b);
    {
        GtrTheta lg_only;
        lg_only.coeffs = out.lg;
        if (!gtr_theta_eval(lg_only, alpha_gtr).is_zero())
            throw std::logic_error("build_theta_gtr: large band fails to vanish on alpha_gtr");
    }
    out.C = gtr_theta_eval(GtrTheta{out.coeffs, {}, {}, {}, {}}, alpha_gtr);
    out.coeffs[static_cast<std::size_t>(gtr.vertex_at(inf, gtr.a))] -= out.C;
    if (!gtr_theta_eval(out, alpha_gtr).is_zero())
        throw std::logic_error("build_theta_gtr: functional fails to vanish on alpha_gtr");
    return out;
}

GtrNondegReport check_gtr_nondegenerate(const GtrTheta& th, const GtrQuiver& gtr,
                                        const DimVec& alpha_gtr, unsigned long budget) {
    if (static_cast<int>(th.coeffs.size()) != alpha_gtr.size())
        throw std::invalid_argument("check_gtr_nondegenerate: vertex set mismatch");
    if (subvector_count(alpha_gtr) > Int(budget))
        throw std::runtime_error("check_gtr_nondegenerate: enumeration budget exceeded (" +
                                 subvector_count(alpha_gtr).get_str() + " sub-vectors)");
    const int inf_a = gtr.vertex_at(gtr.base.graph.vertex_index(kFramingVertex), gtr.a);
    GtrNondegReport rep;
    std::vector<int> m(static_cast<std::size_t>(alpha_gtr.size()), 0);
    while (next_subvector(m, alpha_gtr)) {
        const DimVec mv{std::vector<int>(m)};
        if (mv == alpha_gtr) continue;
        if (m[static_cast<std::size_t>(inf_a)] == 0)
            ++rep.checked_frame0;
        else
            ++rep.checked_frame1;
        if (t_sign(gtr_theta_eval(th, mv)) == 0) {
            rep.nondegenerate = false;
            rep.witness = mv;
            return rep;
        }
    }
    rep.nondegenerate = true;
    return rep;
}

std::string stability_str(Stability s) {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::StrictlySemistable: return "strictly-semistable";
        case Stability::Unstable: return "unstable";
    }
    return "?";
}

namespace {

struct ScanBest {
    unsigned long neg = std::numeric_limits<unsigned long>::max();  // lowest index, sign < 0
    unsigned long zero = std::numeric_limits<unsigned long>::max(); // lowest index, sign = 0

    void merge(const ScanBest& o) {
        neg = std::min(neg, o.neg);
        zero = std::min(zero, o.zero);
    }
};

struct FamilyEnum {
    std::vector<std::vector<Subspace<Fp>>> lists; // per vertex, all subspaces of F_p^d
    unsigned long total = 0;

    std::vector<int> decode(unsigned long idx) const {
        std::vector<int> pick(lists.size());
        for (std::size_t i = lists.size(); i-- > 0;) {
            pick[i] = static_cast<int>(idx % lists[i].size());
            idx /= lists[i].size();
        }
        return pick;
    }

    GradedSubspace<Fp> family(const std::vector<int>& pick) const {
        GradedSubspace<Fp> g;
        for (std::size_t i = 0; i < lists.size(); ++i)
            g.part.push_back(lists[i][static_cast<std::size_t>(pick[i])]);
        return g;
    }
};

FamilyEnum build_family_enum(const DimVec& dims, std::uint32_t p, unsigned long budget) {
    FamilyEnum fe;
    Int total(1);
    for (int i = 0; i < dims.size(); ++i) {
        Int per(0);
        for (int k = 0; k <= dims.at(i); ++k) per += gaussian_binomial(dims.at(i), k, p);
        total *= per;
    }
    if (total > Int(budget))
        throw std::runtime_error("is_stable_bruteforce: enumeration budget exceeded (" +
                                 total.get_str() + " subspace families exceed limit " +
                                 std::to_string(budget) + ")");
    for (int i = 0; i < dims.size(); ++i) {
        std::vector<Subspace<Fp>> per;
        for (int k = 0; k <= dims.at(i); ++k) {
            SubspaceEnumerator en(dims.at(i), k, p, budget);
            while (auto s = en.next()) per.push_back(std::move(*s));
        }
        fe.lists.push_back(std::move(per));
    }
    fe.total = total.get_ui();
    return fe;
}

} // namespace

BruteVerdict stability_bruteforce_core(const Quiver& graph, const DimVec& dims,
                                       const std::vector<Mat<Fp>>& mats,
                                       const std::function<int(const DimVec&)>& theta_sign,
                                       std::uint32_t p, unsigned long budget, bool parallel) {
    if (dims.size() != graph.num_vertices())
        throw std::invalid_argument("is_stable_bruteforce: dimension vector size mismatch");
    const FamilyEnum fe = build_family_enum(dims, p, budget);
    const auto maps = rep_maps(graph, mats);
    const int total_dim = dims.total();

    const auto classify = [&](unsigned long idx, ScanBest& best) {
        const std::vector<int> pick = fe.decode(idx);
        const GradedSubspace<Fp> fam = fe.family(pick);
        const int fam_dim = fam.total_dim();
        if (fam_dim == 0 || fam_dim == total_dim) return; // not proper nonzero
        if (!is_closed_under(maps, fam)) return;
        DimVec mv;
        for (const auto& s : fam.part) mv.d.push_back(s.dim());
        const int sign = theta_sign(mv);
        if (sign < 0)
            best.neg = std::min(best.neg, idx);
        else if (sign == 0)
            best.zero = std::min(best.zero, idx);
    };

    ScanBest best;
#ifdef QV_HAVE_OPENMP
    if (parallel) {
        #pragma omp parallel
        {
            ScanBest local;
            #pragma omp for schedule(dynamic, 64) nowait
            for (long long idx = 0; idx < static_cast<long long>(fe.total); ++idx)
                classify(static_cast<unsigned long>(idx), local);
            #pragma omp critical
            best.merge(local);
        }
    } else
#else
    (void)parallel;
#endif
    {
        for (unsigned long idx = 0; idx < fe.total; ++idx) {
            classify(idx, best);
            // A negative witness dominates and indices ascend, so the first
            // negative hit is final.
            if (best.neg != std::numeric_limits<unsigned long>::max()) break;
        }
    }

    BruteVerdict out;
    const unsigned long hit = best.neg != std::numeric_limits<unsigned long>::max() ? best.neg
                              : best.zero != std::numeric_limits<unsigned long>::max()
                                  ? best.zero
                                  : std::numeric_limits<unsigned long>::max();
    if (hit == std::numeric_limits<unsigned long>::max()) {
        out.verdict = Stability::Stable;
        return out;
    }
    out.verdict = best.neg != std::numeric_limits<unsigned long>::max()
                      ? Stability::Unstable
                      : Stability::StrictlySemistable;
    out.witness_sign = out.verdict == Stability::Unstable ? -1 : 0;
    out.witness = fe.family(fe.decode(hit));
    DimVec wd;
    for (const auto& s : out.witness->part) wd.d.push_back(s.dim());
    out.witness_dim = wd;
    return out;
}

BruteVerdict is_stable_bruteforce(const CBRep<Fp>& x, const Theta& th, std::uint32_t p,
                                  unsigned long budget, bool parallel) {
    x.validate();
    if (theta_eval(th, x.dim) != 0)
        throw std::invalid_argument("is_stable_bruteforce: theta(alpha) != 0");
    const auto sign_of = [&th](const DimVec& m) {
        const long long v = theta_eval(th, m);
        return v > 0 ? 1 : v < 0 ? -1 : 0;
    };
    return stability_bruteforce_core(x.quiver->graph, x.dim, x.mats, sign_of, p, budget,
                                     parallel);
}

BruteVerdict is_stable_bruteforce(const GtrRep<Fp>& v, const GtrTheta& th, std::uint32_t p,
                                  unsigned long budget, bool parallel) {
    v.validate();
    if (t_sign(gtr_theta_eval(th, v.dim)) != 0)
        throw std::invalid_argument("is_stable_bruteforce: theta(alpha) != 0");
    const auto sign_of = [&th](const DimVec& m) { return t_sign(gtr_theta_eval(th, m)); };
    return stability_bruteforce_core(v.gtr->graph, v.dim, v.mats, sign_of, p, budget, parallel);
}

TransferReport check_ind_stability_transfer(const CBRep<Fp>& x, const Theta& th,
                                            const GtrTheta& gth,
                                            std::shared_ptr<const GtrQuiver> gtr,
                                            std::uint32_t p, unsigned long budget,
                                            bool parallel) {
    if (!is_in_zero_fiber(x))
        throw std::invalid_argument(
            "check_ind_stability_transfer: point is not in the zero moment fiber");
    TransferReport rep;
    rep.cb = is_stable_bruteforce(x, th, p, budget, parallel);

    const GtrRep<Fp> module = ind(identity_group<Fp>(*gtr, x.dim), x, gtr);
    rep.gtr = is_stable_bruteforce(module, gth, p, budget, parallel);

    rep.agree = rep.cb.verdict == rep.gtr.verdict;
    const auto maps = rep_maps(module.gtr->graph, module.mats);
    if (rep.gtr.verdict == Stability::Stable) {
        // Lowest slice generates: grow from full spaces at slice a.
        GradedSubspace<Fp> seed = GradedSubspace<Fp>::zero(module.dim.d);
        for (int i = 0; i < gtr->base.graph.num_vertices(); ++i) {
            const int v = gtr->vertex_at(i, gtr->a);
            seed.part[static_cast<std::size_t>(v)] = Subspace<Fp>::full(module.dim.at(v));
        }
        rep.degree_a_generated = closure_generated_by(maps, seed).is_full();
        rep.ok = rep.agree && rep.degree_a_generated;
    } else if (rep.cb.verdict == Stability::Unstable && rep.cb.witness) {
        // Constant extension of the framed witness across all slices.
        GradedSubspace<Fp> ext;
        for (int n = gtr->a; n <= gtr->b; ++n)
            for (int i = 0; i < gtr->base.graph.num_vertices(); ++i)
                ext.part.push_back(rep.cb.witness->part[static_cast<std::size_t>(i)]);
        DimVec ext_dim;
        for (const auto& s : ext.part) ext_dim.d.push_back(s.dim());
        rep.witness_transfers = is_closed_under(maps, ext) &&
                                t_sign(gtr_theta_eval(gth, ext_dim)) < 0;
        rep.ok = rep.agree && rep.witness_transfers;
    } else {
        rep.ok = rep.agree;
    }
    return rep;
}

} // namespace qv
