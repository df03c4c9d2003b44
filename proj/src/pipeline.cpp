#include "qv/pipeline.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <type_traits>

#include "qv/chern.hpp"
#include "qv/kirwan.hpp"
#include "qv/rep.hpp"
#include "qv/stability.hpp"
#include "qv/subspace.hpp"

namespace qv {

const std::vector<std::string> kPipelineStages = {
    "describe", "nondegen", "theta_gtr", "moment", "stability", "complex", "chern"};

namespace {

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string join_dims(const DimVec& d) { return join_ints(d.d); }

struct Selection {
    bool all = true;
    std::set<std::string> chosen;
    bool want(const std::string& stage) const { return all || chosen.count(stage) != 0; }
};

Selection make_selection(const JobSpec& job) {
    Selection sel;
    sel.all = job.stages.empty();
    for (const std::string& s : job.stages) {
        if (std::find(kPipelineStages.begin(), kPipelineStages.end(), s) ==
            kPipelineStages.end()) {
            std::string known;
            for (const std::string& k : kPipelineStages) known += (known.empty() ? "" : ", ") + k;
            throw std::invalid_argument("unknown stage '" + s + "' (known: " + known + ")");
        }
        sel.chosen.insert(s);
    }
    return sel;
}

/// Independent sub-seed for item `index`; pure function of (root, index).
std::uint64_t sub_seed(std::uint64_t root, std::uint64_t index) {
    Rng r = Rng(root).child(index);
    return r.next_u64();
}

// Disjoint index ranges so no two consumers ever share a child stream.
constexpr std::uint64_t kSeedSampleX = std::uint64_t{1} << 32;
constexpr std::uint64_t kSeedSampleY = std::uint64_t{2} << 32;
constexpr std::uint64_t kSeedGroupV = std::uint64_t{3} << 32;
constexpr std::uint64_t kSeedGroupW = std::uint64_t{4} << 32;
constexpr std::uint64_t kSeedGroupOrbitW = std::uint64_t{5} << 32;
constexpr std::uint64_t kSeedGroupOrbitG = std::uint64_t{6} << 32;
constexpr std::uint64_t kSeedProbe = std::uint64_t{7} << 32;

/// +1: strictly positive on every unframed vertex, -1: strictly negative,
/// 0: mixed or vanishing somewhere (no fast-path chamber).
int chamber_sign(const Theta& th, const Quiver& framed) {
    const int inf = framed.vertex_index(kFramingVertex);
    int pos = 0, neg = 0, zero = 0;
    for (int i = 0; i < framed.num_vertices(); ++i) {
        if (i == inf) continue;
        (th.at(i) > 0 ? pos : th.at(i) < 0 ? neg : zero)++;
    }
    if (zero == 0 && neg == 0) return +1;
    if (zero == 0 && pos == 0) return -1;
    return 0;
}

bool is_budget_error(const std::exception& e) {
    return std::string(e.what()).find("budget exceeded") != std::string::npos;
}

void emit_describe(const QuiverFile& qf, const Quiver& framed, const DimVec& alpha,
                   const Theta& th, const DoubledQuiver& dq, const GtrQuiver& gtr,
                   const DimVec& alpha_gtr, const JobSpec& job, Report& rep) {
    rep.set("describe.field", job.field.str());
    rep.set("describe.seed", std::to_string(job.seed));
    rep.set("describe.window", "[" + std::to_string(job.window_a) + "," +
                                   std::to_string(job.window_b) + "]");
    std::string names;
    for (int i = 0; i < qf.q0.num_vertices(); ++i) names += (i ? "," : "") + qf.q0.vertex(i);
    rep.set("describe.base.vertex_list", names);
    rep.set("describe.base.vertices", qf.q0.num_vertices());
    rep.set("describe.base.arrows", qf.q0.num_arrows());
    rep.set("describe.v", join_dims(qf.v));
    rep.set("describe.w", join_dims(qf.w));
    rep.set("describe.theta0", join_ints(qf.theta0.c));
    rep.set("describe.framed.vertices", framed.num_vertices());
    rep.set("describe.framed.arrows", framed.num_arrows());
    rep.set("describe.alpha", join_dims(alpha));
    rep.set("describe.theta", join_ints(th.c));
    rep.set("describe.double.arrows", dq.graph.num_arrows());
    rep.set("describe.gtr.vertices", gtr.graph.num_vertices());
    rep.set("describe.gtr.arrows", gtr.graph.num_arrows());
    rep.set("describe.alpha_gtr", join_dims(alpha_gtr));
    rep.set("describe.expected_rank", expected_rank(framed, alpha));
}

void emit_theta_gtr(const Theta& th, const DimVec& alpha, const GtrQuiver& gtr,
                    const DimVec& alpha_gtr, unsigned long budget, Report& rep) {
    GtrTheta gth;
    try {
        gth = build_theta_gtr(th, alpha, gtr, budget);
    } catch (const std::runtime_error& e) {
        if (!is_budget_error(e)) throw;
        rep.set("theta_gtr.status", "budget_exceeded");
        return;
    }
    rep.set("theta_gtr.C", gth.C.str());
    for (int i = 0; i < gtr.graph.num_vertices(); ++i)
        rep.set("theta_gtr.coeff." + pad_index(i),
                gtr.graph.vertex(i) + " : " + gth.coeffs[static_cast<std::size_t>(i)].str());
    try {
        const GtrNondegReport nd = check_gtr_nondegenerate(gth, gtr, alpha_gtr, budget);
        rep.set("theta_gtr.checked",
                static_cast<long long>(nd.checked_frame0 + nd.checked_frame1));
        if (nd.witness) rep.set("theta_gtr.witness", join_dims(*nd.witness));
        rep.check("theta_gtr.nondeg", nd.nondegenerate);
    } catch (const std::runtime_error& e) {
        if (!is_budget_error(e)) throw;
        rep.set("theta_gtr.nondeg_status", "budget_exceeded");
    }
}

void emit_chern(const DoubledQuiver& dq, const Quiver& framed, const DimVec& alpha,
                Report& rep) {
    const int d = expected_rank(framed, alpha);
    if (d < 0) {
        rep.set("chern.status", "negative_expected_rank");
        return;
    }
    rep.set("chern.trunc", d);
    const std::vector<RTerm> terms = standard_complex_terms(dq, alpha);
    rep.set("chern.terms", static_cast<long long>(terms.size()));
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const RTerm& r = terms[t];
        rep.set("chern.term." + pad_index(static_cast<long long>(t)),
                "deg " + std::to_string(r.degree) + ": " + r.left.name + " (rank " +
                    std::to_string(r.left.rank) + ") x " + r.right.name + " (rank " +
                    std::to_string(r.right.rank) + ")");
    }
    const GradedClass cls = chern_of_complex(terms, d);
    rep.check("chern.inverse_ok", whitney(cls, segre_inverse(cls)) == GradedClass::unit(d));
    const GradedClass top = top_class(cls, d);
    rep.set("chern.top", class_str(top));
    const auto pieces = kunneth_decompose(top);
    rep.set("chern.kunneth_count", static_cast<long long>(pieces.size()));
    GradedClass resum(d);
    for (std::size_t t = 0; t < pieces.size(); ++t) {
        rep.set("chern.left." + pad_index(static_cast<long long>(t)),
                class_str(pieces[t].first));
        resum = resum + pieces[t].first * pieces[t].second;
    }
    rep.check("chern.kunneth_ok", resum == top);
}

template <class K>
void run_field_stages(const JobSpec& job, const Selection& sel, bool theta_usable,
                      std::shared_ptr<const DoubledQuiver> dq,
                      const Quiver& framed, const DimVec& alpha, const Theta& th,
                      std::shared_ptr<const GtrQuiver> gtr, const DimVec& alpha_gtr,
                      const FieldCtx<K>& ctx, Report& rep) {
    const bool want_moment = sel.want("moment");
    const bool want_stab = sel.want("stability") && theta_usable;
    const bool want_cx = sel.want("complex") && theta_usable;
    if (!(want_moment || want_stab || want_cx)) return;

    const int n = job.samples;
    std::vector<CBRep<K>> xs, ys;
    xs.reserve(static_cast<std::size_t>(n));
    ys.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        xs.push_back(sample_moment_fiber<K>(dq, alpha, sub_seed(job.seed, kSeedSampleX + u), ctx));
        ys.push_back(sample_moment_fiber<K>(dq, alpha, sub_seed(job.seed, kSeedSampleY + u), ctx));
    }

    if (want_moment) {
        int exact = 0;
        for (const CBRep<K>& x : xs) exact += is_in_zero_fiber(x) ? 1 : 0;
        for (const CBRep<K>& y : ys) exact += is_in_zero_fiber(y) ? 1 : 0;
        rep.set("moment.samples", 2LL * n);
        rep.set("moment.exact", exact);
        rep.check("moment.ok", exact == 2 * n);
    }
    if (!(want_stab || want_cx)) return;

    // Verdicts: the fast invariant-subspace path when the chamber supports
    // it, otherwise the enumeration oracle (finite fields only).
    const int chamber = chamber_sign(th, framed);
    const bool fast_ok = chamber != 0;
    std::vector<std::optional<Stability>> vx(static_cast<std::size_t>(n)),
        vy(static_cast<std::size_t>(n));
    std::optional<std::string> verdict_note;
    const auto classify = [&](const CBRep<K>& x) -> std::optional<Stability> {
        if (fast_ok) return is_stable_fast(x, th);
        if constexpr (std::is_same_v<K, Fp>) {
            try {
                return is_stable_bruteforce(x, th, job.field.p, job.budget, true).verdict;
            } catch (const std::runtime_error& e) {
                if (!is_budget_error(e)) throw;
                verdict_note = "budget_exceeded";
                return std::nullopt;
            }
        } else {
            verdict_note = "mixed_chamber_needs_finite_field";
            return std::nullopt;
        }
    };
    for (int i = 0; i < n; ++i) {
        vx[static_cast<std::size_t>(i)] = classify(xs[static_cast<std::size_t>(i)]);
        vy[static_cast<std::size_t>(i)] = classify(ys[static_cast<std::size_t>(i)]);
    }

    if (want_stab) {
        rep.set("stability.chamber",
                chamber > 0 ? "positive" : chamber < 0 ? "negative" : "mixed");
        if (verdict_note) rep.set("stability.status", *verdict_note);
        int stable = 0;
        for (int i = 0; i < n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const auto name = [&](const std::optional<Stability>& v) {
                return v ? stability_str(*v) : std::string("unknown");
            };
            rep.set("stability.sample.x." + pad_index(i), name(vx[idx]));
            rep.set("stability.sample.y." + pad_index(i), name(vy[idx]));
            stable += (vx[idx] == Stability::Stable) + (vy[idx] == Stability::Stable);
        }
        rep.set("stability.stable", stable);
        if constexpr (std::is_same_v<K, Fp>) {
            if (fast_ok) {
                // Agreement between the production path and the enumeration
                // oracle on every sampled point.
                int checked = 0, agree = 0;
                bool over_budget = false;
                for (int i = 0; i < n && !over_budget; ++i) {
                    for (const CBRep<K>* x :
                         {&xs[static_cast<std::size_t>(i)], &ys[static_cast<std::size_t>(i)]}) {
                        try {
                            const BruteVerdict bv =
                                is_stable_bruteforce(*x, th, job.field.p, job.budget, true);
                            ++checked;
                            agree += bv.verdict == is_stable_fast(*x, th) ? 1 : 0;
                        } catch (const std::runtime_error& e) {
                            if (!is_budget_error(e)) throw;
                            over_budget = true;
                            break;
                        }
                    }
                }
                if (over_budget) rep.set("stability.brute.status", "budget_exceeded");
                rep.set("stability.brute.checked", checked);
                rep.set("stability.brute.agree", agree);
                rep.check("stability.brute.ok", agree == checked);
            }
        } else {
            rep.set("stability.brute.status", "enumeration_needs_finite_field");
        }
    }
    if (!want_cx) return;

    const int er = expected_rank(framed, alpha);
    int pairs = 0, stable_pairs = 0, orbit_pairs = 0;
    for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const auto u = static_cast<std::uint64_t>(i);
        const std::string pre = "complex.pair." + pad_index(i);
        Rng rv(sub_seed(job.seed, kSeedGroupV + u));
        Rng rw(sub_seed(job.seed, kSeedGroupW + u));
        const auto gv = random_group<K>(gtr->graph, alpha_gtr, rv, ctx);
        const auto gw = random_group<K>(gtr->graph, alpha_gtr, rw, ctx);
        const GtrRep<K> V = ind(gv, xs[idx], gtr);
        const GtrRep<K> W = ind(gw, ys[idx], gtr);
        const TautComplexFiber<K> f = build_fiber(V, W);
        const FiberReport<K> fr = verify_fiber(f);
        ++pairs;
        rep.check(pre + ".composite", fr.composite_zero);
        rep.check(pre + ".relations", fr.relations_ok);
        rep.check(pre + ".hom_cross", fr.hom_cross_check);
        rep.set(pre + ".hom_vw", fr.hom_vw);
        rep.set(pre + ".hom_wv", fr.hom_wv);

        const bool both_stable = vx[idx] == Stability::Stable && vy[idx] == Stability::Stable;
        if (both_stable) {
            ++stable_pairs;
            rep.check(pre + ".d0_injective", fr.rank_d0 == f.d0.cols());
            rep.check(pre + ".d1_surjective", fr.rank_d1 == f.d1.rows());
            rep.set(pre + ".rank_h0", fr.rank_H0);
            rep.set(pre + ".rank_h0_expected", er);
            rep.check(pre + ".rank_h0_ok", fr.rank_H0 == er);
            if (fr.rank_H0 >= 1) {
                const KoszulTable kt = koszul_rank_table(fr.rank_H0);
                std::string ranks;
                for (std::size_t k = 0; k < kt.ranks.size(); ++k)
                    ranks += (k ? "," : "") + kt.ranks[k].get_str();
                rep.set(pre + ".koszul", ranks);
                rep.check(pre + ".koszul_alternating_zero", kt.alternating_sum_zero);
            }
            const bool in_image = Subspace<K>::column_space(f.d0).contains(section_s(f));
            rep.set(pre + ".section_in_image", in_image ? "1" : "0");
            rep.check(pre + ".section_iff_hom", in_image == (fr.hom_vw > 0));
        }
        if (vx[idx] == Stability::Stable) {
            // Same-orbit partner: the section must land in the image.
            ++orbit_pairs;
            Rng rg(sub_seed(job.seed, kSeedGroupOrbitG + u));
            Rng rw2(sub_seed(job.seed, kSeedGroupOrbitW + u));
            const auto g0 = random_group<K>(dq->graph, alpha, rg, ctx);
            const auto gw2 = random_group<K>(gtr->graph, alpha_gtr, rw2, ctx);
            const CBRep<K> y2 = act(g0, xs[idx]);
            const GtrRep<K> W2 = ind(gw2, y2, gtr);
            const TautComplexFiber<K> f2 = build_fiber(V, W2);
            const FiberReport<K> fr2 = verify_fiber(f2);
            const std::string opre = "complex.orbit." + pad_index(i);
            rep.check(opre + ".composite", fr2.composite_zero);
            rep.check(opre + ".hom_positive", fr2.hom_vw >= 1);
            rep.check(opre + ".section_in_image",
                      Subspace<K>::column_space(f2.d0).contains(section_s(f2)));
        }

        const TransversalityReport pr =
            transversality_probe(xs[idx], sub_seed(job.seed, kSeedProbe + u), ctx);
        const std::string ppre = "complex.probe." + pad_index(i);
        rep.set(ppre + ".tangent_dim", pr.tangent_dim);
        rep.check(ppre + ".identity_in_kernel", pr.identity_in_kernel);
        rep.check(ppre + ".witness", pr.witness_verified);
        if constexpr (std::is_same_v<K, Rat>) {
            if (er > 0) {
                rep.check(ppre + ".full_rank", pr.full_rank_independent);
            } else {
                // Zero expected rank: the moduli is a point, so independent
                // deformations are first-order isomorphic and the rank drop
                // is the correct answer (certified by the witness check).
                rep.set(ppre + ".full_rank", pr.full_rank_independent ? "1" : "0");
            }
        } else {
            // Over a small finite field generic independence can fail by
            // accident, so the rank is recorded rather than asserted.
            rep.set(ppre + ".full_rank", pr.full_rank_independent ? "1" : "0");
        }
    }
    rep.set("complex.pairs", pairs);
    rep.set("complex.stable_pairs", stable_pairs);
    rep.set("complex.orbit_pairs", orbit_pairs);
}

} // namespace

Report run_pipeline(const JobSpec& job) {
    const Selection sel = make_selection(job);
    if (job.window_a >= job.window_b)
        throw std::invalid_argument("window [" + std::to_string(job.window_a) + "," +
                                    std::to_string(job.window_b) + "]: need a < b");
    const bool default_window = job.window_a == 0 && job.window_b == 2;
    if (!default_window && (sel.want("complex") || sel.want("chern")))
        throw std::invalid_argument(
            "the complex and chern stages require the default window [0,2]");
    if (job.samples < 0) throw std::invalid_argument("samples must be nonnegative");

    const QuiverFile qf = parse_quiver_file(job.quiver_text);
    const Quiver framed = crawley_boevey(qf.q0, qf.w).first;
    const DimVec alpha = cb_dimension(qf.v);
    const Theta th = cb_theta(qf.theta0, qf.v);
    const auto dq = std::make_shared<const DoubledQuiver>(double_quiver(framed));
    const auto gtr =
        std::make_shared<const GtrQuiver>(graded_triple(*dq, job.window_a, job.window_b));
    const DimVec alpha_gtr = constant_gtr_dimension(alpha, job.window_a, job.window_b);

    Report rep;
    if (sel.want("describe"))
        emit_describe(qf, framed, alpha, th, *dq, *gtr, alpha_gtr, job, rep);

    // Gate: stages that depend on the linearization refuse to run when theta
    // pairs to zero with some intermediate dimension vector.
    const bool need_gate = sel.want("nondegen") || sel.want("theta_gtr") ||
                           sel.want("stability") || sel.want("complex");
    bool theta_usable = true;
    if (need_gate) {
        try {
            const NondegResult nd = is_nondegenerate(th, alpha, job.budget);
            // A degenerate linearization is reported even when the nondegen
            // stage was not selected: the refusal must be visible.
            if (sel.want("nondegen") || !nd.nondegenerate) {
                rep.set("nondegen.theta", join_ints(th.c));
                rep.set("nondegen.theta_alpha_zero", nd.theta_alpha_zero ? "1" : "0");
                if (nd.witness) rep.set("nondegen.witness", join_dims(*nd.witness));
                rep.check("nondegen.ok", nd.nondegenerate);
            }
            theta_usable = nd.nondegenerate;
        } catch (const std::runtime_error& e) {
            if (!is_budget_error(e)) throw;
            if (sel.want("nondegen")) rep.set("nondegen.status", "budget_exceeded");
        }
        if (!theta_usable) {
            for (const char* s : {"theta_gtr", "stability", "complex"})
                if (sel.want(s))
                    rep.set(std::string(s) + ".status", "refused_degenerate_linearization");
        }
    }

    if (sel.want("theta_gtr") && theta_usable)
        emit_theta_gtr(th, alpha, *gtr, alpha_gtr, job.budget, rep);

    if (job.field.kind == FieldSpec::Kind::Rationals) {
        run_field_stages<Rat>(job, sel, theta_usable, dq, framed, alpha, th, gtr, alpha_gtr,
                              FieldCtx<Rat>{}, rep);
    } else {
        run_field_stages<Fp>(job, sel, theta_usable, dq, framed, alpha, th, gtr, alpha_gtr,
                             FieldCtx<Fp>{job.field.p}, rep);
    }

    if (sel.want("chern")) emit_chern(*dq, framed, alpha, rep);

    rep.set("result.passed", rep.all_passed ? "1" : "0");
    return rep;
}

std::string run_job(const JobSpec& job) { return emit_report(run_pipeline(job), job.format); }

} // namespace qv
