// The two-step tautological complex on pairs of framed modules: composite
// vanishing, injectivity/surjectivity on stable pairs, middle-rank formula,
// the distinguished section as an isomorphism detector, the undeformed
// comparison maps, and the first-order transversality probe.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_support.hpp"

using namespace qv;
using qvtest::Setup;

namespace {

GtrRep<Rat> lift(const Setup& s, const CBRep<Rat>& x) {
    return ind(identity_group<Rat>(*s.gtr, s.agtr), x, s.gtr);
}

GtrRep<Rat> lift_random(const Setup& s, const CBRep<Rat>& x, Rng& rng, const FieldCtx<Rat>& ctx) {
    return ind(random_group<Rat>(s.gtr->graph, s.agtr, rng, ctx), x, s.gtr);
}

} // namespace

TEST_CASE("expected generic middle rank") {
    const Setup j11 = qvtest::make_jordan(1, 1);
    CHECK(expected_rank(j11.cbq, j11.alpha) == 2);
    const Setup j21 = qvtest::make_jordan(2, 1);
    CHECK(expected_rank(j21.cbq, j21.alpha) == 4);
    const Setup pt = qvtest::make_vertex_only(1, 2);
    CHECK(expected_rank(pt.cbq, pt.alpha) == 2);
}

TEST_CASE("exterior-power rank table") {
    const KoszulTable t2 = koszul_rank_table(2);
    REQUIRE(t2.ranks.size() == 3);
    CHECK(t2.ranks[0] == 1);
    CHECK(t2.ranks[1] == 2);
    CHECK(t2.ranks[2] == 1);
    CHECK(t2.alternating_sum_zero);

    const KoszulTable t0 = koszul_rank_table(0);
    REQUIRE(t0.ranks.size() == 1);
    CHECK(t0.ranks[0] == 1);
    CHECK(!t0.alternating_sum_zero);

    CHECK_THROWS_AS(koszul_rank_table(-1), std::invalid_argument);
}

TEST_CASE("fiber construction requires the standard window") {
    const Setup s = qvtest::make_jordan(1, 1);
    const auto wide = std::make_shared<const GtrQuiver>(graded_triple(*s.dq, 0, 3));
    const DimVec awide = constant_gtr_dimension(s.alpha, 0, 3);
    const FieldCtx<Rat> ctx;
    const CBRep<Rat> x = sample_moment_fiber<Rat>(s.dq, s.alpha, 0, ctx);
    const GtrRep<Rat> v = ind(identity_group<Rat>(*wide, awide), x, wide);
    CHECK_THROWS_AS(build_fiber(v, v), std::invalid_argument);
}

TEST_CASE("stable pairs: exactness, middle rank, section detects isomorphism") {
    const Setup s = qvtest::make_jordan(1, 1);
    const FieldCtx<Rat> ctx;
    int stable_pairs = 0, nonorbit_ok = 0, orbit_ok = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const CBRep<Rat> x = sample_moment_fiber<Rat>(s.dq, s.alpha, 100 + seed, ctx);
        const CBRep<Rat> y = sample_moment_fiber<Rat>(s.dq, s.alpha, 500 + seed, ctx);
        Rng rng(900 + seed);
        Rng rv = rng.child(1), rw = rng.child(2), rg = rng.child(3);
        const GtrRep<Rat> V = lift_random(s, x, rv, ctx);
        const GtrRep<Rat> W = lift_random(s, y, rw, ctx);

        const auto f = build_fiber(V, W);
        const FiberReport<Rat> r = verify_fiber(f);
        CHECK(r.composite_zero);
        CHECK(r.relations_ok);
        CHECK(r.hom_cross_check);

        const bool xs = is_stable_fast(x, s.th) == Stability::Stable;
        const bool ys = is_stable_fast(y, s.th) == Stability::Stable;
        if (xs && ys) {
            ++stable_pairs;
            CHECK(r.rank_d0 == f.d0.cols());  // injective after truncation
            CHECK(r.rank_d1 == f.d1.rows());  // surjective after truncation
            CHECK(r.rank_H0 == 2);
            CHECK(r.rank_H0 == expected_rank(s.cbq, s.alpha));

            // Independently sampled stable points here are non-isomorphic, so
            // the section avoids the image of the first map.
            if (r.hom_vw == 0 && !solve(f.d0, section_s(f)).has_value()) ++nonorbit_ok;
        }
        if (xs) {
            // A pair in the same orbit: the section lands in the image.
            const auto g0 = random_group<Rat>(s.dq->graph, s.alpha, rg, ctx);
            const CBRep<Rat> y2 = act(g0, x);
            Rng rw2 = rng.child(4);
            const GtrRep<Rat> W2 = lift_random(s, y2, rw2, ctx);
            const auto f2 = build_fiber(V, W2);
            const FiberReport<Rat> r2 = verify_fiber(f2);
            CHECK(r2.composite_zero);
            if (r2.hom_vw >= 1 && solve(f2.d0, section_s(f2)).has_value()) ++orbit_ok;
        }
    }
    // Sampling the one-dimensional loop instance produces mostly stable
    // points; require a healthy margin rather than an exact count.
    CHECK(stable_pairs >= 20);
    CHECK(nonorbit_ok == stable_pairs);
    CHECK(orbit_ok >= 20);
}

TEST_CASE("larger instances: composite vanishing and middle rank") {
    const FieldCtx<Rat> ctx;
    for (const Setup& s : {qvtest::make_jordan(2, 1), qvtest::make_a2()}) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            const CBRep<Rat> x = sample_moment_fiber<Rat>(s.dq, s.alpha, 40 + seed, ctx);
            const CBRep<Rat> y = sample_moment_fiber<Rat>(s.dq, s.alpha, 80 + seed, ctx);
            Rng rng(7000 + seed);
            Rng rv = rng.child(1), rw = rng.child(2);
            const GtrRep<Rat> V = lift_random(s, x, rv, ctx);
            const GtrRep<Rat> W = lift_random(s, y, rw, ctx);
            const auto f = build_fiber(V, W);
            const FiberReport<Rat> r = verify_fiber(f);
            CHECK(r.composite_zero);
            CHECK(r.relations_ok);
            CHECK(r.hom_cross_check);
            if (is_stable_fast(x, s.th) == Stability::Stable &&
                is_stable_fast(y, s.th) == Stability::Stable) {
                CHECK(r.rank_d0 == f.d0.cols());
                CHECK(r.rank_d1 == f.d1.rows());
                CHECK(r.rank_H0 == expected_rank(s.cbq, s.alpha));
            }
        }
    }
}

TEST_CASE("undeformed comparison maps: composition laws and the section") {
    const Setup s = qvtest::make_jordan(2, 1);
    const FieldCtx<Rat> ctx;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const CBRep<Rat> x = sample_moment_fiber<Rat>(s.dq, s.alpha, 300 + seed, ctx);
        const CBRep<Rat> y = sample_moment_fiber<Rat>(s.dq, s.alpha, 600 + seed, ctx);
        const SigmaTau<Rat> st = sigma_tau(x, y);
        // Both points satisfy the fiber equation: the two maps compose to zero,
        // and the section is always annihilated.
        CHECK(st.tau * st.sigma == Mat<Rat>(st.l_dim, st.l_dim));
        CHECK(st.tau * st.s == Mat<Rat>(st.l_dim, 1));
    }

    // At a pair (x, x) the flattened identity maps to the section.
    const CBRep<Rat> x = sample_moment_fiber<Rat>(s.dq, s.alpha, 333, ctx);
    const SigmaTau<Rat> same = sigma_tau(x, x);
    const Mat<Rat> id_flat = qvtest::flat_identity<Rat>({2});
    CHECK(same.l_dim == 4);
    CHECK(same.sigma * id_flat == same.s);

    // Off the fiber the section is still annihilated but the composite is not
    // zero in general.
    Rng rng(424242);
    Rng rx = rng.child(9);
    const CBRep<Rat> z = random_cb_rep<Rat>(s.dq, s.alpha, rx, ctx);
    REQUIRE(!is_in_zero_fiber(z));
    const SigmaTau<Rat> off = sigma_tau(z, z);
    CHECK(off.tau * off.s == Mat<Rat>(off.l_dim, 1));
    CHECK(off.tau * off.sigma != Mat<Rat>(off.l_dim, off.l_dim));
}

TEST_CASE("identity shifts reduce the complex to the comparison maps") {
    const Setup s = qvtest::make_a2();
    const FieldCtx<Rat> ctx;
    const CBRep<Rat> x = sample_moment_fiber<Rat>(s.dq, s.alpha, 1234, ctx);
    const CBRep<Rat> y = sample_moment_fiber<Rat>(s.dq, s.alpha, 4321, ctx);
    const GtrRep<Rat> V = lift(s, x);
    const GtrRep<Rat> W = lift(s, y);
    const auto f = build_fiber(V, W);
    const SigmaTau<Rat> st = sigma_tau(x, y);

    REQUIRE(f.e_dim == st.mid_dim);
    REQUIRE(f.d0.cols() == st.l_dim);
    const int na = s.dq->graph.num_arrows();
    for (int h = 0; h < na; ++h) {
        const Arrow& ar = s.dq->graph.arrow(h);
        const int rows = y.dim.at(ar.tgt) * x.dim.at(ar.src);
        for (int t = 0; t < rows; ++t) {
            for (int c = 0; c < st.l_dim; ++c)
                CHECK(st.sigma.at(st.mid_block[static_cast<std::size_t>(h)] + t, c) ==
                      f.d0.at(f.e_off[static_cast<std::size_t>(h)] + t, c));
            CHECK(st.s.at(st.mid_block[static_cast<std::size_t>(h)] + t, 0) ==
                  f.s.at(f.e_off[static_cast<std::size_t>(h)] + t, 0));
            for (int r = 0; r < st.l_dim; ++r)
                CHECK(st.tau.at(r, st.mid_block[static_cast<std::size_t>(h)] + t) ==
                      f.d1.at(r, f.e_off[static_cast<std::size_t>(h)] + t));
        }
    }
}

TEST_CASE("first-order transversality probe") {
    const Setup s = qvtest::make_jordan(2, 2);
    const FieldCtx<Rat> ctx;
    int probed = 0;
    for (std::uint64_t i = 0; i < 4; ++i) {
        const CBRep<Rat> x = sample_moment_fiber<Rat>(s.dq, s.alpha, 7000 + i, ctx);
        const TransversalityReport rep = transversality_probe(x, 5000 + i, ctx);
        CHECK(rep.tangent_dim > 0);
        CHECK(rep.identity_in_kernel);
        CHECK(rep.rank_equal < rep.l_dim);
        CHECK(rep.full_rank_independent);
        CHECK(rep.witness_verified);
        ++probed;
    }
    CHECK(probed == 4);
}
