// Combinatorial layer: doubling with signs, framing, the graded triple, and
// dimension-vector arithmetic.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_support.hpp"

using namespace qv;

TEST_CASE("quiver identifiers are unique and indexed") {
    Quiver q;
    CHECK(q.add_vertex("a") == 0);
    CHECK(q.add_vertex("b") == 1);
    q.add_arrow("e", "a", "b");
    CHECK(q.num_vertices() == 2);
    CHECK(q.num_arrows() == 1);
    CHECK(q.vertex_index("b") == 1);
    CHECK(q.arrow(0).src == 0);
    CHECK(q.arrow(0).tgt == 1);
    CHECK(!q.find_vertex("c").has_value());
    CHECK_THROWS_AS(q.vertex_index("c"), std::exception);
}

TEST_CASE("doubling: fixed-point-free involution with signs") {
    Quiver q0;
    q0.add_vertex("1");
    q0.add_vertex("2");
    q0.add_arrow("x", "1", "2");
    q0.add_arrow("y", "2", "2");
    const DoubledQuiver d = double_quiver(q0);
    CHECK(d.graph.num_arrows() == 4);
    CHECK(d.num_original == 2);
    for (int h = 0; h < 4; ++h) {
        CHECK(d.bar[static_cast<std::size_t>(d.bar[static_cast<std::size_t>(h)])] == h);
        CHECK(d.bar[static_cast<std::size_t>(h)] != h);
        CHECK(d.eps[static_cast<std::size_t>(h)] == (h < 2 ? 1 : -1));
        // Reversal swaps endpoints.
        const Arrow& a = d.graph.arrow(h);
        const Arrow& b = d.graph.arrow(d.bar[static_cast<std::size_t>(h)]);
        CHECK(a.src == b.tgt);
        CHECK(a.tgt == b.src);
    }
    CHECK(d.graph.arrow(2).id == "bar:x");
    CHECK(same_quiver(d.original(), q0));
}

TEST_CASE("framing adds inf with one arrow per multiplicity unit") {
    Quiver q0;
    q0.add_vertex("1");
    q0.add_vertex("2");
    q0.add_arrow("x", "1", "2");
    const auto [framed, inf_id] = crawley_boevey(q0, DimVec({2, 1}));
    CHECK(inf_id == kFramingVertex);
    CHECK(framed.num_vertices() == 3);
    CHECK(framed.num_arrows() == 1 + 3);
    const int inf = framed.vertex_index(kFramingVertex);
    // Framing arrows run from inf into the base vertices.
    int into_1 = 0, into_2 = 0;
    for (int h = 1; h < framed.num_arrows(); ++h) {
        const Arrow& a = framed.arrow(h);
        CHECK(a.src == inf);
        if (framed.vertex(a.tgt) == "1") ++into_1;
        if (framed.vertex(a.tgt) == "2") ++into_2;
    }
    CHECK(into_1 == 2);
    CHECK(into_2 == 1);
    CHECK(framed.find_arrow("cb:1:2").has_value());

    const DimVec alpha = cb_dimension(DimVec({4, 5}));
    CHECK(alpha.d == std::vector<int>({4, 5, 1}));
}

TEST_CASE("graded triple layout") {
    qvtest::Setup s = qvtest::make_jordan(1, 1);
    const GtrQuiver& g = *s.gtr;
    CHECK(g.a == 0);
    CHECK(g.b == 2);
    CHECK(g.slices() == 3);
    const int nv = g.base.graph.num_vertices();
    const int na = g.base.graph.num_arrows();
    CHECK(g.graph.num_vertices() == nv * 3);
    CHECK(g.graph.num_arrows() == (na + nv) * 2);

    for (int n = 0; n <= 2; ++n)
        for (int i = 0; i < nv; ++i)
            CHECK(g.graph.vertex(g.vertex_at(i, n)) ==
                  g.base.graph.vertex(i) + "@" + std::to_string(n));

    // Slice-n arrows run from slice n to slice n+1.
    for (int n = 0; n < 2; ++n) {
        for (int h = 0; h < na; ++h) {
            const Arrow& a = g.graph.arrow(g.a_arrow(h, n));
            const Arrow& base = g.base.graph.arrow(h);
            CHECK(a.src == g.vertex_at(base.src, n));
            CHECK(a.tgt == g.vertex_at(base.tgt, n + 1));
            CHECK(g.info[static_cast<std::size_t>(g.a_arrow(h, n))].eps ==
                  g.base.eps[static_cast<std::size_t>(h)]);
        }
        for (int i = 0; i < nv; ++i) {
            const Arrow& e = g.graph.arrow(g.e_arrow(i, n));
            CHECK(e.src == g.vertex_at(i, n));
            CHECK(e.tgt == g.vertex_at(i, n + 1));
            CHECK(e.id == "e:" + g.base.graph.vertex(i) + "@" + std::to_string(n));
            CHECK(g.info[static_cast<std::size_t>(g.e_arrow(i, n))].kind ==
                  GtrArrow::Kind::Shift);
        }
    }

    const DimVec agtr = constant_gtr_dimension(DimVec({3, 1}), 0, 2);
    CHECK(agtr.d == std::vector<int>({3, 1, 3, 1, 3, 1}));
}

TEST_CASE("componentwise order and structural equality") {
    CHECK(leq(DimVec({1, 2}), DimVec({1, 3})));
    CHECK(!leq(DimVec({2, 0}), DimVec({1, 3})));
    Quiver a, b;
    a.add_vertex("v");
    b.add_vertex("v");
    CHECK(same_quiver(a, b));
    b.add_vertex("w");
    CHECK(!same_quiver(a, b));
}
