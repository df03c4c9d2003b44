// Symbolic characteristic-class calculus: truncated Whitney products, Segre
// inverses, the tensor-product class against an independent formal-root
// oracle, alternating classes of two-step complexes, factorwise splitting,
// and the standard complex attached to a framed doubled quiver.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "test_support.hpp"

using namespace qv;
using qvtest::oracle::direct_product;
using qvtest::oracle::substitute;

namespace {
const BundleSymbol E2{"E", 2, Side::Left};
const BundleSymbol L1{"L", 1, Side::Left};
} // namespace

TEST_CASE("total class basics") {
    CHECK(total_chern(BundleSymbol{"Z", 0, Side::Left}, 4) == GradedClass::unit(4));
    CHECK(class_str(total_chern(E2, 4)) == "1 + c1(E) + c2(E)");
    CHECK(class_str(GradedClass::unit(3)) == "1");
}

TEST_CASE("truncated products: unit, commutativity, associativity") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        Rng ra = rng.child(3 * static_cast<std::uint64_t>(t));
        Rng rb = rng.child(3 * static_cast<std::uint64_t>(t) + 1);
        Rng rc = rng.child(3 * static_cast<std::uint64_t>(t) + 2);
        const int trunc = 2 + static_cast<int>(rng.below(4));
        const GradedClass a = qvtest::random_unit_class(ra, trunc);
        const GradedClass b = qvtest::random_unit_class(rb, trunc);
        const GradedClass c = qvtest::random_unit_class(rc, trunc);
        CHECK(whitney(a, GradedClass::unit(trunc)) == a);
        CHECK(whitney(a, b) == whitney(b, a));
        CHECK(whitney(whitney(a, b), c) == whitney(a, whitney(b, c)));
    }
    CHECK_THROWS_AS(whitney(GradedClass::unit(2), GradedClass::unit(3)),
                    std::invalid_argument);
}

TEST_CASE("multiplicative inverse") {
    // A line bundle inverts to the alternating geometric series.
    CHECK(class_str(segre_inverse(total_chern(L1, 4))) ==
          "1 - c1(L) + c1(L)^2 - c1(L)^3 + c1(L)^4");
    CHECK(segre_inverse(GradedClass::unit(5)) == GradedClass::unit(5));

    Rng rng(31);
    for (int t = 0; t < 50; ++t) {
        Rng r = rng.child(static_cast<std::uint64_t>(t));
        const int trunc = 3 + static_cast<int>(rng.below(6));
        const GradedClass a = qvtest::random_unit_class(r, trunc);
        CHECK(whitney(a, segre_inverse(a)) == GradedClass::unit(trunc));
    }

    GradedClass no_unit(3);
    no_unit.add_term(ChernMonomial{{ChernVar{0, "A", 1}, 1}}, Int(1));
    CHECK_THROWS_AS(segre_inverse(no_unit), std::invalid_argument);
}

TEST_CASE("tensor class of two line bundles") {
    const BundleSymbol l{"E", 1, Side::Left};
    const BundleSymbol r{"F", 1, Side::Right};
    CHECK(class_str(chern_tensor(l, r, 3)) == "1 + c1(E) + c1(F)");
}

TEST_CASE("tensor class matches the formal-root oracle") {
    for (int e = 1; e <= 3; ++e) {
        for (int f = 1; f <= 3; ++f) {
            const BundleSymbol be{"E", e, Side::Left};
            const BundleSymbol bf{"F", f, Side::Right};
            for (int d = 1; d <= 6; ++d) {
                const GradedClass g = chern_tensor(be, bf, d);

                // First class lives within the rank bound of the product.
                int wmax = 0;
                for (const auto& [m, c] : g.terms()) wmax = std::max(wmax, monomial_weight(m));
                CHECK(wmax <= e * f);
                CHECK(g.coefficient(ChernMonomial{{ChernVar{0, "E", 1}, 1}}) == f);
                CHECK(g.coefficient(ChernMonomial{{ChernVar{1, "F", 1}, 1}}) == e);

                // Substituting elementary symmetric polynomials of the formal
                // roots must reproduce the direct product expansion.
                CHECK(substitute(g, be, bf, e, f, d) == direct_product(e, f, d));
            }
        }
    }
}

TEST_CASE("alternating class of a two-step complex") {
    const BundleSymbol be{"E", 2, Side::Left};
    const BundleSymbol bf{"F", 2, Side::Right};
    const int d = 4;

    // A single degree-0 term is just the tensor class.
    CHECK(chern_of_complex({RTerm{be, bf, 0}}, d) == chern_tensor(be, bf, d));

    // The same bundle in degrees 0 and +1 cancels.
    CHECK(chern_of_complex({RTerm{be, bf, 0}, RTerm{be, bf, 1}}, d) == GradedClass::unit(d));

    // Rank-0 right symbols degenerate each term to its left bundle.
    const BundleSymbol za{"A", 2, Side::Left};
    const BundleSymbol zb{"B", 3, Side::Left};
    const BundleSymbol zc{"C", 1, Side::Left};
    const BundleSymbol none{"N", 0, Side::Right};
    const GradedClass got =
        chern_of_complex({RTerm{za, none, -1}, RTerm{zb, none, 0}, RTerm{zc, none, 1}}, d);
    const GradedClass want =
        whitney(whitney(segre_inverse(total_chern(za, d)), total_chern(zb, d)),
                segre_inverse(total_chern(zc, d)));
    CHECK(got == want);

    // Term order is irrelevant.
    const std::vector<RTerm> terms = {RTerm{za, none, 1}, RTerm{be, bf, 0},
                                      RTerm{zb, none, -1}};
    std::vector<RTerm> shuffled = {terms[2], terms[0], terms[1]};
    CHECK(chern_of_complex(terms, d) == chern_of_complex(shuffled, d));
}

TEST_CASE("factorwise splitting") {
    // A purely left class splits against the unit right monomial.
    GradedClass left_only(3);
    left_only.add_term({}, Int(1));
    left_only.add_term(ChernMonomial{{ChernVar{0, "A", 1}, 2}}, Int(4));
    const auto pure = kunneth_decompose(left_only);
    REQUIRE(pure.size() == 1);
    CHECK(pure[0].first == left_only);

    // Terms sharing a right monomial collect into one left factor.
    GradedClass mixed(3);
    mixed.add_term(ChernMonomial{{ChernVar{0, "A", 1}, 1}, {ChernVar{1, "C", 1}, 1}}, Int(3));
    mixed.add_term(ChernMonomial{{ChernVar{0, "A", 2}, 1}, {ChernVar{1, "C", 1}, 1}}, Int(2));
    mixed.add_term(ChernMonomial{{ChernVar{0, "B", 1}, 1}}, Int(5));
    const auto pairs = kunneth_decompose(mixed);
    REQUIRE(pairs.size() == 2);
    GradedClass b_only(3);
    b_only.add_term(ChernMonomial{{ChernVar{0, "B", 1}, 1}}, Int(5));
    CHECK(pairs[0].first == b_only); // unit right monomial sorts first
    GradedClass a_parts(3);
    a_parts.add_term(ChernMonomial{{ChernVar{0, "A", 1}, 1}}, Int(3));
    a_parts.add_term(ChernMonomial{{ChernVar{0, "A", 2}, 1}}, Int(2));
    CHECK(pairs[1].first == a_parts);
    CHECK(kunneth_left_components(mixed).size() == 2);

    // Re-expansion is the identity on random classes.
    Rng rng(99);
    for (int t = 0; t < 10; ++t) {
        Rng r = rng.child(static_cast<std::uint64_t>(t));
        const GradedClass a = qvtest::random_unit_class(r, 4);
        GradedClass sum(4);
        for (const auto& [x, y] : kunneth_decompose(a)) sum = sum + x * y;
        CHECK(sum == a);
    }
}

TEST_CASE("homogeneous part extraction") {
    Rng rng(55);
    Rng r = rng.child(0);
    const GradedClass a = qvtest::random_unit_class(r, 4);
    const GradedClass t2 = top_class(a, 2);
    for (const auto& [m, c] : t2.terms()) CHECK(monomial_weight(m) == 2);
    for (const auto& [m, c] : a.terms())
        if (monomial_weight(m) == 2) CHECK(t2.coefficient(m) == c);
}

TEST_CASE("standard complex of the one-loop framed instance") {
    const qvtest::Setup s = qvtest::make_jordan(1, 1);
    const auto terms = standard_complex_terms(*s.dq, s.alpha);
    REQUIRE(terms.size() == 6);
    int deg0 = 0, degm = 0, degp = 0;
    for (const RTerm& t : terms) {
        if (t.degree == 0) ++deg0;
        if (t.degree == -1) ++degm;
        if (t.degree == 1) ++degp;
    }
    CHECK(deg0 == 4);
    CHECK(degm == 1);
    CHECK(degp == 1);

    const int d = expected_rank(s.cbq, s.alpha);
    REQUIRE(d == 2);
    const GradedClass cls = chern_of_complex(terms, d);
    CHECK(whitney(cls, segre_inverse(cls)) == GradedClass::unit(d));
    const GradedClass top = top_class(cls, d);
    CHECK(!top.is_zero());

    // The splitting of the top class has purely left first factors, and
    // re-expanding reproduces it.
    GradedClass sum(d);
    for (const auto& [x, y] : kunneth_decompose(top)) {
        for (const auto& [m, c] : x.terms())
            for (const auto& [var, exp] : m) CHECK(var.side == 0);
        sum = sum + x * y;
    }
    CHECK(sum == top);
}
