// Exact linear algebra: scalars, matrices, row reduction, block systems,
// canonical subspaces, and the deterministic random stream they all share.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "qv/field.hpp"
#include "qv/linalg.hpp"
#include "qv/subspace.hpp"

using namespace qv;

TEST_CASE("rational scalars are exact") {
    CHECK(Rat(1) / Rat(3) + Rat(1) / Rat(6) == Rat(1) / Rat(2));
    CHECK(scalar_str(Rat(-7) / Rat(3)) == "-7/3");
    CHECK(scalar_str(Rat(5)) == "5");
}

TEST_CASE("prime-field scalars invert") {
    const std::uint32_t p = 13;
    for (std::uint32_t a = 1; a < p; ++a) {
        const Fp x(static_cast<long long>(a), p);
        CHECK(x * inv(x) == Fp(1, p));
    }
    CHECK(Fp(7, p) + Fp(9, p) == Fp(3, p));
    CHECK(Fp(-1, p) == Fp(12, p));
}

TEST_CASE("deterministic random stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(42);
    Rng c0 = c.child(0), c1 = c.child(1);
    CHECK(c0.next_u64() != c1.next_u64()); // distinct child streams
    Rng d(7);
    for (int i = 0; i < 200; ++i) {
        const auto v = d.below(10);
        CHECK(v < 10);
    }
    CHECK(Rng(1).below(1) == 0);
}

TEST_CASE("row-major vectorization identity") {
    // vec_row(A * M * B) == kron(A, transpose(B)) * vec_row(M), the
    // convention every block assembly in the project relies on.
    const FieldCtx<Rat> ctx;
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        Rng r = rng.child(static_cast<std::uint64_t>(t));
        const Mat<Rat> a = random_mat<Rat>(3, 2, r, ctx);
        const Mat<Rat> m = random_mat<Rat>(2, 4, r, ctx);
        const Mat<Rat> b = random_mat<Rat>(4, 3, r, ctx);
        CHECK(vec_row(a * m * b) == kron(a, transpose(b)) * vec_row(m));
        CHECK(unvec_row(vec_row(m), m.rows(), m.cols()) == m);
    }
}

TEST_CASE("rank and reduced row echelon form") {
    Mat<Rat> m(3, 4);
    // rows: (1,2,3,4), (2,4,6,8), (0,0,1,1) -> rank 2
    const int vals[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 0, 1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = Rat(vals[i][j]);
    CHECK(rank(m) == 2);
    CHECK(rank(transpose(m)) == 2);
    CHECK(rank(Mat<Rat>::identity(5)) == 5);
    CHECK(rank(Mat<Rat>(3, 3)) == 0);

    const FieldCtx<Fp> fctx{101};
    Rng rng(3);
    const Mat<Fp> r = random_mat<Fp>(4, 6, rng, fctx);
    CHECK(rank(r) == rank(transpose(r)));
}

TEST_CASE("kernel basis spans the right kernel") {
    const FieldCtx<Rat> ctx;
    Rng rng(17);
    for (int t = 0; t < 8; ++t) {
        Rng r = rng.child(static_cast<std::uint64_t>(t));
        const Mat<Rat> a = random_mat<Rat>(3, 5, r, ctx);
        const Mat<Rat> ker = kernel_basis(a);
        CHECK(ker.rows() == a.cols() - rank(a));
        for (int i = 0; i < ker.rows(); ++i) {
            const Mat<Rat> v = transpose(block(ker, i, 0, 1, ker.cols()));
            CHECK((a * v).is_zero_mat());
        }
        CHECK(rank(ker) == ker.rows()); // linearly independent rows
    }
}

TEST_CASE("solve returns exact solutions and detects inconsistency") {
    const FieldCtx<Rat> ctx;
    Rng rng(23);
    for (int t = 0; t < 8; ++t) {
        Rng r = rng.child(static_cast<std::uint64_t>(t));
        const Mat<Rat> a = random_mat<Rat>(4, 3, r, ctx);
        const Mat<Rat> x0 = random_mat<Rat>(3, 1, r, ctx);
        const auto sol = solve<Rat>(a, a * x0);
        REQUIRE(sol.has_value());
        CHECK(a * *sol == a * x0);
    }
    // Inconsistent: e1 and e1 with different right-hand sides.
    Mat<Rat> a(2, 1);
    a.at(0, 0) = Rat(1);
    a.at(1, 0) = Rat(1);
    Mat<Rat> b(2, 1);
    b.at(0, 0) = Rat(1);
    b.at(1, 0) = Rat(2);
    CHECK(!solve<Rat>(a, b).has_value());

    // Underdetermined: the free-value hook fills nonpivot coordinates.
    Mat<Rat> wide(1, 3);
    for (int j = 0; j < 3; ++j) wide.at(0, j) = Rat(1);
    Mat<Rat> rhs(1, 1);
    rhs.at(0, 0) = Rat(6);
    const auto sol = solve<Rat>(wide, rhs, [](int) { return Rat(7); });
    REQUIRE(sol.has_value());
    CHECK(wide * *sol == rhs);
    CHECK(sol->at(1, 0) == Rat(7));
    CHECK(sol->at(2, 0) == Rat(7));
}

TEST_CASE("inverse is two-sided; singular matrices are rejected") {
    const FieldCtx<Fp> ctx{101};
    Rng rng(29);
    for (int t = 0; t < 6; ++t) {
        Rng r = rng.child(static_cast<std::uint64_t>(t));
        const Mat<Fp> g = random_invertible<Fp>(4, r, ctx);
        CHECK(g * inverse(g) == Mat<Fp>::identity(4));
        CHECK(inverse(g) * g == Mat<Fp>::identity(4));
    }
    Mat<Rat> sing(2, 2);
    sing.at(0, 0) = Rat(1);
    sing.at(0, 1) = Rat(2);
    sing.at(1, 0) = Rat(2);
    sing.at(1, 1) = Rat(4);
    CHECK(!is_invertible(sing));
    CHECK_THROWS_AS(inverse(sing), std::domain_error);
}

TEST_CASE("block system assembles Sylvester-type equations") {
    // One unknown X with A*X - X*B = C: solve through the assembled system
    // and confirm the equation directly.
    const FieldCtx<Rat> ctx;
    Rng rng(31);
    const Mat<Rat> a = random_mat<Rat>(3, 3, rng, ctx);
    const Mat<Rat> b = random_mat<Rat>(2, 2, rng, ctx);
    const Mat<Rat> x0 = random_mat<Rat>(3, 2, rng, ctx);
    const Mat<Rat> c = a * x0 - x0 * b;

    BlockSystem<Rat> sys;
    const int x = sys.add_unknown(3, 2);
    const int eq = sys.add_equation(3, 2);
    sys.add_term(eq, x, a, Mat<Rat>::identity(2), +1);
    sys.add_term(eq, x, Mat<Rat>::identity(3), b, -1);
    sys.add_const(eq, c, -1); // moved to the right-hand side by assemble
    const auto [mat, rhs] = sys.assemble();
    const auto sol = solve<Rat>(mat, rhs);
    REQUIRE(sol.has_value());
    const Mat<Rat> xs = sys.unpack(*sol)[static_cast<std::size_t>(x)];
    CHECK(a * xs - xs * b == c);
}

TEST_CASE("subspaces are canonical") {
    const FieldCtx<Rat> ctx;
    Rng rng(37);
    const Mat<Rat> a = random_mat<Rat>(4, 3, rng, ctx);
    // Column operations do not change the column space: append a random
    // combination of existing columns.
    Mat<Rat> widened(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) widened.at(i, j) = a.at(i, j);
    for (int i = 0; i < 4; ++i)
        widened.at(i, 3) = a.at(i, 0) * Rat(2) - a.at(i, 1) * Rat(5);
    CHECK(Subspace<Rat>::column_space(a) == Subspace<Rat>::column_space(widened));

    const Subspace<Rat> s = Subspace<Rat>::column_space(a);
    for (int j = 0; j < 3; ++j) CHECK(s.contains(block(a, 0, j, 4, 1)));
    CHECK(s.contains(Mat<Rat>(4, 1))); // zero vector
}

TEST_CASE("subspace dimension formula") {
    // dim U + dim W == dim(U + W) + dim(U and W) on random subspaces.
    const FieldCtx<Fp> ctx{7};
    Rng rng(41);
    for (int t = 0; t < 12; ++t) {
        Rng r = rng.child(static_cast<std::uint64_t>(t));
        const Subspace<Fp> u = Subspace<Fp>::column_space(random_mat<Fp>(5, 2, r, ctx));
        const Subspace<Fp> w = Subspace<Fp>::column_space(random_mat<Fp>(5, 3, r, ctx));
        CHECK(u.dim() + w.dim() == sum(u, w).dim() + intersect(u, w).dim());
        CHECK(sum(u, w).contains(u));
        CHECK(u.contains(intersect(u, w)));
    }
}

TEST_CASE("rank-nullity through kernel and image") {
    const FieldCtx<Rat> ctx;
    Rng rng(43);
    for (int t = 0; t < 6; ++t) {
        Rng r = rng.child(static_cast<std::uint64_t>(t));
        const Mat<Rat> a = random_mat<Rat>(3, 5, r, ctx);
        CHECK(kernel(a).dim() + image(a).dim() == a.cols());
    }
}

TEST_CASE("subspace enumeration is exhaustive and canonical") {
    // Subspaces of F_2^3: 1 of dim 0, 7 of dim 1, 7 of dim 2, 1 of dim 3.
    const int expected[] = {1, 7, 7, 1};
    for (int k = 0; k <= 3; ++k) {
        CHECK(gaussian_binomial(3, k, 2) == expected[k]);
        SubspaceEnumerator en(3, k, 2);
        std::set<std::string> seen;
        int n = 0;
        while (auto s = en.next()) {
            ++n;
            CHECK(s->dim() == k);
            seen.insert(mat_str(s->basis()));
        }
        CHECK(n == expected[k]);
        CHECK(static_cast<int>(seen.size()) == n); // all distinct, canonical form
    }
    CHECK(gaussian_binomial(4, 2, 3) == 130);
    CHECK_THROWS_AS(SubspaceEnumerator(12, 6, 101, 1000), std::runtime_error);
}
