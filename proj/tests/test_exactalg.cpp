#include "test_support.hpp"

#include <doctest.h>

using namespace hilb;
using hilbtest::Rng;

TEST_CASE("rationals stay reduced with positive denominator") {
    Rational q(6, 8);
    CHECK(numerator(q) == 3);
    CHECK(denominator(q) == 4);
    Rational neg = rat(3, -4);
    CHECK(numerator(neg) == -3);
    CHECK(denominator(neg) == 4);
    CHECK_THROWS_AS(rat(1, 0), std::invalid_argument);
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        Rational a = rng.rational(50, 20), b = rng.rational(50, 20);
        Rational s = a * b + a - b;
        CHECK(denominator(s) > 0);
        CHECK(boost::multiprecision::gcd(Int(boost::multiprecision::abs(numerator(s))), denominator(s)) == 1);
    }
}

TEST_CASE("solve_linear: identity, Vandermonde column, inconsistent rows") {
    SUBCASE("identity") {
        Mat id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        auto res = solve_linear({id, {1, 2, 3}});
        REQUIRE(res.kind == SolveKind::Unique);
        CHECK(res.solution == Vec{1, 2, 3});
    }
    SUBCASE("del Pezzo threefold column, n=3 d=7") {
        // rhs (1/(n-2)!, (n-1+d)/(n-1)!, (n(n-1)+2(n+1)d)/n!)
        Vec rhs{1, rat(9, 2), rat(31, 3)};
        auto res = solve_linear({vandermonde({0, 1, 2}), rhs});
        REQUIRE(res.kind == SolveKind::Unique);
        CHECK(res.solution == Vec{1, rat(7, 3), rat(7, 6)});
    }
    SUBCASE("inconsistent") {
        auto res = solve_linear({{{1, 1}, {1, 1}}, {0, 1}});
        CHECK(res.kind == SolveKind::Inconsistent);
    }
    SUBCASE("underdetermined reports nullity") {
        auto res = solve_linear({{{1, 1, 0}}, {2}});
        REQUIRE(res.kind == SolveKind::Underdetermined);
        CHECK(res.nullity == 2);
    }
}

TEST_CASE("vandermonde entries and degenerate nodes") {
    CHECK(vandermonde({0}) == Mat{{1}});
    CHECK(vandermonde({0, 1, 2}) == Mat{{1, 0, 0}, {1, 1, 1}, {1, 2, 4}});
    Mat u4 = vandermonde({0, 1, 2, 3});
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) CHECK(u4[i][k] == pow_int(Rational(i), k));
    CHECK_THROWS_AS(vandermonde({1, 2, 1}), std::invalid_argument);
}

TEST_CASE("vandermonde solve interpolates exactly") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> nodes;
        for (int i = 0; i < 4; ++i) nodes.push_back(Rational(i) + rng.rational(2, 3) / 100);
        bool distinct = true;
        for (size_t i = 0; i < nodes.size() && distinct; ++i)
            for (size_t j = i + 1; j < nodes.size(); ++j)
                if (nodes[i] == nodes[j]) distinct = false;
        if (!distinct) continue;
        Vec values;
        for (int i = 0; i < 4; ++i) values.push_back(rng.rational());
        auto res = solve_linear({vandermonde(nodes), values});
        REQUIRE(res.kind == SolveKind::Unique);
        UniPoly interp = UniPoly::from_coeffs(res.solution);
        for (int i = 0; i < 4; ++i) CHECK(interp.eval(nodes[static_cast<size_t>(i)]) == values[static_cast<size_t>(i)]);
    }
}

TEST_CASE("substitute_affine: identity, centering, inverse maps") {
    BiPoly xy = BiPoly::x() + BiPoly::y();
    CHECK(substitute_affine(xy, 1, 0, 0, 1, 0, 0) == xy);

    // P^2 surface conic recentered: p(1/2+u, v) = 1/2((3u-v)^2 - 1/4)
    BiPoly p = surface_hc({9, -3, 1, 1});
    BiPoly centered = substitute_affine(p, 1, 0, 0, 1, rat(1, 2), 0);
    BiPoly w = BiPoly::linear(3, -1, 0);
    CHECK(centered == (w * w - BiPoly(rat(1, 4))) * rat(1, 2));

    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        Rational m11 = rng.rational(), m12 = rng.rational(), m21 = rng.rational(), m22 = rng.rational();
        Rational det = m11 * m22 - m12 * m21;
        if (det == 0) continue;
        Rational s1 = rng.rational(), s2 = rng.rational();
        BiPoly q = rng.bipoly();
        BiPoly fwd = substitute_affine(q, m11, m12, m21, m22, s1, s2);
        // inverse affine map
        Rational i11 = m22 / det, i12 = -m12 / det, i21 = -m21 / det, i22 = m11 / det;
        Rational t1 = -(i11 * s1 + i12 * s2), t2 = -(i21 * s1 + i22 * s2);
        CHECK(substitute_affine(fwd, i11, i12, i21, i22, t1, t2) == q);
    }
}

TEST_CASE("top_form picks the degree-n part") {
    BiPoly p(1);
    for (int i = 1; i <= 3; ++i) p = p * BiPoly::linear(-4, 1, Rational(i));
    p = p * rat(1, 6);
    BiPoly z = BiPoly::linear(-4, 1, 0);
    CHECK(top_form(p, 3) == z * z * z * rat(1, 6));
    CHECK(top_form(BiPoly(1), 2) == BiPoly());
    CHECK_THROWS_AS(top_form(p, 2), std::invalid_argument);

    // nef-value direction of the scroll family at infinity
    BiPoly sc = scroll_over_curve(3, 1, 0, 3);
    CHECK(top_form(sc, 3).eval(1, 3) == 0);
}

TEST_CASE("restrict_to_line recovers q or signals rank two") {
    auto p3 = closed_form(FanoKind::Pn, 3, 1);
    UniPoly q = restrict_to_line(p3.expanded, 1, 4);
    CHECK(q == hilbtest::q_product(rat(1, 6), {{1, 1}, {2, 1}, {3, 1}}));

    auto f1 = fano_hc({2, 1, 1, {1, 9, 25}});
    CHECK(restrict_to_line(f1.expanded, 1, 1) ==
          hilbtest::q_product(4, {{rat(1, 2), 2}}));

    CHECK_THROWS_AS(restrict_to_line(scroll_over_curve(3, 1, 0, 3), 1, 3), RankTwoError);

    // round trip: q(ry - iota x) restricts back to q
    Rng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        UniPoly qq = rng.unipoly(4);
        int r = rng.uniform(1, 3), iota = rng.uniform(1, 4);
        CHECK(restrict_to_line(compose_line(qq, r, iota), r, iota) == qq);
    }
}

TEST_CASE("rational_roots: multiplicity, irrational cofactor, reconstruction") {
    auto rr = rational_roots(UniPoly::from_coeffs({1, 4, 4}));
    REQUIRE(rr.roots.size() == 1);
    CHECK(rr.roots[0] == std::pair<Rational, int>{rat(-1, 2), 2});
    CHECK(rr.cofactor == UniPoly(1));

    auto irr = rational_roots(UniPoly::from_coeffs({rat(-1, 7), 0, 1}));
    CHECK(irr.roots.empty());
    CHECK(irr.cofactor == UniPoly::from_coeffs({rat(-1, 7), 0, 1}));

    auto triple = rational_roots(hilbtest::q_product(rat(1, 6), {{1, 1}, {2, 1}, {3, 1}}));
    REQUIRE(triple.roots.size() == 3);
    CHECK(triple.roots[0].first == -3);
    CHECK(triple.roots[1].first == -2);
    CHECK(triple.roots[2].first == -1);

    Rng rng(59);
    for (int trial = 0; trial < 40; ++trial) {
        UniPoly q = rng.unipoly(5);
        if (q.is_zero()) continue;
        auto roots = rational_roots(q);
        UniPoly rebuilt(q.lead());
        for (const auto& [root, m] : roots.roots)
            for (int i = 0; i < m; ++i) rebuilt = rebuilt * UniPoly::linear(-root);
        rebuilt = rebuilt * roots.cofactor;
        CHECK(rebuilt == q);
        if (q.degree() >= 1)
            CHECK(count_real_roots(q, true) >= static_cast<int>(roots.roots.size()));
    }
}

TEST_CASE("count_real_roots via Sturm sequences") {
    CHECK(count_real_roots(UniPoly::from_coeffs({1, 0, 1}), true) == 0);
    CHECK(count_real_roots(UniPoly::from_coeffs({rat(-1, 7), 0, 1}), true) == 2);
    CHECK(count_real_roots(UniPoly::from_coeffs({1, 2, 1}), true) == 1);
    CHECK(count_real_roots(UniPoly::from_coeffs({1, 2, 1}), false) == 2);
    // (z-1)^2 (z+2) (z^2+1)
    UniPoly q = hilbtest::q_product(1, {{-1, 2}, {2, 1}}) * UniPoly::from_coeffs({1, 0, 1});
    CHECK(count_real_roots(q, true) == 2);
    CHECK(count_real_roots(q, false) == 3);
}

TEST_CASE("unipoly division and gcd basics") {
    UniPoly a = hilbtest::q_product(2, {{1, 2}, {-3, 1}});
    UniPoly b = hilbtest::q_product(1, {{1, 1}});
    UniPoly quo, rem;
    UniPoly::divmod(a, b, quo, rem);
    CHECK(rem.is_zero());
    CHECK(quo * b == a);
    CHECK(gcd(a, b) == UniPoly::linear(1));
    CHECK(squarefree_part(a) == hilbtest::q_product(1, {{1, 1}, {-3, 1}}));
}
