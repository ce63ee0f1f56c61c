#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "expansive/axioms.hpp"
#include "expansive/errors.hpp"
#include "expansive/order.hpp"
#include "expansive/point.hpp"
#include "expansive/space.hpp"

#include "test_util.hpp"

using namespace expansive;

TEST(Point, EqualityByKindAndKey) {
    const Point a = Point::indexed(3, 0.25);
    const Point b = Point::indexed(3, 99.0);  // same key wins over coord
    const Point c = Point::indexed(4, 0.25);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);

    const Point f1 = Point::free_point(0.5);
    const Point f2 = Point::free_point(0.5);
    const Point f3 = Point::free_point(0.5 + 1e-17);  // same double
    EXPECT_EQ(f1, f2);
    EXPECT_EQ(f1, f3);
    EXPECT_NE(f1, Point::free_point(0.25));
    EXPECT_NE(a, f1);  // indexed never equals free
}

TEST(ShrinkingFractions, CanonicalEnumerationAscending) {
    const Space s = Space::shrinking_fractions(64);
    ASSERT_EQ(s.size(), 65u);
    const auto& pts = s.points();
    EXPECT_EQ(pts.front().key(), 0);
    EXPECT_EQ(pts.front().coord(), 0.0);
    EXPECT_EQ(pts[1].key(), 64);
    EXPECT_EQ(pts[1].coord(), 1.0 / 64.0);
    EXPECT_EQ(pts.back().key(), 1);
    EXPECT_EQ(pts.back().coord(), 1.0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        EXPECT_LT(pts[i].coord(), pts[i + 1].coord());
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(s.position(pts[i]), i);
    EXPECT_EQ(s.depth(), 64);
}

TEST(ShrinkingFractions, MetricMatchesClosedForm) {
    // Independent oracle: d(1/r, 1/s) = 1/min(r,s) for r != s, d(0, 1/r) = 1/r.
    const Space s = Space::shrinking_fractions(32);
    const auto& pts = s.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_EQ(s.distance(pts[i], pts[i]), 0.0);
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const std::int64_t ri = pts[i].key();
            const std::int64_t rj = pts[j].key();
            double expected;
            if (ri == 0)
                expected = rj == 0 ? 0.0 : 1.0 / static_cast<double>(rj);
            else if (rj == 0)
                expected = 1.0 / static_cast<double>(ri);
            else
                expected = 1.0 / static_cast<double>(std::min(ri, rj));
            EXPECT_EQ(s.distance(pts[i], pts[j]), expected);
            EXPECT_EQ(s.distance(pts[j], pts[i]), expected);
        }
    }
}

TEST(ShrinkingFractions, PointsBeyondTruncationDepthStayValid) {
    const Space s = Space::shrinking_fractions(64);
    const Point deep = s.fraction_point(1000);
    EXPECT_EQ(deep.key(), 1000);
    EXPECT_EQ(deep.coord(), 1e-3);
    EXPECT_EQ(s.distance(deep, s.fraction_point(0)), 1e-3);
    EXPECT_EQ(s.distance(deep, s.fraction_point(500)), 1.0 / 500.0);
    EXPECT_EQ(s.label(deep), "1/1000");
    // Beyond-depth points have no canonical position.
    EXPECT_ERROR_CODE(ErrorCode::DomainError, s.position(deep));
}

TEST(ShrinkingFractions, FromCoordAndLabels) {
    const Space s = Space::shrinking_fractions(64);
    EXPECT_EQ(s.from_coord(0.2).key(), 5);
    EXPECT_EQ(s.from_coord(1.0).key(), 1);
    EXPECT_EQ(s.from_coord(0.0).key(), 0);
    EXPECT_EQ(s.label(s.fraction_point(0)), "0");
    EXPECT_EQ(s.label(s.fraction_point(1)), "1");
    EXPECT_EQ(s.label(s.fraction_point(5)), "1/5");
    EXPECT_ERROR_CODE(ErrorCode::DomainError, s.from_coord(0.3));
    EXPECT_ERROR_CODE(ErrorCode::DomainError, s.from_coord(-0.5));
    EXPECT_ERROR_CODE(ErrorCode::InvalidArgument, Space::shrinking_fractions(0));
}

TEST(FiniteLine, DistancesAreAbsoluteDifferences) {
    const Space s = Space::finite_line({0.0, 1.0, 3.0, 7.0});
    ASSERT_EQ(s.size(), 4u);
    const auto& pts = s.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            EXPECT_EQ(s.distance(pts[i], pts[j]),
                      std::fabs(pts[i].coord() - pts[j].coord()));
    EXPECT_EQ(s.from_coord(3.0), pts[2]);
    EXPECT_EQ(s.label(pts[2]), "3");
}

TEST(FiniteTabulated, ValidatesShapes) {
    EXPECT_ERROR_CODE(ErrorCode::InvalidArgument,
                      Space::finite_tabulated({"a", "b"}, {{0.0, 1.0}}));
    EXPECT_ERROR_CODE(
        ErrorCode::InvalidArgument,
        Space::finite_tabulated({"a", "b"}, {{0.0, 1.0}, {1.0, 0.0, 2.0}}));
    EXPECT_ERROR_CODE(
        ErrorCode::InvalidArgument,
        Space::finite_tabulated({"a", "b"}, {{0.0, 1.0}, {1.0, 0.0}}, {0.5}));
    // Label-only space: points carry no coordinates.
    const Space s = Space::finite_tabulated({"a", "b"}, {{0.0, 1.0}, {1.0, 0.0}});
    EXPECT_EQ(s.size(), 2u);
    EXPECT_FALSE(s.points()[0].has_coord());
    EXPECT_EQ(s.label(s.points()[1]), "b");
}

TEST(RealInterval, SamplingIsSeededAndInRange) {
    const Space s = Space::real_interval(2.0, 5.0);
    EXPECT_FALSE(s.enumerable());
    EXPECT_ERROR_CODE(ErrorCode::UnsupportedSpace, s.size());
    EXPECT_ERROR_CODE(ErrorCode::UnsupportedSpace, s.points());
    EXPECT_EQ(s.interval_lo(), 2.0);
    EXPECT_EQ(s.interval_hi(), 5.0);

    std::mt19937_64 rng1(7), rng2(7);
    for (int i = 0; i < 100; ++i) {
        const Point a = s.sample(rng1);
        const Point b = s.sample(rng2);
        EXPECT_EQ(a.coord(), b.coord());  // identical seeded streams
        EXPECT_GE(a.coord(), 2.0);
        EXPECT_LE(a.coord(), 5.0);
    }
    EXPECT_EQ(s.distance(Point::free_point(2.5), Point::free_point(4.0)), 1.5);
    EXPECT_EQ(s.from_coord(3.0).coord(), 3.0);
    EXPECT_ERROR_CODE(ErrorCode::DomainError, s.from_coord(5.5));
    EXPECT_ERROR_CODE(ErrorCode::InvalidArgument, Space::real_interval(1.0, 1.0));
}

TEST(MetricAxioms, PassOnBuiltInSpaces) {
    for (const Space& s : {Space::shrinking_fractions(16),
                           Space::finite_line({0.0, 0.5, 1.5, 4.0})}) {
        const CheckReport r = verify_metric_axioms(s);
        EXPECT_TRUE(r.passed());
        EXPECT_GT(r.pairs_examined, 0u);
        EXPECT_EQ(r.coverage.mode, Coverage::Mode::Exhaustive);
    }
    const CheckReport ri = verify_metric_axioms(Space::real_interval(0.0, 1.0), 2000, 3);
    EXPECT_TRUE(ri.passed());
    EXPECT_EQ(ri.coverage.mode, Coverage::Mode::Sampled);
    EXPECT_EQ(ri.coverage.seed, 3u);
}

TEST(MetricAxioms, DetectEachViolation) {
    // Identity broken: d(b,b) != 0.
    const Space ident = Space::finite_tabulated(
        {"a", "b"}, {{0.0, 1.0}, {1.0, 0.5}});
    const auto r1 = verify_metric_axioms(ident);
    ASSERT_FALSE(r1.passed());
    EXPECT_NE(r1.witness->detail.find("d(x,x)"), std::string::npos);

    // Positivity broken: distinct points at distance zero.
    const Space pos = Space::finite_tabulated(
        {"a", "b"}, {{0.0, 0.0}, {0.0, 0.0}});
    const auto r2 = verify_metric_axioms(pos);
    ASSERT_FALSE(r2.passed());

    // Symmetry broken.
    const Space sym = Space::finite_tabulated(
        {"a", "b"}, {{0.0, 1.0}, {2.0, 0.0}});
    const auto r3 = verify_metric_axioms(sym);
    ASSERT_FALSE(r3.passed());

    // Triangle broken: d(a,c) > d(a,b) + d(b,c).
    const Space tri = Space::finite_tabulated(
        {"a", "b", "c"},
        {{0.0, 1.0, 5.0}, {1.0, 0.0, 1.0}, {5.0, 1.0, 0.0}});
    const auto r4 = verify_metric_axioms(tri);
    ASSERT_FALSE(r4.passed());
    ASSERT_TRUE(r4.witness.has_value());
    EXPECT_TRUE(r4.witness->via.has_value());

    // Empty space is rejected outright.
    const Space empty = Space::finite_tabulated({}, {});
    EXPECT_ERROR_CODE(ErrorCode::EmptySpace, verify_metric_axioms(empty));
}

TEST(OrderAxioms, UsualAndShrinkingOrdersPass) {
    const Space line = Space::finite_line({0.0, 1.0, 2.0});
    EXPECT_TRUE(verify_order_axioms(line, PartialOrder::usual()).passed());

    const Space frac = Space::shrinking_fractions(32);
    EXPECT_TRUE(verify_order_axioms(frac, PartialOrder::example1()).passed());
    EXPECT_TRUE(verify_order_axioms(frac, PartialOrder::diagonal()).passed());
}

TEST(OrderAxioms, DetectEachViolation) {
    const Space line = Space::finite_line({0.0, 1.0, 2.0});

    // Missing diagonal entry -> reflexivity fails.
    const auto refl = PartialOrder::from_table({{0, 0}, {1, 1}, {0, 1}});
    EXPECT_FALSE(verify_order_axioms(line, refl).passed());

    // Two-cycle -> antisymmetry fails.
    const auto anti = PartialOrder::from_table(
        {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 0}});
    EXPECT_FALSE(verify_order_axioms(line, anti).passed());

    // Chain without its composite -> transitivity fails, witness carries the
    // middle point.
    const auto trans = PartialOrder::from_table(
        {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}});
    const auto rt = verify_order_axioms(line, trans);
    ASSERT_FALSE(rt.passed());
    ASSERT_TRUE(rt.witness.has_value());
    ASSERT_TRUE(rt.witness->via.has_value());
    EXPECT_EQ(rt.witness->via->key(), 1);
}

TEST(OrderAxioms, ShrinkingOrderLeavesOneIncomparable) {
    // x <= z iff x = z or x < z < 1: the point 1 relates only to itself.
    const Space s = Space::shrinking_fractions(8);
    const auto order = PartialOrder::example1();
    const Point one = s.fraction_point(1);
    const Point half = s.fraction_point(2);
    const Point zero = s.fraction_point(0);
    EXPECT_TRUE(order.leq(one, one));
    EXPECT_FALSE(order.leq(half, one));
    EXPECT_FALSE(order.leq(one, half));
    EXPECT_TRUE(order.leq(zero, half));
    EXPECT_FALSE(order.leq(half, zero));
}

TEST(ComparablePairs, ExactCountsAndCanonicalOrder) {
    // Table chain 0 <= 1 <= 2 with closure: exactly the 6 related pairs.
    const Space line = Space::finite_line({0.0, 1.0, 2.0});
    const auto chain = PartialOrder::from_table(
        {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}});
    const auto pairs = comparable_pairs(line, chain);
    EXPECT_EQ(pairs.size(), 6u);
    // Outer index before inner: (0,0) first, diagonal included.
    EXPECT_EQ(pairs.front().first.key(), 0);
    EXPECT_EQ(pairs.front().second.key(), 0);

    // Shrinking-fractions order at depth 64: 65 diagonal pairs plus all
    // ascending pairs among the 64 points below 1.
    const Space frac = Space::shrinking_fractions(64);
    const auto fp = comparable_pairs(frac, PartialOrder::example1());
    EXPECT_EQ(fp.size(), 65u + 64u * 63u / 2u);  // 65 + 2016 = 2081

    EXPECT_ERROR_CODE(
        ErrorCode::UnsupportedSpace,
        comparable_pairs(Space::real_interval(0.0, 1.0), PartialOrder::usual()));
}
