#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "polyquant/geometry.hpp"
#include "test_support.hpp"

using namespace polyquant;
using polyquant::testing::same_set;

TEST(Geometry, SquareVertices) {
    const RegularPolygon p = polygon_new(4);
    ASSERT_EQ(p.vertices().size(), 4u);
    const Point2 expected[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int j = 0; j < 4; ++j) {
        EXPECT_NEAR(p.vertices()[j].x, expected[j].x, 1e-15);
        EXPECT_NEAR(p.vertices()[j].y, expected[j].y, 1e-15);
    }
}

TEST(Geometry, SideLengths) {
    EXPECT_NEAR(RegularPolygon(6).side_length(), 1.0, 1e-15);
    EXPECT_NEAR(RegularPolygon(3).side_length(), std::sqrt(3.0), 1e-15);
}

TEST(Geometry, RejectsDegeneratePolygons) {
    EXPECT_THROW(RegularPolygon(2), std::invalid_argument);
    EXPECT_THROW(RegularPolygon(0), std::invalid_argument);
    EXPECT_THROW(RegularPolygon(-5), std::invalid_argument);
    EXPECT_THROW(RegularPolygon(max_sides + 1), std::invalid_argument);
    EXPECT_NO_THROW(RegularPolygon(3));
}

TEST(Geometry, SidePointExamples) {
    const RegularPolygon sq(4);
    EXPECT_EQ(side_point(sq, 1, 0.0), (Point2{1, 0}));
    const Point2 mid = side_point(sq, 1, 0.5);
    EXPECT_NEAR(mid.x, 0.5, 1e-15);
    EXPECT_NEAR(mid.y, 0.5, 1e-15);

    const RegularPolygon hex(6);
    const Point2 v3 = side_point(hex, 2, 1.0);
    EXPECT_NEAR(v3.x, std::cos(2 * std::numbers::pi / 3), 1e-15);
    EXPECT_NEAR(v3.y, std::sin(2 * std::numbers::pi / 3), 1e-15);
    // Side m wraps around to vertex 1.
    EXPECT_EQ(side_point(hex, 6, 1.0), hex.vertex(1));
}

TEST(Geometry, SidePointRejectsBadArguments) {
    const RegularPolygon p(5);
    EXPECT_THROW(side_point(p, 0, 0.5), std::invalid_argument);
    EXPECT_THROW(side_point(p, 6, 0.5), std::invalid_argument);
    EXPECT_THROW(side_point(p, 1, -0.01), std::invalid_argument);
    EXPECT_THROW(side_point(p, 1, 1.01), std::invalid_argument);
    EXPECT_THROW(side_point(p, 1, std::nan("")), std::invalid_argument);
}

TEST(Geometry, SquaredDistance) {
    EXPECT_EQ(squared_distance({0, 0}, {3, 4}), 25.0);
    EXPECT_EQ(squared_distance({1, 1}, {1, 1}), 0.0);
    const Point2 v{std::cos(std::numbers::pi / 3), std::sin(std::numbers::pi / 3)};
    const double ell = RegularPolygon(6).side_length();
    EXPECT_NEAR(squared_distance({1, 0}, v), ell * ell, 1e-15);
    EXPECT_NEAR(squared_distance({1, 0}, v), 1.0, 1e-15);
}

TEST(Geometry, PolygonInvariantsAcrossSides) {
    for (int m : {3, 4, 5, 6, 7, 12, 100, 1000, 65537}) {
        const RegularPolygon p(m);
        const double ell = p.side_length();
        EXPECT_NEAR(ell, 2 * std::sin(std::numbers::pi / m), 1e-15);
        double perimeter = 0.0;
        for (int j = 1; j <= m; ++j) {
            const Point2 v = p.vertex(j);
            EXPECT_NEAR(norm(v), 1.0, 1e-12);
            EXPECT_NEAR(v.x, std::cos(2 * std::numbers::pi * (j - 1) / m), 1e-15);
            EXPECT_NEAR(v.y, std::sin(2 * std::numbers::pi * (j - 1) / m), 1e-15);
            const double side = std::sqrt(squared_distance(v, p.vertex(j + 1)));
            EXPECT_NEAR(side, ell, 1e-12);
            perimeter += side;
        }
        EXPECT_NEAR(p.perimeter(), m * 2 * std::sin(std::numbers::pi / m), 1e-12);
        // Summing measured sides accumulates ~m ulps of error.
        if (m <= 1000) {
            EXPECT_NEAR(perimeter, p.perimeter(), 1e-12) << "m=" << m;
        }
    }
}

TEST(Geometry, RotationPermutesVertices) {
    for (int m : {3, 5, 8, 17}) {
        const RegularPolygon p(m);
        std::vector<Point2> rotated;
        for (const auto& v : p.vertices()) rotated.push_back(rotate(v, 2 * std::numbers::pi / m));
        EXPECT_TRUE(same_set(rotated, p.vertices(), 1e-12)) << "m=" << m;
    }
}

TEST(Geometry, SidePointIsAffine) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const int m = std::uniform_int_distribution<int>(3, 40)(rng);
        const RegularPolygon p(m);
        const int j = std::uniform_int_distribution<int>(1, m)(rng);
        const double t1 = polyquant::testing::uniform(rng, 0, 1);
        const double t2 = polyquant::testing::uniform(rng, 0, 1);
        const Point2 mid = side_point(p, j, 0.5 * (t1 + t2));
        const Point2 avg = 0.5 * (side_point(p, j, t1) + side_point(p, j, t2));
        EXPECT_NEAR(mid.x, avg.x, 1e-14);
        EXPECT_NEAR(mid.y, avg.y, 1e-14);
    }
}

TEST(Geometry, BoundaryMeasureHasUnitMass) {
    for (int m : {3, 6, 11, 1000}) {
        const BoundaryMeasure mu{RegularPolygon(m)};
        EXPECT_NEAR(mu.total_mass(), 1.0, 1e-14);
        EXPECT_NEAR(mu.density() * mu.polygon().side_length(), mu.parameter_weight(), 1e-15);
    }
}
