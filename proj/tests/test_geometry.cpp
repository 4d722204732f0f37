#include "lgrpo/geometry.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using lgrpo::ErrorCode;
using lgrpo::LatentVector;
using testdata::error_of;

TEST(Geometry, ProjectsThreeFourFive) {
    const auto u = lgrpo::spherical_project(LatentVector({3.0, 4.0}));
    EXPECT_NEAR(u[0], 0.6, 1e-15);
    EXPECT_NEAR(u[1], 0.8, 1e-15);
}

TEST(Geometry, ProjectionIsIdempotentAndScaleFree) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        const auto m = testdata::gaussian_group(rng, 1, 1 + t % 50);
        const auto u = lgrpo::spherical_project(LatentVector(m[0]));
        EXPECT_NEAR(lgrpo::vec::norm(u.values()), 1.0, 1e-9);
        const auto again = lgrpo::spherical_project(u.values());
        EXPECT_LE(testdata::max_abs_diff(u.values(), again.values()), 1e-9);

        std::vector<double> scaled = m[0];
        const double c = std::exp(std::uniform_real_distribution<double>(-20, 20)(rng));
        for (double& x : scaled) {
            x *= c;
        }
        const auto us = lgrpo::spherical_project(LatentVector(scaled));
        EXPECT_LE(testdata::max_abs_diff(u.values(), us.values()), 1e-12);
        const LatentVector as_latent(std::vector<double>(u.values().begin(), u.values().end()));
        EXPECT_NEAR(lgrpo::cosine_similarity(LatentVector(m[0]), as_latent), 1.0, 1e-9);
    }
}

TEST(Geometry, ZeroVectorIsRejected) {
    EXPECT_EQ(error_of([] { lgrpo::spherical_project(LatentVector({0.0, 0.0, 0.0})); }),
              ErrorCode::ZeroNormVector);
    EXPECT_EQ(error_of([] { lgrpo::spherical_project(LatentVector({1e-13})); }), ErrorCode::ZeroNormVector);
}

TEST(Geometry, LatentVectorInvariants) {
    EXPECT_EQ(error_of([] { LatentVector(std::vector<double>{}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(error_of([] { LatentVector({1.0, std::numeric_limits<double>::quiet_NaN()}); }),
              ErrorCode::NonFiniteValue);
    EXPECT_EQ(error_of([] { LatentVector({std::numeric_limits<double>::infinity()}); }),
              ErrorCode::NonFiniteValue);
}

TEST(Geometry, UnitVectorRequiresUnitNorm) {
    EXPECT_EQ(error_of([] { lgrpo::UnitVector::from_unit_values({1.0, 1.0}); }), ErrorCode::InvalidArgument);
    EXPECT_NO_THROW(lgrpo::UnitVector::from_unit_values({0.6, 0.8}));
}

TEST(Geometry, DistanceExamples) {
    const auto e1 = lgrpo::UnitVector::from_unit_values({1.0, 0.0});
    const auto e2 = lgrpo::UnitVector::from_unit_values({0.0, 1.0});
    const auto m1 = lgrpo::UnitVector::from_unit_values({-1.0, 0.0});
    EXPECT_EQ(lgrpo::euclidean_distance(e1, e1), 0.0);
    EXPECT_DOUBLE_EQ(lgrpo::euclidean_distance(e1, m1), 2.0);
    EXPECT_NEAR(lgrpo::euclidean_distance(e1, e2), 1.41421356, 1e-8);
    EXPECT_EQ(error_of([&] { lgrpo::euclidean_distance(e1, lgrpo::UnitVector::from_unit_values({1.0})); }),
              ErrorCode::DimensionMismatch);
}

TEST(Geometry, CosineExamples) {
    const LatentVector v({1.0, -2.0, 0.5});
    const LatentVector minus_v({-1.0, 2.0, -0.5});
    EXPECT_NEAR(lgrpo::cosine_similarity(v, v), 1.0, 1e-12);
    EXPECT_NEAR(lgrpo::cosine_similarity(v, minus_v), -1.0, 1e-12);
    EXPECT_EQ(lgrpo::cosine_similarity(LatentVector({1.0, 0.0}), LatentVector({0.0, 1.0})), 0.0);
    EXPECT_EQ(error_of([] { lgrpo::cosine_similarity(LatentVector({0.0, 0.0}), LatentVector({1.0, 0.0})); }),
              ErrorCode::ZeroNormVector);
    EXPECT_EQ(error_of([] { lgrpo::cosine_similarity(LatentVector({1.0}), LatentVector({1.0, 0.0})); }),
              ErrorCode::DimensionMismatch);
}

TEST(Geometry, LawOfCosinesAndSymmetry) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 300; ++t) {
        const auto m = testdata::gaussian_group(rng, 2, 1 + t % 40);
        const LatentVector a(m[0]);
        const LatentVector b(m[1]);
        const auto ua = lgrpo::spherical_project(a);
        const auto ub = lgrpo::spherical_project(b);
        const double dist = lgrpo::euclidean_distance(ua, ub);
        const double cos = lgrpo::cosine_similarity(a, b);
        EXPECT_NEAR(dist * dist, 2.0 - 2.0 * cos, 1e-9);
        EXPECT_EQ(cos, lgrpo::cosine_similarity(b, a));
        EXPECT_EQ(dist, lgrpo::euclidean_distance(ub, ua));
        EXPECT_LE(dist, 2.0);
        EXPECT_GE(cos, -1.0);
        EXPECT_LE(cos, 1.0);
    }
}

TEST(Geometry, KernelsMatchNaiveSums) {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n < 23; ++n) {
        const auto m = testdata::gaussian_group(rng, 2, n);
        double dot = 0.0;
        double sq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            dot += m[0][k] * m[1][k];
            sq += (m[0][k] - m[1][k]) * (m[0][k] - m[1][k]);
        }
        EXPECT_NEAR(lgrpo::vec::dot(m[0], m[1]), dot, 1e-12);
        EXPECT_NEAR(lgrpo::vec::squared_distance(m[0], m[1]), sq, 1e-12);
    }
}

TEST(Geometry, GroupValidation) {
    using lgrpo::TrajectoryGroup;
    EXPECT_EQ(error_of([] { TrajectoryGroup({}); }), ErrorCode::EmptyInput);
    EXPECT_EQ(error_of([] { TrajectoryGroup({LatentVector({1.0}), LatentVector({1.0, 2.0})}); }),
              ErrorCode::DimensionMismatch);
    EXPECT_EQ(error_of([] { TrajectoryGroup({LatentVector({1.0})}, std::vector<double>{0.5, 0.5}); }),
              ErrorCode::LengthMismatch);
    EXPECT_EQ(error_of([] { TrajectoryGroup({LatentVector({1.0})}, std::vector<double>{1.5}); }),
              ErrorCode::LabelOutOfRange);
    const TrajectoryGroup g({LatentVector({1.0, 2.0}), LatentVector({3.0, 4.0})}, std::vector<double>{0.0, 1.0},
                            "p1");
    EXPECT_EQ(g.size(), 2u);
    EXPECT_EQ(g.dim(), 2u);
    EXPECT_EQ(g.prompt_id(), "p1");
    EXPECT_TRUE(g.has_labels());
}
