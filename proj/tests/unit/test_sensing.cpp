#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rfswarm/error.hpp"
#include "rfswarm/random.hpp"
#include "rfswarm/sensing.hpp"

using namespace rfswarm;

TEST(DetectionProbability, DiscWithInclusiveBoundary) {
    const SensorModel s;
    const Vec2 robot(1, 1);
    EXPECT_DOUBLE_EQ(detection_probability(robot, robot, s), 0.8);
    EXPECT_DOUBLE_EQ(detection_probability(robot, robot + Vec2(1.2, 0), s), 0.0);
    EXPECT_DOUBLE_EQ(detection_probability(Vec2(0, 0), Vec2(0, 0.6), s), 0.8);
    EXPECT_DOUBLE_EQ(detection_probability(Vec2(0, 0), Vec2(0, 0.6000001), s), 0.0);
}

TEST(Measurements, EmptyWithoutTargetsOrClutter) {
    Rng rng(1);
    const ClutterModel clutter{.intensity_per_m2 = 0.0, .fov_radius_m = 0.6};
    const std::vector<Target> far{{0, Vec2(5, 5)}};
    for (int i = 0; i < 1000; ++i) {
        EXPECT_EQ(generate_measurements(Vec2(0, 0), far, SensorModel{}, clutter, rng).size(), 0u);
    }
}

TEST(Measurements, DetectionRate) {
    Rng rng(2);
    const ClutterModel clutter{.intensity_per_m2 = 0.0, .fov_radius_m = 0.6};
    const std::vector<Target> targets{{0, Vec2(0.2, 0.1)}};
    const int n = 100'000;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += static_cast<int>(generate_measurements(Vec2(0, 0), targets, SensorModel{}, clutter, rng).size());
    EXPECT_NEAR(static_cast<double>(hits) / n, 0.8, 0.005);
}

TEST(Measurements, ClutterMeanCount) {
    Rng rng(3);
    const ClutterModel clutter;
    const double expected = 3.98e-3 * std::numbers::pi * 0.36;
    EXPECT_NEAR(clutter.mean_count(), expected, 1e-15);
    EXPECT_NEAR(clutter.mean_count(), 4.5e-3, 1e-4);
    const int n = 1'000'000;
    std::size_t total = 0;
    for (int i = 0; i < n; ++i) total += generate_measurements(Vec2(0, 0), {}, SensorModel{}, clutter, rng).size();
    EXPECT_NEAR(static_cast<double>(total) / n, expected, 0.05 * expected);
}

TEST(Measurements, NoiseCovarianceMatchesR) {
    Rng rng(4);
    SensorModel s;
    s.detection_probability = 1.0;
    s.noise << 0.25, 0.05, 0.05, 0.16;
    const ClutterModel clutter{.intensity_per_m2 = 0.0, .fov_radius_m = 0.6};
    const Vec2 x(0.1, -0.1);
    const int n = 100'000;
    Mat2 acc = Mat2::Zero();
    for (int i = 0; i < n; ++i) {
        const auto m = generate_measurements(Vec2(0, 0), {{0, x}}, s, clutter, rng);
        ASSERT_EQ(m.size(), 1u);
        const Vec2 e = m.points[0] - x;
        acc += e * e.transpose();
    }
    acc /= n;
    EXPECT_LT((acc - s.noise).norm() / s.noise.norm(), 0.02);
}

TEST(Measurements, ClutterUniformOnDisc) {
    Rng rng(5);
    const int n = 100'000;
    double radius_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec2 p = sample_disc(Vec2(2, 3), 0.6, rng);
        const double r = (p - Vec2(2, 3)).norm();
        ASSERT_LE(r, 0.6);
        radius_sum += r;
    }
    EXPECT_NEAR(radius_sum / n, 0.4, 0.004);
}

TEST(Measurements, OutOfFovTargetsNeverMeasured) {
    Rng rng(6);
    SensorModel s;
    s.detection_probability = 1.0;
    const ClutterModel clutter{.intensity_per_m2 = 0.0, .fov_radius_m = 0.6};
    const std::vector<Target> targets{{0, Vec2(0.61, 0)}, {1, Vec2(-3, 2)}, {2, Vec2(0, -0.7)}};
    for (int i = 0; i < 10'000; ++i) {
        EXPECT_EQ(generate_measurements(Vec2(0, 0), targets, s, clutter, rng).size(), 0u);
    }
}

TEST(Measurements, DetectionsPrecedeClutterAndAreFlagged) {
    Rng rng(7);
    SensorModel s;
    s.detection_probability = 1.0;
    const ClutterModel clutter{.intensity_per_m2 = 20.0, .fov_radius_m = 0.6};
    const auto m = generate_measurements(Vec2(0, 0), {{0, Vec2(0, 0)}}, s, clutter, rng, 3, 9);
    ASSERT_GE(m.size(), 1u);
    EXPECT_EQ(m.robot, 3u);
    EXPECT_EQ(m.step, 9);
    EXPECT_FALSE(m.is_clutter[0]);
    for (std::size_t i = 1; i < m.size(); ++i) {
        EXPECT_TRUE(m.is_clutter[i]);
        EXPECT_LE(m.points[i].norm(), 0.6);
    }
}

TEST(ClutterDensity, ConstantOnDisc) {
    const ClutterModel clutter;
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const Vec2 z = sample_disc(Vec2(1, 1), 0.6, rng);
        EXPECT_DOUBLE_EQ(clutter_density(z, Vec2(1, 1), clutter), 3.98e-3);
    }
    const ClutterModel none{.intensity_per_m2 = 0.0, .fov_radius_m = 0.6};
    EXPECT_EQ(clutter_density(Vec2(1, 1), Vec2(1, 1), none), 0.0);
    EXPECT_THROW(clutter_density(Vec2(3, 1), Vec2(1, 1), clutter), DomainError);
}

TEST(Random, SubstreamsDiffer) {
    EXPECT_NE(derive_seed(1, 0, StreamPurpose::motion), derive_seed(1, 1, StreamPurpose::motion));
    EXPECT_NE(derive_seed(1, 0, StreamPurpose::motion), derive_seed(1, 0, StreamPurpose::sensing));
    EXPECT_NE(derive_seed(1, 0, StreamPurpose::motion), derive_seed(2, 0, StreamPurpose::motion));
    EXPECT_EQ(derive_seed(9, 4, StreamPurpose::placement), derive_seed(9, 4, StreamPurpose::placement));
}

TEST(Random, SamplerMoments) {
    Rng rng(9);
    const int n = 200'000;
    double su = 0, sn = 0, sn2 = 0, sp = 0;
    std::array<int, 7> idx{};
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        su += u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
        sp += static_cast<double>(rng.poisson(2.5));
        ++idx[rng.uniform_index(7)];
    }
    EXPECT_NEAR(su / n, 0.5, 0.005);
    EXPECT_NEAR(sn / n, 0.0, 0.01);
    EXPECT_NEAR(sn2 / n, 1.0, 0.01);
    EXPECT_NEAR(sp / n, 2.5, 0.02);
    for (int c : idx) EXPECT_NEAR(static_cast<double>(c) / n, 1.0 / 7.0, 0.005);
    EXPECT_EQ(rng.poisson(0.0), 0u);
}

TEST(Random, LargePoissonMean) {
    Rng rng(10);
    double s = 0;
    const int n = 20'000;
    for (int i = 0; i < n; ++i) s += static_cast<double>(rng.poisson(95.0));
    EXPECT_NEAR(s / n, 95.0, 0.3);
}
