#pragma once

#include <cstdint>
#include <vector>

#include "rfswarm/random.hpp"
#include "rfswarm/sensor_model.hpp"
#include "rfswarm/types.hpp"

namespace rfswarm {

struct Target {
    std::size_t id = 0;
    Vec2 position = Vec2::Zero();
};

/// Poisson clutter uniform over the sensor disc.
struct ClutterModel {
    double intensity_per_m2 = 3.98e-3;  // lambda_C
    double fov_radius_m = 0.6;

    /// A_s = pi r^2.
    double area_m2() const noexcept;
    /// Expected clutter points per scan, lambda_C * A_s.
    double mean_count() const noexcept { return intensity_per_m2 * area_m2(); }

    void validate() const;
};

struct MeasurementSet {
    RobotId robot = 0;
    Step step = 0;
    std::vector<Vec2> points;
    /// Parallel to points; true for clutter-originated points. Logging only,
    /// the filter never sees it.
    std::vector<bool> is_clutter;

    std::size_t size() const noexcept { return points.size(); }
};

/// Detections of in-FoV targets (each with probability p_D, corrupted by
/// N(0, R)) followed by Poisson(lambda_C A_s) clutter points drawn
/// uniformly on the FoV disc.
MeasurementSet generate_measurements(const Vec2& robot_pos, const std::vector<Target>& targets,
                                     const SensorModel& sensor, const ClutterModel& clutter,
                                     Rng& rng, RobotId robot = 0, Step step = 0);

/// kappa(z) = lambda_C A_s U(z) = lambda_C for z on the FoV disc.
/// Throws DomainError when z lies outside the disc.
double clutter_density(const Vec2& z, const Vec2& robot_pos, const ClutterModel& clutter);

/// Uniform point on a disc (radius r sqrt(u), uniform angle).
Vec2 sample_disc(const Vec2& center, double radius, Rng& rng);

}  // namespace rfswarm
