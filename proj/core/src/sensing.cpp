#include "rfswarm/sensing.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>

#include "rfswarm/error.hpp"

namespace rfswarm {

void SensorModel::validate() const {
    if (!(detection_probability >= 0.0 && detection_probability <= 1.0)) {
        throw ConfigError("sensor.detection_probability", "must lie in [0, 1]");
    }
    if (!(fov_radius_m > 0.0) || !std::isfinite(fov_radius_m)) {
        throw ConfigError("sensor.fov_radius_m", "must be positive");
    }
    if (!observation.allFinite()) throw ConfigError("sensor.observation", "must be finite");
    if (std::abs(noise(0, 1) - noise(1, 0)) > 1e-12 ||
        Eigen::LLT<Mat2>(noise).info() != Eigen::Success) {
        throw ConfigError("sensor.noise", "must be symmetric positive definite");
    }
}

double detection_probability(const Vec2& robot_pos, const Vec2& x, const SensorModel& sensor) {
    return (x - robot_pos).norm() <= sensor.fov_radius_m ? sensor.detection_probability : 0.0;
}

double ClutterModel::area_m2() const noexcept {
    return std::numbers::pi * fov_radius_m * fov_radius_m;
}

void ClutterModel::validate() const {
    if (!(intensity_per_m2 >= 0.0) || !std::isfinite(intensity_per_m2)) {
        throw ConfigError("clutter.intensity_per_m2", "must be nonnegative");
    }
    if (!(fov_radius_m > 0.0)) throw ConfigError("clutter.fov_radius_m", "must be positive");
}

Vec2 sample_disc(const Vec2& center, double radius, Rng& rng) {
    const double r = radius * std::sqrt(rng.uniform());
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    return center + Vec2(r * std::cos(angle), r * std::sin(angle));
}

MeasurementSet generate_measurements(const Vec2& robot_pos, const std::vector<Target>& targets,
                                     const SensorModel& sensor, const ClutterModel& clutter,
                                     Rng& rng, RobotId robot, Step step) {
    MeasurementSet out;
    out.robot = robot;
    out.step = step;

    const Mat2 noise_factor = Eigen::LLT<Mat2>(sensor.noise).matrixL();
    for (const auto& target : targets) {
        const double pd = detection_probability(robot_pos, target.position, sensor);
        if (pd <= 0.0 || !rng.bernoulli(pd)) continue;
        const double n0 = rng.normal();
        const double n1 = rng.normal();
        out.points.push_back(sensor.observation * target.position + noise_factor * Vec2(n0, n1));
        out.is_clutter.push_back(false);
    }

    const std::uint64_t clutter_count = rng.poisson(clutter.mean_count());
    for (std::uint64_t i = 0; i < clutter_count; ++i) {
        out.points.push_back(sample_disc(robot_pos, clutter.fov_radius_m, rng));
        out.is_clutter.push_back(true);
    }
    return out;
}

double clutter_density(const Vec2& z, const Vec2& robot_pos, const ClutterModel& clutter) {
    if ((z - robot_pos).norm() > clutter.fov_radius_m) {
        throw DomainError("clutter density queried outside the field of view");
    }
    // lambda_C * A_s * (1 / A_s); the area cancels exactly.
    return clutter.intensity_per_m2;
}

}  // namespace rfswarm
