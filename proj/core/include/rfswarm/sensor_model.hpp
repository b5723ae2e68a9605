#pragma once

#include <functional>

#include "rfswarm/types.hpp"

namespace rfswarm {

/// Linear-Gaussian sensor with a disc-shaped field of view.
struct SensorModel {
    Mat2 observation = Mat2::Identity();          // H
    Mat2 noise = 0.25 * Mat2::Identity();         // R
    double detection_probability = 0.8;           // p_D inside the disc
    double fov_radius_m = 0.6;                    // r_FOV
    /// kappa(z): clutter intensity per unit measurement area.
    std::function<double(const Vec2&)> clutter_intensity = [](const Vec2&) { return 0.0; };

    /// Throws ConfigError when a field violates its invariant.
    void validate() const;
};

/// p_D when |x - robot_pos| <= r_FOV (boundary inclusive), else 0.
double detection_probability(const Vec2& robot_pos, const Vec2& x, const SensorModel& sensor);

}  // namespace rfswarm
