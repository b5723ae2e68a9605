#pragma once

#include <numbers>
#include <vector>

#include "rfswarm/gaussian.hpp"
#include "rfswarm/sensor_model.hpp"
#include "rfswarm/types.hpp"

namespace rfswarm {

/// Linear-Gaussian target dynamics with constant survival probability.
struct MotionModel {
    Mat2 transition = Mat2::Identity();        // F
    Mat2 process_noise = 0.2 * Mat2::Identity();  // Q
    double survival_probability = 0.1;         // p_S

    void validate() const;
};

/// Birth intensity anchored on a ring inside the field of view: component
/// l is centered at robot_pos + r_birth (cos theta_l, sin theta_l) with
/// r_birth = radius_fraction * fov_radius_m.
struct BirthModel {
    std::vector<double> weights{0.1, 0.1, 0.1, 0.1};
    std::vector<double> bearings_rad{std::numbers::pi / 4, 3 * std::numbers::pi / 4,
                                     5 * std::numbers::pi / 4, 7 * std::numbers::pi / 4};
    std::vector<Mat2> covariances = std::vector<Mat2>(4, 0.5 * Mat2::Identity());
    double radius_fraction = 0.8;
    double fov_radius_m = 0.6;

    static BirthModel none() { return {{}, {}, {}, 0.8, 0.6}; }

    std::size_t size() const noexcept { return weights.size(); }
    double ring_radius_m() const noexcept { return radius_fraction * fov_radius_m; }

    /// Birth components for a robot at `robot_pos`.
    std::vector<GaussianComponent> components_at(const Vec2& robot_pos) const;

    void validate() const;
};

/// Spawn intensity: each prior component i yields, per spawn term l, a
/// component (w_i w_l, F_l mu_i + d_l, Q_l + F_l P_i F_l^T). Disabled by
/// default.
struct SpawnModel {
    struct Term {
        double weight = 0.0;
        Mat2 transition = Mat2::Identity();
        Vec2 offset = Vec2::Zero();
        Mat2 noise = Mat2::Identity();
    };

    std::vector<Term> terms;
    bool enabled = false;

    std::size_t active_size() const noexcept { return enabled ? terms.size() : 0; }
    void validate() const;
};

struct PruneMergeConfig {
    double truncation_threshold = 1e-3;  // T
    double merge_threshold = 4.0;        // U, squared Mahalanobis distance
    std::size_t max_components = 100;    // J_max

    void validate() const;
};

struct ExtractOptions {
    double threshold = 0.5;
    /// Emit round(w) copies of each extracted component instead of one.
    bool replicate_by_rounded_weight = false;
};

struct ExtractedState {
    Vec2 mean = Vec2::Zero();
    double weight = 0.0;
    Mat2 covariance = Mat2::Identity();
};

/// Predicted intensity: survivors, then spawned terms, then births.
GaussianMixture predict(const GaussianMixture& prior, const MotionModel& motion,
                        const BirthModel& birth, const SpawnModel& spawn,
                        const Vec2& robot_pos);

/// Posterior intensity: missed-detection copies of every predicted
/// component, followed by one block of detection components per
/// measurement (in measurement order). p_D is evaluated at component means.
GaussianMixture update(const GaussianMixture& predicted, const std::vector<Vec2>& measurements,
                       const SensorModel& sensor, const Vec2& robot_pos);

/// Truncation, greedy Mahalanobis clustering around the heaviest remaining
/// component, moment-matched merging, and capping at max_components.
GaussianMixture prune_merge(const GaussianMixture& mixture, const PruneMergeConfig& config);

/// Components with weight above the threshold, heaviest first.
std::vector<ExtractedState> extract_states(const GaussianMixture& mixture,
                                           const ExtractOptions& options = {});

/// ceil(sum of weights), tolerant to 1e-9 of rounding noise.
std::size_t estimate_count(const GaussianMixture& mixture);

/// v(x) = sum_j w_j N(x; mu_j, P_j).
double intensity_at(const GaussianMixture& mixture, const Vec2& x);

}  // namespace rfswarm
