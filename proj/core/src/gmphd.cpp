#include "rfswarm/gmphd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "rfswarm/error.hpp"

namespace rfswarm {

namespace {

bool is_psd(const Mat2& m) {
    if (!m.allFinite() || std::abs(m(0, 1) - m(1, 0)) > 1e-12) return false;
    return m(0, 0) >= 0.0 && m(1, 1) >= 0.0 && m.determinant() >= -1e-15;
}

void require_probability(double p, const char* field) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(field, "must lie in [0, 1]");
}

}  // namespace

void MotionModel::validate() const {
    if (!transition.allFinite()) throw ConfigError("filter.transition", "must be finite");
    if (!is_psd(process_noise)) throw ConfigError("filter.process_noise", "must be symmetric PSD");
    require_probability(survival_probability, "filter.survival_probability");
}

void BirthModel::validate() const {
    if (bearings_rad.size() != weights.size() || covariances.size() != weights.size()) {
        throw ConfigError("birth", "weights, bearings and covariances must have equal length");
    }
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("birth.weights", "must be nonnegative");
    }
    for (const auto& p : covariances) {
        if (!is_valid_covariance(p)) throw ConfigError("birth.covariance", "must be symmetric PD");
    }
    if (!(radius_fraction >= 0.0)) throw ConfigError("birth.radius_fraction", "must be nonnegative");
}

std::vector<GaussianComponent> BirthModel::components_at(const Vec2& robot_pos) const {
    std::vector<GaussianComponent> out;
    out.reserve(weights.size());
    const double r = ring_radius_m();
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const Vec2 offset(r * std::cos(bearings_rad[l]), r * std::sin(bearings_rad[l]));
        out.push_back({weights[l], robot_pos + offset, covariances[l]});
    }
    return out;
}

void SpawnModel::validate() const {
    for (const auto& t : terms) {
        if (!(t.weight >= 0.0)) throw ConfigError("spawn.weight", "must be nonnegative");
        if (!is_psd(t.noise)) throw ConfigError("spawn.noise", "must be symmetric PSD");
    }
}

void PruneMergeConfig::validate() const {
    if (!(truncation_threshold >= 0.0)) throw ConfigError("prune.truncation_threshold", "must be >= 0");
    if (!(merge_threshold >= 0.0)) throw ConfigError("prune.merge_threshold", "must be >= 0");
    if (max_components < 1) throw ConfigError("prune.max_components", "must be >= 1");
}

GaussianMixture predict(const GaussianMixture& prior, const MotionModel& motion,
                        const BirthModel& birth, const SpawnModel& spawn,
                        const Vec2& robot_pos) {
    GaussianMixture out;
    out.components.reserve(prior.size() * (1 + spawn.active_size()) + birth.size());

    const Mat2& f = motion.transition;
    for (const auto& c : prior.components) {
        out.components.push_back({motion.survival_probability * c.weight, f * c.mean,
                                  motion.process_noise + f * c.covariance * f.transpose()});
    }
    if (spawn.enabled) {
        for (const auto& c : prior.components) {
            for (const auto& t : spawn.terms) {
                out.components.push_back(
                    {c.weight * t.weight, t.transition * c.mean + t.offset,
                     t.noise + t.transition * c.covariance * t.transition.transpose()});
            }
        }
    }
    for (auto& c : birth.components_at(robot_pos)) out.components.push_back(std::move(c));

    check_mixture(out, "predict");
    return out;
}

GaussianMixture update(const GaussianMixture& predicted, const std::vector<Vec2>& measurements,
                       const SensorModel& sensor, const Vec2& robot_pos) {
    const std::size_t n = predicted.size();
    const Mat2& h = sensor.observation;

    struct Innovation {
        double detection = 0.0;
        Vec2 predicted_z = Vec2::Zero();
        Eigen::LLT<Mat2> s_factor;
        Mat2 gain = Mat2::Zero();
        Mat2 posterior = Mat2::Zero();
        double s_det = 0.0;
    };
    std::vector<Innovation> terms(n);

    GaussianMixture out;
    out.components.reserve(n * (1 + measurements.size()));

    for (std::size_t j = 0; j < n; ++j) {
        const auto& c = predicted.components[j];
        auto& t = terms[j];
        t.detection = detection_probability(robot_pos, c.mean, sensor);
        out.components.push_back({(1.0 - t.detection) * c.weight, c.mean, c.covariance});
        if (t.detection <= 0.0) continue;

        const Mat2 s = h * c.covariance * h.transpose() + sensor.noise;
        t.s_factor.compute(s);
        if (t.s_factor.info() != Eigen::Success) {
            throw NumericError("update: innovation covariance is singular");
        }
        const Mat2 l = t.s_factor.matrixL();
        t.s_det = (l(0, 0) * l(1, 1)) * (l(0, 0) * l(1, 1));
        t.predicted_z = h * c.mean;
        // K = P H^T S^-1, computed as (S^-1 H P)^T since S and P are symmetric.
        t.gain = t.s_factor.solve(h * c.covariance).transpose();
        t.posterior = (Mat2::Identity() - t.gain * h) * c.covariance;
    }

    std::vector<double> numerators(n);
    for (const Vec2& z : measurements) {
        double denominator = sensor.clutter_intensity(z);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& t = terms[j];
            numerators[j] = 0.0;
            if (t.detection <= 0.0) continue;
            double likelihood = 0.0;
            if (t.s_det >= 1e-300) {
                const Vec2 whitened = t.s_factor.matrixL().solve(z - t.predicted_z);
                likelihood = std::exp(-0.5 * whitened.squaredNorm()) /
                             (2.0 * std::numbers::pi * std::sqrt(t.s_det));
            }
            numerators[j] = t.detection * predicted.components[j].weight * likelihood;
            denominator += numerators[j];
        }
        if (!(denominator > 0.0)) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const auto& t = terms[j];
            if (t.detection <= 0.0) continue;
            const auto& c = predicted.components[j];
            out.components.push_back({numerators[j] / denominator,
                                      c.mean + t.gain * (z - t.predicted_z), t.posterior});
        }
    }

    check_mixture(out, "update");
    return out;
}

GaussianMixture prune_merge(const GaussianMixture& mixture, const PruneMergeConfig& config) {
    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < mixture.size(); ++i) {
        if (mixture.components[i].weight >= config.truncation_threshold) remaining.push_back(i);
    }

    GaussianMixture out;
    while (!remaining.empty()) {
        auto dominant_it = std::max_element(
            remaining.begin(), remaining.end(), [&](std::size_t a, std::size_t b) {
                return mixture.components[a].weight < mixture.components[b].weight;
            });
        const auto& dominant = mixture.components[*dominant_it];
        Eigen::LLT<Mat2> metric(dominant.covariance);
        if (metric.info() != Eigen::Success) {
            throw NumericError("prune_merge: dominant covariance is not positive definite");
        }

        std::vector<std::size_t> cluster;
        std::vector<std::size_t> rest;
        for (std::size_t i : remaining) {
            const Vec2 d = mixture.components[i].mean - dominant.mean;
            const double distance = d.dot(metric.solve(d));
            (distance <= config.merge_threshold ? cluster : rest).push_back(i);
        }

        GaussianComponent merged;
        merged.weight = 0.0;
        merged.mean.setZero();
        for (std::size_t i : cluster) {
            merged.weight += mixture.components[i].weight;
            merged.mean += mixture.components[i].weight * mixture.components[i].mean;
        }
        if (merged.weight > 0.0) {
            merged.mean /= merged.weight;
            merged.covariance.setZero();
            for (std::size_t i : cluster) {
                const auto& c = mixture.components[i];
                const Vec2 spread = merged.mean - c.mean;
                merged.covariance += c.weight * (c.covariance + spread * spread.transpose());
            }
            merged.covariance /= merged.weight;
        } else {
            // Zero-weight clusters only arise with T = 0; keep the dominant shape.
            merged.mean = dominant.mean;
            merged.covariance = dominant.covariance;
        }
        out.components.push_back(merged);
        remaining = std::move(rest);
    }

    std::stable_sort(out.components.begin(), out.components.end(),
                     [](const GaussianComponent& a, const GaussianComponent& b) {
                         return a.weight > b.weight;
                     });
    if (out.components.size() > config.max_components) {
        out.components.resize(config.max_components);
    }
    return out;
}

std::vector<ExtractedState> extract_states(const GaussianMixture& mixture,
                                           const ExtractOptions& options) {
    std::vector<ExtractedState> out;
    for (const auto& c : mixture.components) {
        if (c.weight <= options.threshold) continue;
        std::size_t copies = 1;
        if (options.replicate_by_rounded_weight) {
            copies = static_cast<std::size_t>(std::llround(c.weight));
        }
        for (std::size_t k = 0; k < copies; ++k) out.push_back({c.mean, c.weight, c.covariance});
    }
    std::stable_sort(out.begin(), out.end(), [](const ExtractedState& a, const ExtractedState& b) {
        return a.weight > b.weight;
    });
    return out;
}

std::size_t estimate_count(const GaussianMixture& mixture) {
    const double total = mixture.total_weight();
    if (total <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(total - 1e-9));
}

double intensity_at(const GaussianMixture& mixture, const Vec2& x) {
    double value = 0.0;
    for (const auto& c : mixture.components) {
        if (c.weight == 0.0) continue;
        value += c.weight * gaussian_density(x, c.mean, c.covariance);
    }
    return value;
}

}  // namespace rfswarm
