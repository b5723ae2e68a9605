#pragma once

#include <vector>

#include "rfswarm/types.hpp"

namespace rfswarm {

struct GaussianComponent {
    double weight = 0.0;
    Vec2 mean = Vec2::Zero();
    Mat2 covariance = Mat2::Identity();
};

/// Weighted sum of Gaussians representing a PHD intensity.
struct GaussianMixture {
    std::vector<GaussianComponent> components;

    std::size_t size() const noexcept { return components.size(); }
    bool empty() const noexcept { return components.empty(); }
    double total_weight() const noexcept;
};

/// N(x; mean, covariance) via Cholesky. Returns 0 when the determinant
/// underflows below 1e-300; throws NumericError when the covariance is
/// not positive definite.
double gaussian_density(const Vec2& x, const Vec2& mean, const Mat2& covariance);

/// Symmetric within 1e-12 and Cholesky-factorizable.
bool is_valid_covariance(const Mat2& covariance);

/// Throws NumericError if any component has a negative weight or an
/// invalid covariance. `where` names the operation for the message.
void check_mixture(const GaussianMixture& mixture, const char* where);

}  // namespace rfswarm
