#include "rfswarm/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "rfswarm/error.hpp"

namespace rfswarm {

double GaussianMixture::total_weight() const noexcept {
    double total = 0.0;
    for (const auto& c : components) total += c.weight;
    return total;
}

bool is_valid_covariance(const Mat2& covariance) {
    if (!covariance.allFinite()) return false;
    if (std::abs(covariance(0, 1) - covariance(1, 0)) > 1e-12) return false;
    Eigen::LLT<Mat2> llt(covariance);
    return llt.info() == Eigen::Success;
}

double gaussian_density(const Vec2& x, const Vec2& mean, const Mat2& covariance) {
    Eigen::LLT<Mat2> llt(covariance);
    if (llt.info() != Eigen::Success) {
        throw NumericError("covariance is not positive definite");
    }
    const Mat2 l = llt.matrixL();
    const double det = (l(0, 0) * l(1, 1)) * (l(0, 0) * l(1, 1));
    if (det < 1e-300) return 0.0;
    const Vec2 whitened = llt.matrixL().solve(x - mean);
    return std::exp(-0.5 * whitened.squaredNorm()) / (2.0 * std::numbers::pi * std::sqrt(det));
}

void check_mixture(const GaussianMixture& mixture, const char* where) {
    for (std::size_t i = 0; i < mixture.size(); ++i) {
        const auto& c = mixture.components[i];
        if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
            throw NumericError(std::string(where) + ": component " + std::to_string(i) +
                               " has an invalid weight");
        }
        if (!c.mean.allFinite() || !is_valid_covariance(c.covariance)) {
            throw NumericError(std::string(where) + ": component " + std::to_string(i) +
                               " has a non positive-definite covariance");
        }
    }
}

}  // namespace rfswarm
