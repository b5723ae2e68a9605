#pragma once

#include <Eigen/Core>

namespace rfswarm {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

using NodeId = std::size_t;
using RobotId = std::size_t;
using Step = long;

}  // namespace rfswarm
