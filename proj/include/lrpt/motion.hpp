#pragma once

#include "lrpt/geometry.hpp"

namespace lrpt {

struct RobotPose {
    Vec2 position;
    double heading = 0.0;  // radians, (-pi, pi]
};

struct KinematicLimits {
    double v_max = 1.5;    // m/s
    double phi_max = 1.0;  // rad/s
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

/// One-second unicycle step toward `waypoint`. The robot turns by at most
/// phi_max; if the bearing error was within +-pi/2 it then advances up to
/// v_max along the new heading, never further than the waypoint distance.
RobotPose step_toward(const RobotPose& pose, Vec2 waypoint, const KinematicLimits& limits);

/// Ablation model: straight-line move of at most v_max, heading snapped to
/// the direction of travel.
RobotPose step_holonomic(const RobotPose& pose, Vec2 waypoint, const KinematicLimits& limits);

}  // namespace lrpt
