#include "lrpt/motion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lrpt {

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    if (a > std::numbers::pi) a -= two_pi;
    return a;
}

RobotPose step_toward(const RobotPose& pose, Vec2 waypoint, const KinematicLimits& limits) {
    const double dx = waypoint.x - pose.position.x;
    const double dy = waypoint.y - pose.position.y;
    const double dist = std::hypot(dx, dy);
    if (dist == 0.0) return pose;

    const double error = wrap_angle(std::atan2(dy, dx) - pose.heading);
    RobotPose next = pose;
    next.heading = wrap_angle(pose.heading + std::clamp(error, -limits.phi_max, limits.phi_max));
    if (std::abs(error) <= std::numbers::pi / 2.0) {
        const double advance = std::min(limits.v_max, dist);
        next.position.x += advance * std::cos(next.heading);
        next.position.y += advance * std::sin(next.heading);
    }
    return next;
}

RobotPose step_holonomic(const RobotPose& pose, Vec2 waypoint, const KinematicLimits& limits) {
    const double dx = waypoint.x - pose.position.x;
    const double dy = waypoint.y - pose.position.y;
    const double dist = std::hypot(dx, dy);
    if (dist == 0.0) return pose;
    RobotPose next = pose;
    next.heading = std::atan2(dy, dx);
    if (dist <= limits.v_max) {
        next.position = waypoint;
    } else {
        next.position.x += limits.v_max * dx / dist;
        next.position.y += limits.v_max * dy / dist;
    }
    return next;
}

}  // namespace lrpt
