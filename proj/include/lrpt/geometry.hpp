#pragma once

#include <cmath>
#include <cstdint>

namespace lrpt {

using Timestep = std::uint64_t;
using GridIndex = std::uint32_t;
using RobotId = std::uint32_t;

// Robot 0 is always the base station; patrollers are 1..N-1.
inline constexpr RobotId kBaseStation = 0;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace lrpt
