#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lrpt/motion.hpp"

using namespace lrpt;

TEST_CASE("aligned robot advances at full speed") {
    const auto next = step_toward({{0, 0}, 0.0}, {10, 0}, {1.5, 1.0});
    CHECK(next.position.x == doctest::Approx(1.5));
    CHECK(next.position.y == doctest::Approx(0.0));
    CHECK(next.heading == 0.0);
}

TEST_CASE("quarter-turn error turns by phi_max then advances") {
    const auto next = step_toward({{0, 0}, 0.0}, {0, 10}, {1.5, 1.0});
    CHECK(next.heading == doctest::Approx(1.0));
    CHECK(next.position.x == doctest::Approx(0.8104534588022096).epsilon(1e-12));
    CHECK(next.position.y == doctest::Approx(1.2622064772118446).epsilon(1e-12));
}

TEST_CASE("waypoint behind turns in place") {
    const auto next = step_toward({{0, 0}, 0.0}, {-10, 0.1}, {1.5, 1.0});
    CHECK(next.position == Vec2{0, 0});
    CHECK(next.heading == doctest::Approx(1.0));
}

TEST_CASE("no overshoot") {
    const auto next = step_toward({{0, 0}, 0.0}, {1.0, 0}, {1.5, 1.0});
    CHECK(next.position.x == doctest::Approx(1.0));
    CHECK(next.position.y == doctest::Approx(0.0));
    const auto stay = step_toward(next, {1.0, 0}, {1.5, 1.0});
    CHECK(stay.position == next.position);
}

TEST_CASE("wrap_angle maps into (-pi, pi]") {
    CHECK(wrap_angle(std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_angle(3 * std::numbers::pi / 2) == doctest::Approx(-std::numbers::pi / 2));
    CHECK(wrap_angle(0.25) == 0.25);
}

TEST_CASE("speed and turn bounds hold and waypoints are reached in bounded time") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(0, 200), ang(-std::numbers::pi, std::numbers::pi);
    const KinematicLimits lim{1.5, 1.0};
    for (int trial = 0; trial < 2000; ++trial) {
        RobotPose pose{{coord(rng), coord(rng)}, ang(rng)};
        const Vec2 goal{coord(rng), coord(rng)};
        const double d0 = distance(pose.position, goal);
        const auto bound = static_cast<int>(std::ceil(d0 / lim.v_max) + std::ceil(std::numbers::pi / lim.phi_max) + 5);
        int steps = 0;
        while (distance(pose.position, goal) > 3.0 && steps <= bound) {
            const auto next = step_toward(pose, goal, lim);
            CHECK(distance(next.position, pose.position) <= lim.v_max + 1e-12);
            CHECK(std::abs(wrap_angle(next.heading - pose.heading)) <= lim.phi_max + 1e-12);
            CHECK(next.heading > -std::numbers::pi);
            CHECK(next.heading <= std::numbers::pi);
            pose = next;
            ++steps;
        }
        CHECK(steps <= bound);
    }
}

TEST_CASE("holonomic ablation moves straight") {
    const auto next = step_holonomic({{0, 0}, 2.0}, {3, 4}, {1.5, 1.0});
    CHECK(next.position.x == doctest::Approx(0.9));
    CHECK(next.position.y == doctest::Approx(1.2));
    const auto land = step_holonomic({{0, 0}, 0.0}, {1, 0}, {1.5, 1.0});
    CHECK(land.position == Vec2{1, 0});
}
