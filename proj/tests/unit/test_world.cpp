#include <random>

#include "doctest.h"
#include "lrpt/errors.hpp"
#include "lrpt/world.hpp"

using namespace lrpt;

TEST_CASE("build_grid_map places centers half a grid from the origin corner") {
    const auto map = build_grid_map(20, 20, 30);
    CHECK(map.size() == 400);
    CHECK(map.center(0) == Vec2{15, 15});

    const auto single = build_grid_map(1, 1, 30);
    CHECK(single.size() == 1);
    CHECK(single.center(0) == Vec2{15, 15});

    const auto small = build_grid_map(2, 3, 10);
    CHECK(small.size() == 6);
    CHECK(small.cell(5) == Cell{1, 2});
    CHECK(small.center(5) == Vec2{15, 25});
}

TEST_CASE("build_grid_map rejects degenerate dimensions") {
    CHECK_THROWS_AS(build_grid_map(0, 5, 30), ConfigError);
    CHECK_THROWS_AS(build_grid_map(5, 0, 30), ConfigError);
    CHECK_THROWS_AS(build_grid_map(5, 5, 0), ConfigError);
    CHECK_THROWS_AS(build_grid_map(5, 5, -1), ConfigError);
}

TEST_CASE("chebyshev coordinates are positive and bounded by the field") {
    const auto map = build_grid_map(7, 4, 12.5);
    for (GridIndex k = 0; k < map.size(); ++k) {
        CHECK(map.chebyshev(k) > 0.0);
        CHECK(map.chebyshev(k) <= 7 * 12.5);
    }
}

TEST_CASE("containing_grid clamps to the border and neighbours stay in the map") {
    const auto map = build_grid_map(4, 3, 10);
    CHECK(map.containing_grid({-5, -5}) == 0);
    CHECK(map.containing_grid({39.9, 29.9}) == 11);
    CHECK(map.containing_grid({100, 100}) == 11);
    CHECK(map.neighbours(0) == std::vector<GridIndex>{1, 4, 5});
    CHECK(map.neighbours(5).size() == 8);
}

TEST_CASE("advance_time ages every grid by one") {
    WorldState w(3);
    advance_time(w);
    CHECK(w.t == 1);
    CHECK(w.idleness == std::vector<Timestep>{1, 1, 1});

    w.t = 5;
    w.idleness = {7, 7, 7};
    advance_time(w);
    CHECK(w.t == 6);
    CHECK(w.idleness[0] == 8);

    WorldState long_run(2);
    for (int i = 0; i < 43200; ++i) advance_time(long_run);
    CHECK(long_run.idleness == std::vector<Timestep>{43200, 43200});
}

TEST_CASE("detect_patrol_completions uses an inclusive rho ball") {
    const auto map = build_grid_map(20, 20, 30);
    WorldState w(map.size());
    w.t = 40;
    w.idleness.assign(map.size(), 40);
    const std::vector<char> op{1, 1};

    std::vector<Vec2> pos{{0, 0}, {15.0, 15.0}};
    auto ev = detect_patrol_completions(w, map, pos, op, 3.0);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0] == VisitEvent{1, 0, 40});
    CHECK(w.idleness[0] == 0);
    CHECK(w.last_visit[0] == 40);

    pos[1] = {15.0, 18.5};
    w.idleness[0] = 9;
    CHECK(detect_patrol_completions(w, map, pos, op, 3.0).empty());
    CHECK(w.idleness[0] == 9);

    pos[1] = {15.0, 18.0};  // exactly rho away
    CHECK(detect_patrol_completions(w, map, pos, op, 3.0).size() == 1);
}

TEST_CASE("two robots on one grid give two events and one reset") {
    const auto map = build_grid_map(5, 5, 30);
    WorldState w(map.size());
    w.t = 100;
    w.idleness.assign(map.size(), 100);
    const std::vector<Vec2> pos{{0, 0}, {45, 45}, {46, 44}};
    const std::vector<char> op{1, 1, 1};
    const auto ev = detect_patrol_completions(w, map, pos, op, 3.0);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == VisitEvent{1, 6, 100});
    CHECK(ev[1] == VisitEvent{2, 6, 100});
    CHECK(w.idleness[6] == 0);
    CHECK(w.last_visit[6] == 100);
}

TEST_CASE("failed robots and the base station never patrol") {
    const auto map = build_grid_map(3, 3, 30);
    WorldState w(map.size());
    const std::vector<Vec2> pos{{15, 15}, {45, 45}};
    CHECK(detect_patrol_completions(w, map, pos, std::vector<char>{1, 0}, 3.0).empty());
}

TEST_CASE("event set matches a brute-force distance scan") {
    // Wide rho so several grids per robot qualify.
    const auto map = build_grid_map(6, 6, 10);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-5.0, 65.0);
    for (int trial = 0; trial < 200; ++trial) {
        WorldState w(map.size());
        w.t = 1000 + trial;
        w.idleness.assign(map.size(), 1);
        std::vector<Vec2> pos(5);
        std::vector<char> op(5, 1);
        for (auto& p : pos) p = {coord(rng), coord(rng)};
        op[2] = 0;
        const double rho = 9.0;
        const auto ev = detect_patrol_completions(w, map, pos, op, rho);

        std::vector<VisitEvent> expect;
        for (RobotId r = 1; r < pos.size(); ++r) {
            if (!op[r]) continue;
            for (GridIndex k = 0; k < map.size(); ++k) {
                const double dx = pos[r].x - map.center(k).x;
                const double dy = pos[r].y - map.center(k).y;
                if (dx * dx + dy * dy <= rho * rho) expect.push_back({r, k, w.t});
            }
        }
        CHECK(ev == expect);
        for (GridIndex k = 0; k < map.size(); ++k) {
            const bool hit = std::any_of(expect.begin(), expect.end(), [k](const VisitEvent& e) { return e.grid == k; });
            CHECK((w.idleness[k] == 0) == hit);
        }
    }
}
