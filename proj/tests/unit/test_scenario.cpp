#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "lrpt/errors.hpp"
#include "lrpt/scenario.hpp"

using namespace lrpt;

namespace {

ScenarioConfig small_config(std::uint32_t n = 4, Timestep horizon = 1500) {
    ScenarioConfig c = tuned_defaults(n);
    c.width_grids = 8;
    c.height_grids = 8;
    c.mission_duration = horizon;
    c.warmup_t0 = 200;
    return c;
}

}  // namespace

TEST_CASE("patrollers start in the quarter disc around the base station") {
    const ScenarioConfig c;  // N = 10
    const Mission m(c, 42);
    const double radius = 2.0 * std::sqrt(10.0);
    CHECK(m.robots()[0].pose.position == Vec2{0, 0});
    for (RobotId r = 1; r < 10; ++r) {
        const auto p = m.robots()[r].pose.position;
        CHECK(p.x >= 0.0);
        CHECK(p.y >= 0.0);
        CHECK(std::hypot(p.x, p.y) <= radius);
        CHECK(m.robots()[r].pose.heading > -M_PI);
        CHECK(m.robots()[r].pose.heading <= M_PI);
    }
}

TEST_CASE("initialization is a function of (config, seed)") {
    const auto c = small_config();
    const Mission a(c, 5), b(c, 5), other(c, 6);
    for (RobotId r = 0; r < c.n_robots; ++r) {
        CHECK(a.robots()[r].pose.position == b.robots()[r].pose.position);
        CHECK(a.robots()[r].selection == b.robots()[r].selection);
    }
    CHECK_FALSE(a.robots()[1].pose.position == other.robots()[1].pose.position);
}

TEST_CASE("a two-robot swarm still patrols") {
    const auto r = run_trial(small_config(2, 800), 1);
    CHECK(!r.events.empty());
    CHECK(r.metrics.graph_idleness > 0.0);
}

TEST_CASE("mission shorter than warm-up fails at finalize") {
    auto c = small_config(3, 100);
    c.warmup_t0 = 500;
    CHECK_THROWS_AS(run_trial(c, 1), MetricsError);
}

TEST_CASE("invalid config is rejected at init") {
    auto c = small_config();
    c.n_robots = 1;
    CHECK_THROWS_AS(Mission(c, 1), ConfigError);
}

TEST_CASE("trials are reproducible, independent of threads and processing order") {
    auto c = small_config(5, 1200);
    const auto base = run_trial(c, 9);
    const auto again = run_trial(c, 9);
    CHECK(base.events == again.events);
    CHECK(base.metrics == again.metrics);
    CHECK(base.visit_counts == again.visit_counts);

    c.threads = 3;
    const auto threaded = run_trial(c, 9);
    CHECK(threaded.events == base.events);
    CHECK(threaded.metrics == base.metrics);

    c.threads = 1;
    c.shuffle_order = true;
    const auto shuffled = run_trial(c, 9);
    CHECK(shuffled.events == base.events);
    CHECK(shuffled.metrics == base.metrics);
    CHECK(shuffled.event_digest == base.event_digest);
}

TEST_CASE("every visit event lands in exactly one heatmap cell") {
    const auto r = run_trial(small_config(4, 1500), 3);
    std::uint64_t total = 0;
    for (const auto& row : r.visit_counts) {
        for (auto v : row) total += v;
    }
    CHECK(total == r.events.size());
    for (auto v : r.visit_counts[0]) CHECK(v == 0);
}

TEST_CASE("knowledge and priority invariants hold at every step") {
    auto c = small_config(5, 1500);
    Mission m(c, 11);
    std::set<std::pair<GridIndex, Timestep>> visits;
    std::vector<std::vector<Timestep>> last_update(c.n_robots, std::vector<Timestep>(m.map().size(), 0));
    const double bound = c.p_max * (1 + c.eta);
    std::size_t seen = 0;
    while (!m.finished()) {
        m.step();
        for (; seen < m.events().size(); ++seen) visits.insert({m.events()[seen].grid, m.events()[seen].time});
        const Timestep t = m.world().t;
        for (const auto& robot : m.robots()) {
            CHECK(robot.priority.p <= bound);
            CHECK(robot.priority.p >= 0.0);
            for (GridIndex k = 0; k < m.map().size(); ++k) {
                const auto& e = robot.knowledge[k];
                REQUIRE(e.update_time <= t);
                REQUIRE(e.assumed_idleness <= t - e.update_time);
                REQUIRE(e.update_time >= last_update[robot.id][k]);
                last_update[robot.id][k] = e.update_time;
                if (e.update_time > 0) REQUIRE(visits.count({k, e.update_time}) == 1);
            }
        }
        for (GridIndex k = 0; k < m.map().size(); ++k) {
            REQUIRE(m.world().idleness[k] == t - m.world().last_visit[k]);
        }
    }
}

TEST_CASE("static chain: information moves one hop per step") {
    // Base station far from the chain; robots 150 m apart, comm range 180.
    ScenarioConfig c = small_config(5, 100);
    c.width_grids = 30;
    c.height_grids = 3;
    Mission m(c, 1);
    const GridIndex visited = m.map().index({15, 1});
    const Vec2 spot = m.map().center(visited);
    m.pin_robot(1, spot);
    m.pin_robot(2, {spot.x + 150, spot.y});
    m.pin_robot(3, {spot.x + 300, spot.y});
    m.pin_robot(4, {spot.x + 450, spot.y});
    for (RobotId r = 1; r <= 3; ++r) CHECK(m.graph().connected(r, r + 1));
    CHECK_FALSE(m.graph().connected(1, 3));

    m.step();
    const Timestep first = m.world().t;
    REQUIRE(m.robots()[1].knowledge[visited].update_time == first);
    // Robot 1 sits on the grid and re-visits every step; hop h lags by h steps.
    for (int extra = 0; extra < 6; ++extra) {
        m.step();
        const Timestep t = m.world().t;
        for (RobotId hop = 0; hop <= 3; ++hop) {
            const auto& e = m.robots()[1 + hop].knowledge[visited];
            const Timestep expected_time = t >= first + hop ? t - hop : 0;
            CHECK(e.update_time == expected_time);
            if (expected_time > 0) {
                CHECK(e.assumed_idleness == 0);
                CHECK(t - e.update_time - e.assumed_idleness == hop);
            }
        }
    }
}

TEST_CASE("failure schedule freezes and isolates the largest ids") {
    ScenarioConfig c = small_config(10, 400);
    c.failure = {0.2, 100, 250};
    Mission m(c, 4);
    CHECK(m.failing_robots() == std::vector<RobotId>{8, 9});
    while (m.world().t < 99) m.step();
    m.step();  // t = 100
    REQUIRE_FALSE(m.robots()[8].operational);
    REQUIRE_FALSE(m.robots()[9].operational);
    CHECK(m.active_patrollers() == 7);
    const auto frozen = m.robots()[9];
    for (int i = 0; i < 50; ++i) {
        m.step();
        for (RobotId r = 0; r < 10; ++r) {
            CHECK_FALSE(m.graph().connected(r, 8));
            CHECK_FALSE(m.graph().connected(r, 9));
        }
    }
    CHECK(m.robots()[9].pose.position == frozen.pose.position);
    CHECK(m.robots()[9].knowledge.entries()[0] == frozen.knowledge.entries()[0]);
    CHECK(m.robots()[9].priority == frozen.priority);
    for (const auto& e : m.events()) {
        if (e.time >= 100) CHECK(e.robot < 8);
    }
    while (m.world().t < 250) m.step();
    CHECK(m.robots()[9].operational);
    CHECK(m.robots()[9].selection.chosen_at == 250);
    CHECK(m.active_patrollers() == 9);
}

TEST_CASE("batch seeds and summary") {
    auto c = small_config(3, 600);
    const auto b = run_batch(c, 3, 20);
    REQUIRE(b.trials.size() == 3);
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(b.trials[i].seed == 20 + i);
        sum += b.trials[i].metrics.graph_idleness;
    }
    CHECK(b.summary.graph_idleness.mean == doctest::Approx(sum / 3));
    CHECK(b.summary.graph_idleness.min <= b.summary.graph_idleness.max);

    const auto one = run_batch(c, 1, 20);
    CHECK(one.summary.graph_idleness.mean == one.trials[0].metrics.graph_idleness);
    CHECK(one.summary.worst_idleness.max == one.trials[0].metrics.worst_idleness);

    c.threads = 2;
    const auto parallel = run_batch(c, 3, 20);
    for (std::size_t i = 0; i < 3; ++i) CHECK(parallel.trials[i].events == b.trials[i].events);
}

TEST_CASE("parameter sweep covers the grid") {
    auto c = small_config(3, 400);
    const double etas[] = {0.3, 0.5};
    const double pms[] = {300, 600};
    const double sigmas[] = {200};
    const auto rows = parameter_sweep(c, etas, pms, sigmas, 2, 1);
    CHECK(rows.size() == 4);
    CHECK(rows[3].eta == 0.5);
    CHECK(rows[3].p_max == 600);

    const double one_eta[] = {c.eta}, one_pm[] = {c.p_max}, one_sigma[] = {c.sigma};
    const auto single = parameter_sweep(c, one_eta, one_pm, one_sigma, 2, 1);
    const auto batch = run_batch(c, 2, 1);
    CHECK(single.at(0).mean_graph_idleness == batch.summary.graph_idleness.mean);

    CHECK_THROWS_AS(parameter_sweep(c, std::span<const double>{}, pms, sigmas, 1, 1), ConfigError);
}

TEST_CASE("sweep row for the tuned N = 10 parameters is finite") {
    ScenarioConfig c = small_config(10, 600);
    const double eta[] = {0.40}, pm[] = {703}, sigma[] = {304};
    const auto rows = parameter_sweep(c, eta, pm, sigma, 1, 1);
    REQUIRE(rows.size() == 1);
    CHECK(std::isfinite(rows[0].mean_graph_idleness));
    CHECK(std::isfinite(rows[0].mean_worst_idleness));
}

TEST_CASE("all strategies run") {
    for (auto kind : {StrategyKind::LrPt, StrategyKind::ExpectedReactive, StrategyKind::RandomWalk}) {
        auto c = small_config(4, 600);
        c.strategy = kind;
        const auto r = run_trial(c, 2);
        CHECK(r.events.size() > 0);
    }
    auto c = small_config(4, 600);
    c.holonomic = true;
    CHECK(run_trial(c, 2).events.size() > 0);
}
