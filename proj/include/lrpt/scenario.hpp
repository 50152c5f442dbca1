#pragma once

#include <random>
#include <span>
#include <vector>

#include "lrpt/comms.hpp"
#include "lrpt/config.hpp"
#include "lrpt/knowledge.hpp"
#include "lrpt/metrics.hpp"
#include "lrpt/motion.hpp"
#include "lrpt/priority.hpp"
#include "lrpt/strategy.hpp"
#include "lrpt/world.hpp"

namespace lrpt {

struct RobotState {
    RobotId id = 0;
    RobotPose pose;
    bool operational = true;
    AssumedIdleness knowledge;
    PriorityState priority;   // unused for the base station
    TargetSelection selection;
    bool needs_selection = false;
    std::mt19937_64 rng;      // random-walk baseline only
    RecencyIndex recency;
};

/// One simulated mission. Robot 0 is the stationary base station at the
/// origin; robots 1..N-1 patrol. Each step runs a fixed phase order:
///   1. failures/recoveries take effect, world time and every knowledge base age
///   2. last step's broadcasts are delivered along last step's graph
///   3. robots merge received knowledge and update report priority
///   4. patrollers take one kinematic step toward their temporary target
///   5. patrol completions reset idleness, are recorded by the visitor, and
///      trigger re-selection for robots that reached their temporary target
///   6. the new graph is computed and every connected robot broadcasts
///   7. metrics are sampled
/// Per-robot work in phases 3-6 reads only frozen state, so processing order
/// and thread count do not affect results.
class Mission {
public:
    /// Places patrollers uniformly in the quarter disc of radius 2*sqrt(N)
    /// meters around the base station and makes the initial selections.
    /// Throws ConfigError on an invalid config.
    Mission(const ScenarioConfig& config, std::uint64_t seed);

    void step();
    void run_to_end();
    bool finished() const noexcept { return world_.t >= config_.mission_duration; }

    const ScenarioConfig& config() const noexcept { return config_; }
    const GridMap& map() const noexcept { return map_; }
    const WorldState& world() const noexcept { return world_; }
    const std::vector<RobotState>& robots() const noexcept { return robots_; }
    const ConnectivityGraph& graph() const noexcept { return graph_; }
    const std::vector<MessageEnvelope>& outbox() const noexcept { return outbox_; }
    const std::vector<VisitEvent>& events() const noexcept { return events_; }
    const MetricsAccumulator& metrics() const noexcept { return metrics_; }
    const SAView& sa_view() const noexcept { return sa_; }
    std::uint32_t active_patrollers() const noexcept;
    std::size_t rejected_envelopes() const noexcept { return rejected_envelopes_; }

    /// Robots the failure schedule takes down: the ceil(fraction * (N-1))
    /// largest ids.
    std::vector<RobotId> failing_robots() const;

    /// Test hook: teleport a robot and freeze it in place (it never moves or
    /// re-selects). Used to build static topologies.
    void pin_robot(RobotId id, Vec2 position);

private:
    void apply_failure_schedule(Timestep t);
    void select_target(RobotState& robot);
    void broadcast();
    std::vector<RobotId> processing_order();

    template <typename Fn>
    void for_each_robot(const std::vector<RobotId>& order, Fn&& fn);

    ScenarioConfig config_;
    GridMap map_;
    WorldState world_;
    std::vector<RobotState> robots_;
    std::vector<char> pinned_;
    ConnectivityGraph graph_;
    std::vector<MessageEnvelope> outbox_;
    std::vector<VisitEvent> events_;
    MetricsAccumulator metrics_;
    SAView sa_;
    std::size_t rejected_envelopes_ = 0;
    std::mt19937_64 order_rng_;
};

/// Same as constructing a Mission; kept as the named entry point.
Mission init_mission(const ScenarioConfig& config, std::uint64_t seed);

struct TrialResult {
    ScenarioConfig config;
    std::uint64_t seed = 0;
    FinalMetrics metrics;
    FinalMetrics normalized;
    std::vector<std::vector<std::uint64_t>> visit_counts;  // [robot][grid]
    std::vector<InstantSample> series;
    std::vector<VisitEvent> events;
    std::uint64_t event_digest = 0;
    std::size_t rejected_envelopes = 0;
};

/// FNV-1a over (time, robot, grid) of every event.
std::uint64_t event_log_digest(std::span<const VisitEvent> events);

/// Runs a full mission. Throws MetricsError if the mission ends before the
/// warm-up window.
TrialResult run_trial(const ScenarioConfig& config, std::uint64_t seed);

struct MetricSummary {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct BatchSummary {
    MetricSummary graph_idleness, worst_idleness, mean_sa_delay, worst_sa_delay;
    MetricSummary n_graph_idleness, n_worst_idleness, n_mean_sa_delay, n_worst_sa_delay;
};

struct BatchResult {
    std::vector<TrialResult> trials;
    BatchSummary summary;
};

BatchSummary summarize(std::span<const TrialResult> trials);

/// Trial i uses seed base_seed + i. Trials run concurrently when
/// config.threads > 1; each trial itself then runs single-threaded.
BatchResult run_batch(const ScenarioConfig& config, std::uint32_t trials, std::uint64_t base_seed);

struct SweepRow {
    double eta = 0.0;
    double p_max = 0.0;
    double sigma = 0.0;
    double mean_graph_idleness = 0.0;
    double mean_worst_idleness = 0.0;
};

/// Exhaustive grid over eta x p_max x sigma; every point runs the same seeds
/// (base_seed + i). Throws ConfigError when any list is empty.
std::vector<SweepRow> parameter_sweep(const ScenarioConfig& config, std::span<const double> etas,
                                      std::span<const double> p_maxes, std::span<const double> sigmas,
                                      std::uint32_t trials_per_point, std::uint64_t base_seed);

}  // namespace lrpt
