#pragma once

#include <span>
#include <vector>

#include "lrpt/knowledge.hpp"
#include "lrpt/world.hpp"

namespace lrpt {

/// The base station's view of how fresh its information is: its own update
/// time for every grid.
struct SAView {
    std::vector<Timestep> update_times;

    Timestep delay(GridIndex k, Timestep now) const { return now - update_times[k]; }
};

/// Mirrors the base station's update times. Only the newest visit per grid
/// survives knowledge consolidation, so earlier visits never show up here.
void sa_update_on_report(SAView& view, const AssumedIdleness& bs_knowledge);

struct InstantSample {
    Timestep t = 0;
    double mean_idleness = 0.0;   // I_g
    Timestep worst_idleness = 0;  // I_w
    double mean_sa_delay = 0.0;   // D_mSA
    Timestep worst_sa_delay = 0;  // D_wSA
    std::uint32_t n_active = 0;
    double normalized_mean_idleness = 0.0;
    double normalized_mean_sa_delay = 0.0;
};

struct FinalMetrics {
    double graph_idleness = 0.0;   // I_G
    double worst_idleness = 0.0;   // I_W
    double mean_sa_delay = 0.0;    // D_MSA
    double worst_sa_delay = 0.0;   // D_WSA

    friend bool operator==(const FinalMetrics&, const FinalMetrics&) = default;
};

/// Running idleness and SA statistics over the window t >= warmup_t0, plus
/// per-robot visit counts and the unfiltered per-step series.
class MetricsAccumulator {
public:
    MetricsAccumulator(Timestep warmup_t0, std::size_t grids, std::size_t robots, bool keep_series = true);

    /// Call once per step after every reset and merge for that step.
    void sample_instantaneous(const WorldState& world, const SAView& sa, std::uint32_t n_active);

    void record_visit_heatmap(const VisitEvent& event);

    /// Throws MetricsError if no step fell inside the measurement window.
    FinalMetrics finalize() const;

    Timestep warmup_t0() const noexcept { return warmup_t0_; }
    std::size_t samples() const noexcept { return samples_; }
    const std::vector<InstantSample>& series() const noexcept { return series_; }

    /// visit_counts()[robot][grid]
    const std::vector<std::vector<std::uint64_t>>& visit_counts() const noexcept { return visit_counts_; }
    std::vector<std::uint64_t> total_heatmap() const;

private:
    Timestep warmup_t0_;
    std::size_t grids_;
    bool keep_series_;
    std::size_t samples_ = 0;
    // Integer sums keep I_G and D_MSA exactly reproducible from a replay.
    std::uint64_t idleness_sum_ = 0;
    std::uint64_t sa_sum_ = 0;
    Timestep max_idleness_ = 0;
    Timestep max_sa_ = 0;
    std::vector<std::vector<std::uint64_t>> visit_counts_;
    std::vector<InstantSample> series_;
};

/// Scales a metric by (N - 1) / K; the base station does not patrol.
double normalize(double metric, std::size_t n_robots, std::size_t grids);

/// Scales by the number of robots actually patrolling.
double normalize_active(double metric, std::size_t n_active, std::size_t grids);

}  // namespace lrpt
