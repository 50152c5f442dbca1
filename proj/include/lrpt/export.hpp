#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lrpt/scenario.hpp"

namespace lrpt {

// Artifact layout for one trial directory:
//   metrics.csv          seed,N,K,s,strategy,I_G,I_W,D_MSA,D_WSA,norm_I_G,norm_I_W,norm_D_MSA,norm_D_WSA
//   timeseries.csv       t,I_g,I_w,D_mSA,D_wSA,n_active,norm_I_g,norm_D_mSA
//   heatmap_robot_<id>.csv, heatmap_total.csv
//                        height rows x width columns, row 0 is y index 0
//   events.log           time,robot,grid
//   config.cfg           the effective configuration

inline constexpr const char* kMetricsHeader =
    "seed,N,K,s,strategy,I_G,I_W,D_MSA,D_WSA,norm_I_G,norm_I_W,norm_D_MSA,norm_D_WSA";
inline constexpr const char* kTimeseriesHeader = "t,I_g,I_w,D_mSA,D_wSA,n_active,norm_I_g,norm_D_mSA";
inline constexpr const char* kEventsHeader = "time,robot,grid";

struct MetricsRow {
    std::uint64_t seed = 0;
    std::uint32_t n_robots = 0;
    std::size_t grids = 0;
    std::size_t slice_size = 0;
    std::string strategy;
    FinalMetrics metrics;
    FinalMetrics normalized;
};

MetricsRow to_metrics_row(const TrialResult& result);
std::string format_metrics_row(const MetricsRow& row);

/// Writes every artifact of one trial into `out_dir`, creating it. Throws
/// IoError naming the path on failure.
void write_run_artifacts(const TrialResult& result, const std::filesystem::path& out_dir);

/// One subdirectory per trial (trial_<seed>/), plus a combined metrics.csv
/// and summary.csv (metric,mean,min,max) at the top level.
void write_batch_artifacts(const BatchResult& batch, const std::filesystem::path& out_dir);

/// eta,p_max,sigma,mean_I_G,mean_I_W
void write_sweep_table(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path);
std::vector<VisitEvent> read_events_log(const std::filesystem::path& path);
/// Row-major [y][x] counts.
std::vector<std::vector<std::uint64_t>> read_heatmap(const std::filesystem::path& path);

/// Idleness metrics and heatmaps rebuilt from an event log alone.
struct ReplayOutcome {
    double graph_idleness = 0.0;
    Timestep worst_idleness = 0;
    std::size_t samples = 0;
    std::vector<std::vector<std::uint64_t>> visit_counts;  // [robot][grid]
};

/// Replays the log from t = 0 with no knowledge of the simulator: every grid
/// starts at zero idleness, ages one per step, and resets on any event at
/// that step. Throws IoError on events outside the map, swarm or mission.
ReplayOutcome replay_events(const std::vector<VisitEvent>& events, const ScenarioConfig& config);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> mismatches;
};

/// Checks the metrics.csv and heatmaps next to `events_path` against a
/// replay of the events. Reals compare to 1e-9 relative, integers exactly.
VerifyReport verify_run(const std::filesystem::path& events_path, const ScenarioConfig& config);

}  // namespace lrpt
