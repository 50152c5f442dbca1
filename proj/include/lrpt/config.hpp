#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lrpt/geometry.hpp"
#include "lrpt/strategy.hpp"

namespace lrpt {

struct FailureSchedule {
    double fraction = 0.0;
    Timestep fail_at = 0;
    Timestep recover_at = 0;

    bool enabled() const noexcept { return fraction > 0.0; }
};

/// Every tunable of a mission. Defaults are the tuned N = 10 setup:
/// 20 x 20 grids of 30 m, 12 h mission, warm-up excluded below t = 10000.
struct ScenarioConfig {
    std::uint32_t n_robots = 10;  // includes the base station
    std::uint32_t width_grids = 20;
    std::uint32_t height_grids = 20;
    double grid_size = 30.0;
    double rho = 3.0;
    Timestep mission_duration = 43200;
    Timestep warmup_t0 = 10000;
    double v_max = 1.5;
    double phi_max = 1.0;
    double comm_range = 180.0;
    double sensor_range = 90.0;  // carried, unused by any behaviour
    double search_range = 180.0;
    double eta = 0.40;
    double p_max = 703.0;
    double sigma = 304.0;
    std::optional<std::uint32_t> bandwidth_s;  // nullopt: full knowledge (s = K)
    StrategyKind strategy = StrategyKind::LrPt;
    std::uint64_t seed = 1;
    FailureSchedule failure;
    bool holonomic = false;
    std::uint32_t trials = 10;
    std::uint32_t threads = 1;
    bool shuffle_order = false;  // debug: permute per-robot processing order each step
    bool keep_series = true;

    std::size_t grids() const noexcept { return std::size_t{width_grids} * height_grids; }
    std::size_t slice_size() const noexcept { return bandwidth_s ? *bandwidth_s : grids(); }
};

/// Per-swarm-size tuning (eta, p_max, sigma) for N in {5, 10, 15};
/// other N keep the N = 10 values.
ScenarioConfig tuned_defaults(std::uint32_t n_robots);

/// Throws ConfigError naming the first offending field.
void validate(const ScenarioConfig& config);

/// Sets one field from its text form. Throws ConfigError on unknown keys or
/// unparsable values.
void apply_config_value(ScenarioConfig& config, std::string_view key, std::string_view value);

/// `key = value` lines, `#` comments, blank lines ignored. Starts from the
/// defaults. Does not validate.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Full-precision echo that parse_config reads back to an identical config.
std::string to_config_text(const ScenarioConfig& config);

}  // namespace lrpt
