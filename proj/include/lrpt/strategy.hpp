#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "lrpt/knowledge.hpp"
#include "lrpt/world.hpp"

namespace lrpt {

enum class StrategyKind { LrPt, ExpectedReactive, RandomWalk };

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> parse_strategy(std::string_view text);

struct TargetSelection {
    GridIndex target_grid = 0;
    GridIndex temporary_grid = 0;
    Timestep chosen_at = 0;

    friend bool operator==(const TargetSelection&, const TargetSelection&) = default;
};

struct UtilityParams {
    double search_range = 180.0;  // delta
    double v_max = 1.5;
    double p_max = 703.0;
    double sigma = 304.0;
};

/// Grids whose centers lie within `search_range` of `position`, ascending.
/// Falls back to the containing grid when nothing is in range.
std::vector<GridIndex> candidate_grids(Vec2 position, double search_range, const GridMap& map);

/// Whole steps needed to reach the grid center at full speed, at least 1.
Timestep expected_travel_time(Vec2 position, Vec2 center, double v_max);

/// Gaussian weight on the grid's Chebyshev coordinate, peaking where that
/// coordinate equals p_max - p. High priority pulls the peak to the base.
double adjustment_alpha(double chebyshev, double p, double p_max, double sigma);

inline double grid_utility(Timestep assumed_idleness, Timestep travel_time, double alpha) {
    return alpha * static_cast<double>(assumed_idleness + travel_time) / static_cast<double>(travel_time);
}

/// Adjacent grid on the way from `current` to `target`: the target itself if
/// it is current or an 8-neighbour, otherwise the neighbour closest to the
/// target center (smaller index on ties).
GridIndex temporary_target(GridIndex current, GridIndex target, const GridMap& map);

/// Utility-maximizing target over the local candidate set, using priority p.
TargetSelection select_patrol_target(Vec2 position, const AssumedIdleness& knowledge, double p,
                                     const UtilityParams& params, const GridMap& map, Timestep now);

/// Expected-reactive baseline: same utility with alpha fixed at 1 and every
/// grid a candidate.
TargetSelection er_select(Vec2 position, const AssumedIdleness& knowledge, const UtilityParams& params,
                          const GridMap& map, Timestep now);

/// Uniformly random 8-neighbour of the current grid (or the grid itself on a
/// single-cell map).
TargetSelection random_walk_select(Vec2 position, const GridMap& map, std::mt19937_64& rng, Timestep now);

}  // namespace lrpt
