#include "lrpt/strategy.hpp"

#include <cmath>
#include <limits>

namespace lrpt {

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::LrPt: return "lr-pt";
        case StrategyKind::ExpectedReactive: return "er";
        case StrategyKind::RandomWalk: return "random";
    }
    return "?";
}

std::optional<StrategyKind> parse_strategy(std::string_view text) {
    if (text == "lr-pt") return StrategyKind::LrPt;
    if (text == "er") return StrategyKind::ExpectedReactive;
    if (text == "random") return StrategyKind::RandomWalk;
    return std::nullopt;
}

std::vector<GridIndex> candidate_grids(Vec2 position, double search_range, const GridMap& map) {
    std::vector<GridIndex> out;
    const double gs = map.grid_size();
    const auto lo_x = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((position.x - search_range) / gs)) - 1);
    const auto hi_x = std::min<std::int64_t>(map.width() - 1, static_cast<std::int64_t>(std::floor((position.x + search_range) / gs)) + 1);
    const auto lo_y = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((position.y - search_range) / gs)) - 1);
    const auto hi_y = std::min<std::int64_t>(map.height() - 1, static_cast<std::int64_t>(std::floor((position.y + search_range) / gs)) + 1);
    for (std::int64_t iy = lo_y; iy <= hi_y; ++iy) {
        for (std::int64_t ix = lo_x; ix <= hi_x; ++ix) {
            const GridIndex k = map.index({static_cast<std::uint32_t>(ix), static_cast<std::uint32_t>(iy)});
            if (distance(position, map.center(k)) <= search_range) out.push_back(k);
        }
    }
    if (out.empty()) out.push_back(map.containing_grid(position));
    return out;
}

Timestep expected_travel_time(Vec2 position, Vec2 center, double v_max) {
    const double steps = std::ceil(distance(position, center) / v_max);
    return std::max<Timestep>(1, static_cast<Timestep>(steps));
}

double adjustment_alpha(double chebyshev, double p, double p_max, double sigma) {
    const double offset = chebyshev - (p_max - p);
    return std::exp(-(offset * offset) / (2.0 * sigma * sigma));
}

GridIndex temporary_target(GridIndex current, GridIndex target, const GridMap& map) {
    if (current == target) return target;
    const auto adjacent = map.neighbours(current);
    GridIndex best = adjacent.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (GridIndex n : adjacent) {
        if (n == target) return target;
        const double d = distance(map.center(n), map.center(target));
        if (d < best_d) {
            best_d = d;
            best = n;
        }
    }
    return best;
}

namespace {

template <typename AlphaFn>
GridIndex argmax_utility(Vec2 position, const std::vector<GridIndex>& candidates, const AssumedIdleness& knowledge,
                         double v_max, const GridMap& map, AlphaFn alpha) {
    GridIndex best = candidates.front();
    double best_u = -std::numeric_limits<double>::infinity();
    for (GridIndex k : candidates) {
        const Timestep travel = expected_travel_time(position, map.center(k), v_max);
        const double u = grid_utility(knowledge[k].assumed_idleness, travel, alpha(k));
        if (u > best_u || (u == best_u && k < best)) {
            best_u = u;
            best = k;
        }
    }
    return best;
}

TargetSelection finish(Vec2 position, GridIndex target, const GridMap& map, Timestep now) {
    return {target, temporary_target(map.containing_grid(position), target, map), now};
}

}  // namespace

TargetSelection select_patrol_target(Vec2 position, const AssumedIdleness& knowledge, double p,
                                     const UtilityParams& params, const GridMap& map, Timestep now) {
    const auto candidates = candidate_grids(position, params.search_range, map);
    const GridIndex target = argmax_utility(position, candidates, knowledge, params.v_max, map, [&](GridIndex k) {
        return adjustment_alpha(map.chebyshev(k), p, params.p_max, params.sigma);
    });
    return finish(position, target, map, now);
}

TargetSelection er_select(Vec2 position, const AssumedIdleness& knowledge, const UtilityParams& params,
                          const GridMap& map, Timestep now) {
    std::vector<GridIndex> all(map.size());
    for (GridIndex k = 0; k < all.size(); ++k) all[k] = k;
    const GridIndex target =
        argmax_utility(position, all, knowledge, params.v_max, map, [](GridIndex) { return 1.0; });
    return finish(position, target, map, now);
}

TargetSelection random_walk_select(Vec2 position, const GridMap& map, std::mt19937_64& rng, Timestep now) {
    const GridIndex current = map.containing_grid(position);
    const auto adjacent = map.neighbours(current);
    if (adjacent.empty()) return {current, current, now};
    const GridIndex pick = adjacent[rng() % adjacent.size()];
    return {pick, pick, now};
}

}  // namespace lrpt
