#include "lrpt/world.hpp"

#include <algorithm>
#include <cmath>

#include "lrpt/errors.hpp"

namespace lrpt {

GridMap::GridMap(std::uint32_t width_grids, std::uint32_t height_grids, double grid_size)
    : width_(width_grids), height_(height_grids), grid_size_(grid_size) {
    if (width_grids < 1) throw ConfigError("width_grids", "must be >= 1");
    if (height_grids < 1) throw ConfigError("height_grids", "must be >= 1");
    if (!(grid_size > 0.0) || !std::isfinite(grid_size)) {
        throw ConfigError("grid_size", "must be a positive finite length");
    }
    centers_.reserve(static_cast<std::size_t>(width_) * height_);
    for (std::uint32_t iy = 0; iy < height_; ++iy) {
        for (std::uint32_t ix = 0; ix < width_; ++ix) {
            centers_.push_back({(ix + 0.5) * grid_size_, (iy + 0.5) * grid_size_});
        }
    }
}

GridIndex GridMap::containing_grid(Vec2 p) const noexcept {
    auto clamp_axis = [this](double v, std::uint32_t n) {
        const double cell = std::floor(v / grid_size_);
        if (!(cell >= 0.0)) return std::uint32_t{0};
        return static_cast<std::uint32_t>(std::min<double>(cell, n - 1));
    };
    return index({clamp_axis(p.x, width_), clamp_axis(p.y, height_)});
}

std::vector<GridIndex> GridMap::neighbours(GridIndex k) const {
    const Cell c = cell(k);
    std::vector<GridIndex> out;
    out.reserve(8);
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const std::int64_t nx = std::int64_t{c.ix} + dx;
            const std::int64_t ny = std::int64_t{c.iy} + dy;
            if (contains(nx, ny)) {
                out.push_back(index({static_cast<std::uint32_t>(nx), static_cast<std::uint32_t>(ny)}));
            }
        }
    }
    return out;
}

GridMap build_grid_map(std::uint32_t width_grids, std::uint32_t height_grids, double grid_size) {
    return GridMap(width_grids, height_grids, grid_size);
}

void advance_time(WorldState& world) {
    ++world.t;
    for (auto& i : world.idleness) ++i;
}

std::vector<VisitEvent> detect_patrol_completions(WorldState& world, const GridMap& map,
                                                  std::span<const Vec2> positions,
                                                  std::span<const char> operational, double rho) {
    std::vector<VisitEvent> events;
    const double reach = rho + map.grid_size();
    for (RobotId r = 1; r < positions.size(); ++r) {
        if (!operational[r]) continue;
        const Vec2 p = positions[r];
        // Only grids whose cell lies within rho + one grid of p can qualify.
        const auto lo_x = static_cast<std::int64_t>(std::floor((p.x - reach) / map.grid_size()));
        const auto hi_x = static_cast<std::int64_t>(std::floor((p.x + reach) / map.grid_size()));
        const auto lo_y = static_cast<std::int64_t>(std::floor((p.y - reach) / map.grid_size()));
        const auto hi_y = static_cast<std::int64_t>(std::floor((p.y + reach) / map.grid_size()));
        for (std::int64_t iy = std::max<std::int64_t>(lo_y, 0);
             iy <= std::min<std::int64_t>(hi_y, map.height() - 1); ++iy) {
            for (std::int64_t ix = std::max<std::int64_t>(lo_x, 0);
                 ix <= std::min<std::int64_t>(hi_x, map.width() - 1); ++ix) {
                const GridIndex k = map.index({static_cast<std::uint32_t>(ix), static_cast<std::uint32_t>(iy)});
                if (distance(p, map.center(k)) <= rho) {
                    events.push_back({r, k, world.t});
                }
            }
        }
    }
    for (const auto& e : events) {
        world.idleness[e.grid] = 0;
        world.last_visit[e.grid] = world.t;
    }
    return events;
}

}  // namespace lrpt
