#pragma once

#include <span>
#include <vector>

#include "lrpt/geometry.hpp"

namespace lrpt {

struct Cell {
    std::uint32_t ix = 0;
    std::uint32_t iy = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Rectangular patrol field. Grid k sits at cell (k mod width, k div width)
/// and its center is offset half a grid from the origin corner, where the
/// base station lives.
class GridMap {
public:
    GridMap(std::uint32_t width_grids, std::uint32_t height_grids, double grid_size);

    std::uint32_t width() const noexcept { return width_; }
    std::uint32_t height() const noexcept { return height_; }
    double grid_size() const noexcept { return grid_size_; }
    std::size_t size() const noexcept { return centers_.size(); }

    Vec2 center(GridIndex k) const { return centers_[k]; }
    std::span<const Vec2> centers() const noexcept { return centers_; }

    Cell cell(GridIndex k) const noexcept { return {k % width_, k / width_}; }
    GridIndex index(Cell c) const noexcept { return c.iy * width_ + c.ix; }
    bool contains(std::int64_t ix, std::int64_t iy) const noexcept {
        return ix >= 0 && iy >= 0 && ix < width_ && iy < height_;
    }

    /// Grid whose square contains `p`; points outside the field clamp to the border.
    GridIndex containing_grid(Vec2 p) const noexcept;

    /// max{x, y} of the grid center, in meters.
    double chebyshev(GridIndex k) const noexcept {
        return std::max(centers_[k].x, centers_[k].y);
    }

    /// In-map 8-neighbours of k in ascending index order.
    std::vector<GridIndex> neighbours(GridIndex k) const;

private:
    std::uint32_t width_;
    std::uint32_t height_;
    double grid_size_;
    std::vector<Vec2> centers_;
};

GridMap build_grid_map(std::uint32_t width_grids, std::uint32_t height_grids, double grid_size);

struct VisitEvent {
    RobotId robot = 0;
    GridIndex grid = 0;
    Timestep time = 0;

    friend bool operator==(const VisitEvent&, const VisitEvent&) = default;
};

/// Ground-truth idleness. idleness[k] == t - last_visit[k] always holds.
struct WorldState {
    Timestep t = 0;
    std::vector<Timestep> idleness;
    std::vector<Timestep> last_visit;

    explicit WorldState(std::size_t grids = 0) : idleness(grids, 0), last_visit(grids, 0) {}
};

void advance_time(WorldState& world);

/// Emits one event per (operational robot, grid) pair within rho and resets
/// the visited grids. Events are ordered by robot id then grid index.
/// `positions` and `operational` are indexed by robot id; the base station
/// (id 0) never patrols and is skipped.
std::vector<VisitEvent> detect_patrol_completions(WorldState& world, const GridMap& map,
                                                  std::span<const Vec2> positions,
                                                  std::span<const char> operational, double rho);

}  // namespace lrpt
