#pragma once

#include <span>
#include <vector>

#include "lrpt/geometry.hpp"

namespace lrpt {

/// One robot's belief about one grid: assumed idleness and the time of the
/// visit it derives from.
struct AssumedEntry {
    Timestep assumed_idleness = 0;
    Timestep update_time = 0;

    friend bool operator==(const AssumedEntry&, const AssumedEntry&) = default;
};

/// Wire form of an AssumedEntry, tagged with its grid.
struct KnowledgeEntry {
    GridIndex grid = 0;
    Timestep assumed_idleness = 0;
    Timestep update_time = 0;

    friend bool operator==(const KnowledgeEntry&, const KnowledgeEntry&) = default;
};

using KnowledgeSlice = std::vector<KnowledgeEntry>;

/// Per-robot assumed-idleness base. Holds exactly K entries regardless of
/// swarm size.
class AssumedIdleness {
public:
    AssumedIdleness() = default;
    AssumedIdleness(RobotId owner, std::size_t grids) : owner_(owner), entries_(grids) {}

    RobotId owner() const noexcept { return owner_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const AssumedEntry& operator[](GridIndex k) const { return entries_[k]; }
    std::span<const AssumedEntry> entries() const noexcept { return entries_; }

    /// Ages every assumption by one step; update times are untouched.
    void tick();

    /// The owner patrolled `grid` at `now`.
    void record_patrol(GridIndex grid, Timestep now);

    /// Adopts every received entry whose update time is strictly newer than
    /// the local one, verbatim. Slices are applied in the given order, so on
    /// equal update times the first slice wins. A slice naming a grid outside
    /// the map is rejected whole; the return value counts rejected slices.
    std::size_t merge_received(std::span<const KnowledgeSlice* const> slices);
    std::size_t merge_received(const KnowledgeSlice& slice);

private:
    RobotId owner_ = 0;
    std::vector<AssumedEntry> entries_;
};

/// The `s` entries with the most recent update time, newest first; ties go to
/// the smaller grid index. Returns all K entries when s >= K.
KnowledgeSlice truncate_knowledge(const AssumedIdleness& knowledge, std::size_t s);

/// Produces the same slices as truncate_knowledge for one knowledge base
/// across successive steps, reusing the previous ordering. Between calls only
/// a few entries change, so re-sorting is close to linear.
class RecencyIndex {
public:
    KnowledgeSlice top(const AssumedIdleness& knowledge, std::size_t s);

private:
    std::vector<std::uint64_t> keys_;
};

}  // namespace lrpt
