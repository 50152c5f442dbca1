#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrpt/knowledge.hpp"
#include "lrpt/priority.hpp"

namespace lrpt {

/// Symmetric range-limited adjacency over operational robots.
/// Neighbour lists are sorted by robot id.
struct ConnectivityGraph {
    std::vector<std::vector<RobotId>> neighbours;

    bool connected(RobotId a, RobotId b) const;
};

/// `operational` is indexed by robot id; non-operational robots get empty
/// neighbour sets and appear in no other set. Range is inclusive.
ConnectivityGraph compute_connectivity(std::span<const Vec2> positions, std::span<const char> operational,
                                       double comm_range);

struct PriorityPayload {
    double p = 0.0;
    Timestep bs_contact = 0;

    friend bool operator==(const PriorityPayload&, const PriorityPayload&) = default;
};

/// One robot's broadcast for one step. The slice is shared by every
/// recipient of the broadcast. The base station sends no priority payload.
struct MessageEnvelope {
    RobotId sender = 0;
    Timestep sent_at = 0;
    std::shared_ptr<const KnowledgeSlice> knowledge;
    std::optional<PriorityPayload> priority;

    bool from_base_station() const noexcept { return !priority.has_value(); }
};

using Inbox = std::vector<const MessageEnvelope*>;

/// Routes envelopes sent at t-1 along the t-1 graph. `outbox` holds at most
/// one envelope per sender. Each inbox is sorted by sender id. Recipients
/// with `can_receive` false get nothing. Pointers refer into `outbox`.
std::vector<Inbox> deliver(std::span<const MessageEnvelope> outbox, const ConnectivityGraph& previous_graph,
                           std::span<const char> can_receive);

/// Little-endian wire form: u32 sender, u64 sent_at, u8 has_priority,
/// [f64 p, u64 bs_contact], u32 count, then count x (u32 grid, u64 idleness,
/// u64 update_time).
std::string encode_envelope(const MessageEnvelope& envelope);

/// Parses one envelope starting at `offset`, advancing it. Throws
/// std::runtime_error on truncated input.
MessageEnvelope decode_envelope(std::string_view bytes, std::size_t& offset);

}  // namespace lrpt
