#include "lrpt/comms.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>

namespace lrpt {

bool ConnectivityGraph::connected(RobotId a, RobotId b) const {
    const auto& n = neighbours[a];
    return std::binary_search(n.begin(), n.end(), b);
}

ConnectivityGraph compute_connectivity(std::span<const Vec2> positions, std::span<const char> operational,
                                       double comm_range) {
    ConnectivityGraph g;
    g.neighbours.resize(positions.size());
    for (RobotId a = 0; a < positions.size(); ++a) {
        if (!operational[a]) continue;
        for (RobotId b = a + 1; b < positions.size(); ++b) {
            if (!operational[b]) continue;
            if (distance(positions[a], positions[b]) <= comm_range) {
                g.neighbours[a].push_back(b);
                g.neighbours[b].push_back(a);
            }
        }
    }
    // Ascending b for each a, and a < b pushes arrive in ascending a order.
    return g;
}

std::vector<Inbox> deliver(std::span<const MessageEnvelope> outbox, const ConnectivityGraph& previous_graph,
                           std::span<const char> can_receive) {
    const std::size_t n = previous_graph.neighbours.size();
    std::vector<const MessageEnvelope*> by_sender(n, nullptr);
    for (const auto& env : outbox) {
        if (env.sender < n) by_sender[env.sender] = &env;
    }
    std::vector<Inbox> inboxes(n);
    for (RobotId r = 0; r < n; ++r) {
        if (!can_receive[r]) continue;
        for (RobotId m : previous_graph.neighbours[r]) {
            if (by_sender[m] != nullptr) inboxes[r].push_back(by_sender[m]);
        }
    }
    return inboxes;
}

namespace {

static_assert(std::endian::native == std::endian::little, "wire encoding assumes a little-endian host");

template <typename T>
void put(std::string& out, T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.append(buf, sizeof(T));
}

template <typename T>
T take(std::string_view bytes, std::size_t& offset) {
    if (bytes.size() - offset < sizeof(T) || offset > bytes.size()) {
        throw std::runtime_error("truncated envelope at byte " + std::to_string(offset));
    }
    T value;
    std::memcpy(&value, bytes.data() + offset, sizeof(T));
    offset += sizeof(T);
    return value;
}

}  // namespace

std::string encode_envelope(const MessageEnvelope& envelope) {
    std::string out;
    const std::size_t count = envelope.knowledge ? envelope.knowledge->size() : 0;
    out.reserve(4 + 8 + 1 + 16 + 4 + count * 20);
    put<std::uint32_t>(out, envelope.sender);
    put<std::uint64_t>(out, envelope.sent_at);
    put<std::uint8_t>(out, envelope.priority ? 1 : 0);
    if (envelope.priority) {
        put<double>(out, envelope.priority->p);
        put<std::uint64_t>(out, envelope.priority->bs_contact);
    }
    put<std::uint32_t>(out, static_cast<std::uint32_t>(count));
    if (envelope.knowledge) {
        for (const auto& e : *envelope.knowledge) {
            put<std::uint32_t>(out, e.grid);
            put<std::uint64_t>(out, e.assumed_idleness);
            put<std::uint64_t>(out, e.update_time);
        }
    }
    return out;
}

MessageEnvelope decode_envelope(std::string_view bytes, std::size_t& offset) {
    MessageEnvelope env;
    env.sender = take<std::uint32_t>(bytes, offset);
    env.sent_at = take<std::uint64_t>(bytes, offset);
    const auto has_priority = take<std::uint8_t>(bytes, offset);
    if (has_priority > 1) throw std::runtime_error("bad priority flag in envelope");
    if (has_priority) {
        PriorityPayload pp;
        pp.p = take<double>(bytes, offset);
        pp.bs_contact = take<std::uint64_t>(bytes, offset);
        env.priority = pp;
    }
    const auto count = take<std::uint32_t>(bytes, offset);
    auto slice = std::make_shared<KnowledgeSlice>();
    slice->reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        KnowledgeEntry e;
        e.grid = take<std::uint32_t>(bytes, offset);
        e.assumed_idleness = take<std::uint64_t>(bytes, offset);
        e.update_time = take<std::uint64_t>(bytes, offset);
        slice->push_back(e);
    }
    env.knowledge = std::move(slice);
    return env;
}

}  // namespace lrpt
