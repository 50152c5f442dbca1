#pragma once

#include <span>

#include "lrpt/geometry.hpp"

namespace lrpt {

/// Report priority and the time of the last direct base-station contact.
struct PriorityState {
    double p = 0.0;
    Timestep bs_contact = 0;

    friend bool operator==(const PriorityState&, const PriorityState&) = default;
};

/// What a neighbour sent last step. The base station sends no priority, only
/// its identity matters.
struct PriorityMessage {
    RobotId sender = 0;
    double p = 0.0;
    Timestep bs_contact = 0;
    bool from_base_station = false;
};

struct PriorityParams {
    double p_max = 0.0;
    double eta = 0.0;
};

/// One step of the report-priority update.
///
/// Grows p by one (capped at p_max) unless directly connected to the base
/// station, then walks the inbox in ascending sender order: a base-station
/// message refreshes `bs_contact`; a robot whose own base contact is older
/// than ours hands its priority over, p <- max(p, p_m) + eta * min(p, p_m).
/// If the inbox was non-empty and neither happened, the duty is assumed to
/// have been taken by someone else and p drops to zero. The result never
/// exceeds p_max * (1 + eta).
PriorityState update_report_priority(PriorityState state, std::span<const PriorityMessage> inbox,
                                     bool connected_to_bs, Timestep now, const PriorityParams& params);

inline double priority_bound(const PriorityParams& params) {
    return params.p_max * (1.0 + params.eta);
}

}  // namespace lrpt
