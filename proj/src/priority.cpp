#include "lrpt/priority.hpp"

#include <algorithm>

namespace lrpt {

PriorityState update_report_priority(PriorityState state, std::span<const PriorityMessage> inbox,
                                     bool connected_to_bs, Timestep now, const PriorityParams& params) {
    if (!connected_to_bs) {
        state.p = std::min(params.p_max, state.p + 1.0);
    }
    if (inbox.empty()) return state;

    bool adopted = false;
    bool met_base = false;
    for (const auto& msg : inbox) {
        if (msg.from_base_station) {
            state.bs_contact = now;
            met_base = true;
        } else if (msg.bs_contact < state.bs_contact) {
            state.p = std::max(state.p, msg.p) + params.eta * std::min(state.p, msg.p);
            adopted = true;
        }
    }
    if (!adopted && !met_base) {
        state.p = 0.0;
    }
    // Several hand-overs in one step, or one while parked at the base, can
    // compound past the single-exchange ceiling.
    state.p = std::min(state.p, priority_bound(params));
    return state;
}

}  // namespace lrpt
