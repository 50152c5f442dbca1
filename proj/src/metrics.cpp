#include "lrpt/metrics.hpp"

#include <algorithm>

#include "lrpt/errors.hpp"

namespace lrpt {

void sa_update_on_report(SAView& view, const AssumedIdleness& bs_knowledge) {
    view.update_times.resize(bs_knowledge.size());
    for (GridIndex k = 0; k < bs_knowledge.size(); ++k) {
        view.update_times[k] = bs_knowledge[k].update_time;
    }
}

MetricsAccumulator::MetricsAccumulator(Timestep warmup_t0, std::size_t grids, std::size_t robots, bool keep_series)
    : warmup_t0_(warmup_t0),
      grids_(grids),
      keep_series_(keep_series),
      visit_counts_(robots, std::vector<std::uint64_t>(grids, 0)) {}

void MetricsAccumulator::sample_instantaneous(const WorldState& world, const SAView& sa, std::uint32_t n_active) {
    std::uint64_t idle_sum = 0;
    Timestep idle_max = 0;
    for (Timestep i : world.idleness) {
        idle_sum += i;
        idle_max = std::max(idle_max, i);
    }
    std::uint64_t sa_sum = 0;
    Timestep sa_max = 0;
    for (GridIndex k = 0; k < grids_; ++k) {
        const Timestep d = sa.delay(k, world.t);
        sa_sum += d;
        sa_max = std::max(sa_max, d);
    }

    if (world.t >= warmup_t0_) {
        ++samples_;
        idleness_sum_ += idle_sum;
        sa_sum_ += sa_sum;
        max_idleness_ = std::max(max_idleness_, idle_max);
        max_sa_ = std::max(max_sa_, sa_max);
    }
    if (keep_series_) {
        InstantSample s;
        s.t = world.t;
        s.mean_idleness = static_cast<double>(idle_sum) / static_cast<double>(grids_);
        s.worst_idleness = idle_max;
        s.mean_sa_delay = static_cast<double>(sa_sum) / static_cast<double>(grids_);
        s.worst_sa_delay = sa_max;
        s.n_active = n_active;
        s.normalized_mean_idleness = normalize_active(s.mean_idleness, n_active, grids_);
        s.normalized_mean_sa_delay = normalize_active(s.mean_sa_delay, n_active, grids_);
        series_.push_back(s);
    }
}

void MetricsAccumulator::record_visit_heatmap(const VisitEvent& event) {
    ++visit_counts_[event.robot][event.grid];
}

FinalMetrics MetricsAccumulator::finalize() const {
    if (samples_ == 0) {
        throw MetricsError("no samples at or after warm-up step " + std::to_string(warmup_t0_) +
                           " (mission shorter than warm-up)");
    }
    const double denom = static_cast<double>(samples_) * static_cast<double>(grids_);
    FinalMetrics m;
    m.graph_idleness = static_cast<double>(idleness_sum_) / denom;
    m.worst_idleness = static_cast<double>(max_idleness_);
    m.mean_sa_delay = static_cast<double>(sa_sum_) / denom;
    m.worst_sa_delay = static_cast<double>(max_sa_);
    return m;
}

std::vector<std::uint64_t> MetricsAccumulator::total_heatmap() const {
    std::vector<std::uint64_t> total(grids_, 0);
    for (const auto& row : visit_counts_) {
        for (std::size_t k = 0; k < grids_; ++k) total[k] += row[k];
    }
    return total;
}

double normalize(double metric, std::size_t n_robots, std::size_t grids) {
    return metric * static_cast<double>(n_robots - 1) / static_cast<double>(grids);
}

double normalize_active(double metric, std::size_t n_active, std::size_t grids) {
    return metric * static_cast<double>(n_active) / static_cast<double>(grids);
}

}  // namespace lrpt
