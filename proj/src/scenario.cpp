#include "lrpt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "lrpt/errors.hpp"

namespace lrpt {

namespace {

double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

UtilityParams utility_params(const ScenarioConfig& c) {
    return {c.search_range, c.v_max, c.p_max, c.sigma};
}

}  // namespace

Mission::Mission(const ScenarioConfig& config, std::uint64_t seed)
    : config_((validate(config), config)),
      map_(config.width_grids, config.height_grids, config.grid_size),
      world_(map_.size()),
      pinned_(config.n_robots, 0),
      metrics_(config.warmup_t0, map_.size(), config.n_robots, config.keep_series),
      order_rng_(seed ^ 0x9e3779b97f4a7c15ULL) {
    config_.seed = seed;
    std::mt19937_64 placement(seed);
    const double radius = 2.0 * std::sqrt(static_cast<double>(config_.n_robots));

    robots_.resize(config_.n_robots);
    for (RobotId r = 0; r < config_.n_robots; ++r) {
        RobotState& robot = robots_[r];
        robot.id = r;
        robot.knowledge = AssumedIdleness(r, map_.size());
        if (r == kBaseStation) continue;
        const double dist = radius * std::sqrt(unit_draw(placement));
        const double bearing = unit_draw(placement) * std::numbers::pi / 2.0;
        robot.pose.position = {dist * std::cos(bearing), dist * std::sin(bearing)};
        robot.pose.heading = std::numbers::pi - 2.0 * std::numbers::pi * unit_draw(placement);
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), r};
        robot.rng.seed(seq);
    }
    for (RobotId r = 1; r < config_.n_robots; ++r) select_target(robots_[r]);

    broadcast();
    sa_update_on_report(sa_, robots_[kBaseStation].knowledge);
    metrics_.sample_instantaneous(world_, sa_, active_patrollers());
}

Mission init_mission(const ScenarioConfig& config, std::uint64_t seed) {
    return Mission(config, seed);
}

std::uint32_t Mission::active_patrollers() const noexcept {
    std::uint32_t n = 0;
    for (RobotId r = 1; r < robots_.size(); ++r) n += robots_[r].operational ? 1 : 0;
    return n;
}

std::vector<RobotId> Mission::failing_robots() const {
    const auto& f = config_.failure;
    std::vector<RobotId> out;
    if (!f.enabled()) return out;
    const std::uint32_t patrollers = config_.n_robots - 1;
    const double raw = std::ceil(f.fraction * patrollers - 1e-9);
    const auto count = std::min<std::uint32_t>(patrollers, static_cast<std::uint32_t>(std::max(raw, 0.0)));
    for (std::uint32_t i = 0; i < count; ++i) out.push_back(config_.n_robots - 1 - i);
    std::sort(out.begin(), out.end());
    return out;
}

void Mission::pin_robot(RobotId id, Vec2 position) {
    robots_.at(id).pose.position = position;
    pinned_.at(id) = 1;
    // Connectivity must reflect the new position before the next delivery.
    broadcast();
}

void Mission::apply_failure_schedule(Timestep t) {
    const auto& f = config_.failure;
    if (!f.enabled()) return;
    if (t == f.fail_at) {
        for (RobotId r : failing_robots()) robots_[r].operational = false;
    } else if (t == f.recover_at) {
        for (RobotId r : failing_robots()) {
            auto& robot = robots_[r];
            robot.operational = true;
            robot.priority.p = 0.0;
            robot.needs_selection = true;
        }
    }
}

void Mission::select_target(RobotState& robot) {
    const Vec2 pos = robot.pose.position;
    switch (config_.strategy) {
        case StrategyKind::LrPt:
            robot.selection =
                select_patrol_target(pos, robot.knowledge, robot.priority.p, utility_params(config_), map_, world_.t);
            break;
        case StrategyKind::ExpectedReactive:
            robot.selection = er_select(pos, robot.knowledge, utility_params(config_), map_, world_.t);
            break;
        case StrategyKind::RandomWalk:
            robot.selection = random_walk_select(pos, map_, robot.rng, world_.t);
            break;
    }
    robot.needs_selection = false;
}

std::vector<RobotId> Mission::processing_order() {
    std::vector<RobotId> order(robots_.size());
    for (RobotId r = 0; r < order.size(); ++r) order[r] = r;
    if (config_.shuffle_order) std::shuffle(order.begin(), order.end(), order_rng_);
    return order;
}

template <typename Fn>
void Mission::for_each_robot(const std::vector<RobotId>& order, Fn&& fn) {
    const auto n = static_cast<std::ptrdiff_t>(order.size());
#pragma omp parallel for num_threads(config_.threads) schedule(static) if (config_.threads > 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(order[static_cast<std::size_t>(i)]);
}

void Mission::broadcast() {
    std::vector<Vec2> positions(robots_.size());
    std::vector<char> operational(robots_.size());
    for (RobotId r = 0; r < robots_.size(); ++r) {
        positions[r] = robots_[r].pose.position;
        operational[r] = robots_[r].operational ? 1 : 0;
    }
    graph_ = compute_connectivity(positions, operational, config_.comm_range);

    std::vector<MessageEnvelope> staged(robots_.size());
    const std::size_t s = config_.slice_size();
    for_each_robot(processing_order(), [&](RobotId r) {
        if (!operational[r] || graph_.neighbours[r].empty()) return;
        auto& robot = robots_[r];
        MessageEnvelope& env = staged[r];
        env.sender = r;
        env.sent_at = world_.t;
        env.knowledge = std::make_shared<const KnowledgeSlice>(robot.recency.top(robot.knowledge, s));
        if (r != kBaseStation) env.priority = PriorityPayload{robot.priority.p, robot.priority.bs_contact};
    });
    outbox_.clear();
    for (auto& env : staged) {
        if (env.knowledge) outbox_.push_back(std::move(env));
    }
}

void Mission::step() {
    const Timestep t = world_.t + 1;

    // Phase 1
    apply_failure_schedule(t);
    advance_time(world_);
    std::vector<char> operational(robots_.size());
    for (RobotId r = 0; r < robots_.size(); ++r) {
        operational[r] = robots_[r].operational ? 1 : 0;
        if (operational[r]) robots_[r].knowledge.tick();
    }

    // Phase 2
    const auto inboxes = deliver(outbox_, graph_, operational);

    // Phase 3
    const PriorityParams pparams{config_.p_max, config_.eta};
    std::vector<std::size_t> rejected(robots_.size(), 0);
    for_each_robot(processing_order(), [&](RobotId r) {
        if (!operational[r]) return;
        auto& robot = robots_[r];
        const Inbox& inbox = inboxes[r];
        std::vector<const KnowledgeSlice*> slices;
        slices.reserve(inbox.size());
        for (const auto* env : inbox) slices.push_back(env->knowledge.get());
        rejected[r] = robot.knowledge.merge_received(slices);
        if (r == kBaseStation) return;

        std::vector<PriorityMessage> messages;
        messages.reserve(inbox.size());
        for (const auto* env : inbox) {
            PriorityMessage m;
            m.sender = env->sender;
            m.from_base_station = env->from_base_station();
            if (env->priority) {
                m.p = env->priority->p;
                m.bs_contact = env->priority->bs_contact;
            }
            messages.push_back(m);
        }
        const bool at_base = graph_.connected(r, kBaseStation);
        robot.priority = update_report_priority(robot.priority, messages, at_base, t, pparams);
    });
    for (auto n : rejected) rejected_envelopes_ += n;

    // Phase 4
    const KinematicLimits limits{config_.v_max, config_.phi_max};
    for_each_robot(processing_order(), [&](RobotId r) {
        if (r == kBaseStation || !operational[r] || pinned_[r]) return;
        auto& robot = robots_[r];
        const Vec2 waypoint = map_.center(robot.selection.temporary_grid);
        robot.pose = config_.holonomic ? step_holonomic(robot.pose, waypoint, limits)
                                       : step_toward(robot.pose, waypoint, limits);
    });

    // Phase 5
    std::vector<Vec2> positions(robots_.size());
    for (RobotId r = 0; r < robots_.size(); ++r) positions[r] = robots_[r].pose.position;
    const auto visits = detect_patrol_completions(world_, map_, positions, operational, config_.rho);
    std::vector<char> reached(robots_.size(), 0);
    for (const auto& e : visits) {
        auto& robot = robots_[e.robot];
        robot.knowledge.record_patrol(e.grid, t);
        metrics_.record_visit_heatmap(e);
        events_.push_back(e);
        if (e.grid == robot.selection.temporary_grid) reached[e.robot] = 1;
    }
    for_each_robot(processing_order(), [&](RobotId r) {
        if (r == kBaseStation || !operational[r] || pinned_[r]) return;
        auto& robot = robots_[r];
        if (reached[r] || robot.needs_selection) select_target(robot);
    });

    // Phase 6
    broadcast();

    // Phase 7
    sa_update_on_report(sa_, robots_[kBaseStation].knowledge);
    metrics_.sample_instantaneous(world_, sa_, active_patrollers());
}

void Mission::run_to_end() {
    while (!finished()) step();
}

std::uint64_t event_log_digest(std::span<const VisitEvent> events) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& e : events) {
        mix(e.time);
        mix(e.robot);
        mix(e.grid);
    }
    return h;
}

TrialResult run_trial(const ScenarioConfig& config, std::uint64_t seed) {
    Mission mission(config, seed);
    mission.run_to_end();

    TrialResult result;
    result.config = mission.config();
    result.seed = seed;
    result.metrics = mission.metrics().finalize();
    const std::size_t n = config.n_robots;
    const std::size_t k = mission.map().size();
    result.normalized = {normalize(result.metrics.graph_idleness, n, k),
                         normalize(result.metrics.worst_idleness, n, k),
                         normalize(result.metrics.mean_sa_delay, n, k),
                         normalize(result.metrics.worst_sa_delay, n, k)};
    result.visit_counts = mission.metrics().visit_counts();
    result.series = mission.metrics().series();
    result.events = mission.events();
    result.event_digest = event_log_digest(result.events);
    result.rejected_envelopes = mission.rejected_envelopes();
    return result;
}

namespace {

template <typename Get>
MetricSummary summarize_one(std::span<const TrialResult> trials, Get get) {
    MetricSummary s;
    s.min = get(trials.front());
    s.max = s.min;
    double sum = 0.0;
    for (const auto& t : trials) {
        const double v = get(t);
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean = sum / static_cast<double>(trials.size());
    return s;
}

}  // namespace

BatchSummary summarize(std::span<const TrialResult> trials) {
    if (trials.empty()) return {};
    BatchSummary b;
    b.graph_idleness = summarize_one(trials, [](const TrialResult& t) { return t.metrics.graph_idleness; });
    b.worst_idleness = summarize_one(trials, [](const TrialResult& t) { return t.metrics.worst_idleness; });
    b.mean_sa_delay = summarize_one(trials, [](const TrialResult& t) { return t.metrics.mean_sa_delay; });
    b.worst_sa_delay = summarize_one(trials, [](const TrialResult& t) { return t.metrics.worst_sa_delay; });
    b.n_graph_idleness = summarize_one(trials, [](const TrialResult& t) { return t.normalized.graph_idleness; });
    b.n_worst_idleness = summarize_one(trials, [](const TrialResult& t) { return t.normalized.worst_idleness; });
    b.n_mean_sa_delay = summarize_one(trials, [](const TrialResult& t) { return t.normalized.mean_sa_delay; });
    b.n_worst_sa_delay = summarize_one(trials, [](const TrialResult& t) { return t.normalized.worst_sa_delay; });
    return b;
}

BatchResult run_batch(const ScenarioConfig& config, std::uint32_t trials, std::uint64_t base_seed) {
    if (trials < 1) throw ConfigError("trials", "must be >= 1");
    validate(config);
    ScenarioConfig per_trial = config;
    const std::uint32_t threads = config.threads;
    per_trial.threads = 1;

    BatchResult out;
    out.trials.resize(trials);
    std::vector<std::exception_ptr> errors(trials);
    const auto n = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for num_threads(threads) schedule(dynamic) if (threads > 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out.trials[static_cast<std::size_t>(i)] = run_trial(per_trial, base_seed + static_cast<std::uint64_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    for (auto& t : out.trials) t.config.threads = threads;
    out.summary = summarize(out.trials);
    return out;
}

std::vector<SweepRow> parameter_sweep(const ScenarioConfig& config, std::span<const double> etas,
                                      std::span<const double> p_maxes, std::span<const double> sigmas,
                                      std::uint32_t trials_per_point, std::uint64_t base_seed) {
    if (etas.empty()) throw ConfigError("eta-list", "sweep grid is empty");
    if (p_maxes.empty()) throw ConfigError("pm-list", "sweep grid is empty");
    if (sigmas.empty()) throw ConfigError("sigma-list", "sweep grid is empty");
    std::vector<SweepRow> rows;
    for (double eta : etas) {
        for (double pm : p_maxes) {
            for (double sigma : sigmas) {
                ScenarioConfig point = config;
                point.eta = eta;
                point.p_max = pm;
                point.sigma = sigma;
                point.keep_series = false;
                const auto batch = run_batch(point, trials_per_point, base_seed);
                rows.push_back({eta, pm, sigma, batch.summary.graph_idleness.mean, batch.summary.worst_idleness.mean});
            }
        }
    }
    return rows;
}

}  // namespace lrpt
