#include "lrpt/export.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lrpt/errors.hpp"
#include "lrpt/format.hpp"

namespace lrpt {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    return in;
}

template <typename T>
T to_uint(const std::string& text, const fs::path& path) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return static_cast<T>(v);
    } catch (const std::exception&) {
        throw IoError("bad integer '" + text + "' in " + path.string());
    }
}

double to_real(const std::string& text, const fs::path& path) {
    try {
        return parse_real(text);
    } catch (const std::exception&) {
        throw IoError("bad number '" + text + "' in " + path.string());
    }
}

void write_matrix(const std::vector<std::uint64_t>& counts, const GridMap& map, const fs::path& path) {
    auto out = open_out(path);
    for (std::uint32_t iy = 0; iy < map.height(); ++iy) {
        for (std::uint32_t ix = 0; ix < map.width(); ++ix) {
            if (ix) out << ',';
            out << counts[map.index({ix, iy})];
        }
        out << '\n';
    }
    finish(out, path);
}

bool close_enough(double a, double b) {
    if (a == b) return true;
    return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

MetricsRow to_metrics_row(const TrialResult& r) {
    return {r.seed,
            r.config.n_robots,
            r.config.grids(),
            r.config.slice_size(),
            std::string(to_string(r.config.strategy)),
            r.metrics,
            r.normalized};
}

std::string format_metrics_row(const MetricsRow& row) {
    std::ostringstream out;
    out << row.seed << ',' << row.n_robots << ',' << row.grids << ',' << row.slice_size << ',' << row.strategy;
    for (const FinalMetrics* m : {&row.metrics, &row.normalized}) {
        out << ',' << format_real(m->graph_idleness) << ',' << format_real(m->worst_idleness) << ','
            << format_real(m->mean_sa_delay) << ',' << format_real(m->worst_sa_delay);
    }
    return out.str();
}

void write_run_artifacts(const TrialResult& result, const fs::path& out_dir) {
    make_dir(out_dir);
    const GridMap map(result.config.width_grids, result.config.height_grids, result.config.grid_size);

    {
        const auto path = out_dir / "metrics.csv";
        auto out = open_out(path);
        out << kMetricsHeader << '\n' << format_metrics_row(to_metrics_row(result)) << '\n';
        finish(out, path);
    }
    {
        const auto path = out_dir / "timeseries.csv";
        auto out = open_out(path);
        out << kTimeseriesHeader << '\n';
        for (const auto& s : result.series) {
            out << s.t << ',' << format_real(s.mean_idleness) << ',' << s.worst_idleness << ','
                << format_real(s.mean_sa_delay) << ',' << s.worst_sa_delay << ',' << s.n_active << ','
                << format_real(s.normalized_mean_idleness) << ',' << format_real(s.normalized_mean_sa_delay) << '\n';
        }
        finish(out, path);
    }
    std::vector<std::uint64_t> total(map.size(), 0);
    for (RobotId r = 1; r < result.visit_counts.size(); ++r) {
        const auto& counts = result.visit_counts[r];
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += counts[k];
        write_matrix(counts, map, out_dir / ("heatmap_robot_" + std::to_string(r) + ".csv"));
    }
    write_matrix(total, map, out_dir / "heatmap_total.csv");
    {
        const auto path = out_dir / "events.log";
        auto out = open_out(path);
        out << kEventsHeader << '\n';
        for (const auto& e : result.events) out << e.time << ',' << e.robot << ',' << e.grid << '\n';
        finish(out, path);
    }
    {
        const auto path = out_dir / "config.cfg";
        auto out = open_out(path);
        out << to_config_text(result.config);
        finish(out, path);
    }
}

void write_batch_artifacts(const BatchResult& batch, const fs::path& out_dir) {
    make_dir(out_dir);
    for (const auto& trial : batch.trials) {
        write_run_artifacts(trial, out_dir / ("trial_" + std::to_string(trial.seed)));
    }
    {
        const auto path = out_dir / "metrics.csv";
        auto out = open_out(path);
        out << kMetricsHeader << '\n';
        for (const auto& trial : batch.trials) out << format_metrics_row(to_metrics_row(trial)) << '\n';
        finish(out, path);
    }
    const auto path = out_dir / "summary.csv";
    auto out = open_out(path);
    out << "metric,mean,min,max\n";
    const auto& s = batch.summary;
    const std::pair<const char*, const MetricSummary*> rows[] = {
        {"I_G", &s.graph_idleness},        {"I_W", &s.worst_idleness},
        {"D_MSA", &s.mean_sa_delay},       {"D_WSA", &s.worst_sa_delay},
        {"norm_I_G", &s.n_graph_idleness}, {"norm_I_W", &s.n_worst_idleness},
        {"norm_D_MSA", &s.n_mean_sa_delay}, {"norm_D_WSA", &s.n_worst_sa_delay},
    };
    for (const auto& [name, m] : rows) {
        out << name << ',' << format_real(m->mean) << ',' << format_real(m->min) << ',' << format_real(m->max) << '\n';
    }
    finish(out, path);
}

void write_sweep_table(const std::vector<SweepRow>& rows, const fs::path& path) {
    if (path.has_parent_path()) make_dir(path.parent_path());
    auto out = open_out(path);
    out << "eta,p_max,sigma,mean_I_G,mean_I_W\n";
    for (const auto& r : rows) {
        out << format_real(r.eta) << ',' << format_real(r.p_max) << ',' << format_real(r.sigma) << ','
            << format_real(r.mean_graph_idleness) << ',' << format_real(r.mean_worst_idleness) << '\n';
    }
    finish(out, path);
}

std::vector<MetricsRow> read_metrics_csv(const fs::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != kMetricsHeader) {
        throw IoError("unexpected header in " + path.string());
    }
    std::vector<MetricsRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 13) throw IoError("expected 13 columns in " + path.string());
        MetricsRow r;
        r.seed = to_uint<std::uint64_t>(cells[0], path);
        r.n_robots = to_uint<std::uint32_t>(cells[1], path);
        r.grids = to_uint<std::size_t>(cells[2], path);
        r.slice_size = to_uint<std::size_t>(cells[3], path);
        r.strategy = cells[4];
        r.metrics = {to_real(cells[5], path), to_real(cells[6], path), to_real(cells[7], path), to_real(cells[8], path)};
        r.normalized = {to_real(cells[9], path), to_real(cells[10], path), to_real(cells[11], path),
                        to_real(cells[12], path)};
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<VisitEvent> read_events_log(const fs::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != kEventsHeader) {
        throw IoError("unexpected header in " + path.string());
    }
    std::vector<VisitEvent> events;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 3) throw IoError("expected 3 columns in " + path.string());
        events.push_back({to_uint<RobotId>(cells[1], path), to_uint<GridIndex>(cells[2], path),
                          to_uint<Timestep>(cells[0], path)});
    }
    return events;
}

std::vector<std::vector<std::uint64_t>> read_heatmap(const fs::path& path) {
    auto in = open_in(path);
    std::vector<std::vector<std::uint64_t>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::uint64_t> row;
        for (const auto& cell : split_csv(line)) row.push_back(to_uint<std::uint64_t>(cell, path));
        rows.push_back(std::move(row));
    }
    return rows;
}

ReplayOutcome replay_events(const std::vector<VisitEvent>& events, const ScenarioConfig& config) {
    const std::size_t k_grids = config.grids();
    const Timestep horizon = config.mission_duration;
    ReplayOutcome out;
    out.visit_counts.assign(config.n_robots, std::vector<std::uint64_t>(k_grids, 0));

    std::vector<Timestep> last(k_grids, 0);
    std::uint64_t idle_total = 0;
    std::size_t next = 0;
    for (Timestep t = 0; t <= horizon; ++t) {
        for (; next < events.size() && events[next].time == t; ++next) {
            const auto& e = events[next];
            if (e.grid >= k_grids || e.robot >= config.n_robots || e.robot == kBaseStation) {
                throw IoError("event outside map or swarm at t=" + std::to_string(t));
            }
            last[e.grid] = t;
            ++out.visit_counts[e.robot][e.grid];
        }
        if (next < events.size() && events[next].time < t) {
            throw IoError("events out of time order near t=" + std::to_string(t));
        }
        if (t < config.warmup_t0) continue;
        ++out.samples;
        for (Timestep lv : last) {
            idle_total += t - lv;
            out.worst_idleness = std::max(out.worst_idleness, t - lv);
        }
    }
    if (next != events.size()) throw IoError("events beyond mission end");
    if (out.samples > 0) {
        out.graph_idleness =
            static_cast<double>(idle_total) / (static_cast<double>(out.samples) * static_cast<double>(k_grids));
    }
    return out;
}

VerifyReport verify_run(const fs::path& events_path, const ScenarioConfig& config) {
    VerifyReport report;
    auto fail = [&report](std::string msg) {
        report.ok = false;
        report.mismatches.push_back(std::move(msg));
    };
    const fs::path dir = events_path.parent_path().empty() ? fs::path(".") : events_path.parent_path();
    const auto events = read_events_log(events_path);
    const auto replay = replay_events(events, config);
    const auto rows = read_metrics_csv(dir / "metrics.csv");
    if (rows.size() != 1) {
        fail("metrics.csv holds " + std::to_string(rows.size()) + " rows, expected 1");
        return report;
    }
    const auto& row = rows.front();
    if (row.n_robots != config.n_robots) fail("N differs between metrics.csv and config");
    if (row.grids != config.grids()) fail("K differs between metrics.csv and config");
    if (replay.samples == 0) fail("no samples in the measurement window");
    if (!close_enough(row.metrics.graph_idleness, replay.graph_idleness)) {
        fail("I_G: file " + format_real(row.metrics.graph_idleness) + " replay " + format_real(replay.graph_idleness));
    }
    if (row.metrics.worst_idleness != static_cast<double>(replay.worst_idleness)) {
        fail("I_W: file " + format_real(row.metrics.worst_idleness) + " replay " +
             std::to_string(replay.worst_idleness));
    }
    const double n_ig = normalize(replay.graph_idleness, config.n_robots, config.grids());
    if (!close_enough(row.normalized.graph_idleness, n_ig)) fail("normalized I_G mismatch");

    const GridMap map(config.width_grids, config.height_grids, config.grid_size);
    auto compare = [&](const std::vector<std::uint64_t>& expected, const fs::path& path) {
        if (!fs::exists(path)) {
            fail("missing " + path.filename().string());
            return;
        }
        const auto matrix = read_heatmap(path);
        bool same = matrix.size() == map.height();
        for (std::uint32_t iy = 0; same && iy < map.height(); ++iy) {
            same = matrix[iy].size() == map.width();
            for (std::uint32_t ix = 0; same && ix < map.width(); ++ix) {
                same = matrix[iy][ix] == expected[map.index({ix, iy})];
            }
        }
        if (!same) fail(path.filename().string() + " differs from replayed visit counts");
    };
    std::vector<std::uint64_t> total(map.size(), 0);
    for (RobotId r = 1; r < config.n_robots; ++r) {
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += replay.visit_counts[r][k];
        compare(replay.visit_counts[r], dir / ("heatmap_robot_" + std::to_string(r) + ".csv"));
    }
    compare(total, dir / "heatmap_total.csv");
    return report;
}

}  // namespace lrpt
