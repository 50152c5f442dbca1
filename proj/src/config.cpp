#include "lrpt/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lrpt/errors.hpp"
#include "lrpt/format.hpp"

namespace lrpt {

ScenarioConfig tuned_defaults(std::uint32_t n_robots) {
    ScenarioConfig c;
    c.n_robots = n_robots;
    switch (n_robots) {
        case 5: c.eta = 0.55; c.p_max = 1088; c.sigma = 356; break;
        case 15: c.eta = 0.50; c.p_max = 425; c.sigma = 525; break;
        default: c.eta = 0.40; c.p_max = 703; c.sigma = 304; break;
    }
    return c;
}

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(field, what);
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(std::string(key), "cannot parse '" + std::string(value) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(value) + "'");
}

}  // namespace

void validate(const ScenarioConfig& c) {
    require(c.n_robots >= 2, "n_robots", "must be >= 2 (base station plus one patroller)");
    require(c.width_grids >= 1, "width_grids", "must be >= 1");
    require(c.height_grids >= 1, "height_grids", "must be >= 1");
    require(positive(c.grid_size), "grid_size", "must be positive");
    require(positive(c.rho), "rho", "must be positive");
    require(c.mission_duration >= 1, "mission_duration", "must be >= 1");
    require(positive(c.v_max), "v_max", "must be positive");
    require(positive(c.phi_max), "phi_max", "must be positive");
    require(positive(c.comm_range), "comm_range", "must be positive");
    require(positive(c.sensor_range), "sensor_range", "must be positive");
    require(positive(c.search_range), "search_range", "must be positive");
    require(c.search_range <= c.comm_range, "search_range", "must not exceed comm_range");
    require(c.eta >= 0.0 && c.eta < 1.0, "eta", "must be in [0, 1)");
    require(positive(c.p_max), "p_max", "must be positive");
    require(positive(c.sigma), "sigma", "must be positive");
    require(!c.bandwidth_s || *c.bandwidth_s >= 1, "bandwidth_s", "must be >= 1");
    require(c.trials >= 1, "trials", "must be >= 1");
    require(c.threads >= 1, "threads", "must be >= 1");
    const auto& f = c.failure;
    require(f.fraction >= 0.0 && f.fraction <= 1.0, "fail_fraction", "must be in [0, 1]");
    if (f.enabled()) {
        require(f.fail_at >= 1, "fail_at", "must be >= 1");
        require(f.fail_at < f.recover_at, "recover_at", "must be after fail_at");
        require(f.recover_at <= c.mission_duration, "recover_at", "must not exceed mission_duration");
    }
}

void apply_config_value(ScenarioConfig& c, std::string_view key, std::string_view value) {
    auto u32 = [&] { return parse_number<std::uint32_t>(key, value); };
    auto u64 = [&] { return parse_number<std::uint64_t>(key, value); };
    auto f64 = [&] { return parse_number<double>(key, value); };

    if (key == "n_robots") c.n_robots = u32();
    else if (key == "width_grids") c.width_grids = u32();
    else if (key == "height_grids") c.height_grids = u32();
    else if (key == "grid_size") c.grid_size = f64();
    else if (key == "rho") c.rho = f64();
    else if (key == "mission_duration") c.mission_duration = u64();
    else if (key == "warmup_t0") c.warmup_t0 = u64();
    else if (key == "v_max") c.v_max = f64();
    else if (key == "phi_max") c.phi_max = f64();
    else if (key == "comm_range") c.comm_range = f64();
    else if (key == "sensor_range") c.sensor_range = f64();
    else if (key == "search_range") c.search_range = f64();
    else if (key == "eta") c.eta = f64();
    else if (key == "p_max") c.p_max = f64();
    else if (key == "sigma") c.sigma = f64();
    else if (key == "bandwidth_s") {
        if (value == "K" || value == "full") c.bandwidth_s.reset();
        else c.bandwidth_s = u32();
    } else if (key == "strategy") {
        const auto s = parse_strategy(value);
        if (!s) throw ConfigError("strategy", "expected lr-pt, er or random, got '" + std::string(value) + "'");
        c.strategy = *s;
    } else if (key == "seed") c.seed = u64();
    else if (key == "fail_fraction") c.failure.fraction = f64();
    else if (key == "fail_at") c.failure.fail_at = u64();
    else if (key == "recover_at") c.failure.recover_at = u64();
    else if (key == "holonomic") c.holonomic = parse_bool(key, value);
    else if (key == "trials") c.trials = u32();
    else if (key == "threads") c.threads = u32();
    else if (key == "shuffle_order") c.shuffle_order = parse_bool(key, value);
    else if (key == "keep_series") c.keep_series = parse_bool(key, value);
    else throw ConfigError(std::string(key), "unknown configuration key");
}

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig c;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        apply_config_value(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_config_text(const ScenarioConfig& c) {
    std::ostringstream out;
    auto line = [&out](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
    line("n_robots", std::to_string(c.n_robots));
    line("width_grids", std::to_string(c.width_grids));
    line("height_grids", std::to_string(c.height_grids));
    line("grid_size", format_real(c.grid_size));
    line("rho", format_real(c.rho));
    line("mission_duration", std::to_string(c.mission_duration));
    line("warmup_t0", std::to_string(c.warmup_t0));
    line("v_max", format_real(c.v_max));
    line("phi_max", format_real(c.phi_max));
    line("comm_range", format_real(c.comm_range));
    line("sensor_range", format_real(c.sensor_range));
    line("search_range", format_real(c.search_range));
    line("eta", format_real(c.eta));
    line("p_max", format_real(c.p_max));
    line("sigma", format_real(c.sigma));
    line("bandwidth_s", c.bandwidth_s ? std::to_string(*c.bandwidth_s) : std::string("K"));
    line("strategy", std::string(to_string(c.strategy)));
    line("seed", std::to_string(c.seed));
    line("fail_fraction", format_real(c.failure.fraction));
    line("fail_at", std::to_string(c.failure.fail_at));
    line("recover_at", std::to_string(c.failure.recover_at));
    line("holonomic", c.holonomic ? "true" : "false");
    line("trials", std::to_string(c.trials));
    line("threads", std::to_string(c.threads));
    line("shuffle_order", c.shuffle_order ? "true" : "false");
    line("keep_series", c.keep_series ? "true" : "false");
    return out.str();
}

}  // namespace lrpt
