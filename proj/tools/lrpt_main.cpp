// Command-line front end: run, batch, sweep and verify.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "lrpt/config.hpp"
#include "lrpt/errors.hpp"
#include "lrpt/export.hpp"
#include "lrpt/format.hpp"
#include "lrpt/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitMismatch = 3;

struct Overrides {
    std::string config_path;
    std::optional<std::string> strategy;
    std::optional<std::uint32_t> n_robots;
    std::optional<std::string> bandwidth_s;
    std::optional<double> fail_fraction;
    std::optional<std::uint64_t> fail_at;
    std::optional<std::uint64_t> recover_at;
    std::optional<std::uint32_t> threads;

    void attach(CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("--config", config_path, "Scenario file (key = value lines)");
        if (config_required) opt->required();
        cmd->add_option("--strategy", strategy, "lr-pt | er | random");
        cmd->add_option("--n-robots", n_robots, "Swarm size including the base station");
        cmd->add_option("--bandwidth-s", bandwidth_s, "Knowledge entries per message, or K");
        cmd->add_option("--fail-fraction", fail_fraction, "Fraction of patrollers that fail");
        cmd->add_option("--fail-at", fail_at, "Failure step");
        cmd->add_option("--recover-at", recover_at, "Recovery step");
        cmd->add_option("--threads", threads, "Worker threads");
    }

    lrpt::ScenarioConfig load() const {
        lrpt::ScenarioConfig c = config_path.empty() ? lrpt::ScenarioConfig{} : lrpt::load_config(config_path);
        if (strategy) lrpt::apply_config_value(c, "strategy", *strategy);
        if (n_robots) c.n_robots = *n_robots;
        if (bandwidth_s) lrpt::apply_config_value(c, "bandwidth_s", *bandwidth_s);
        if (fail_fraction) c.failure.fraction = *fail_fraction;
        if (fail_at) c.failure.fail_at = *fail_at;
        if (recover_at) c.failure.recover_at = *recover_at;
        if (threads) c.threads = *threads;
        lrpt::validate(c);
        return c;
    }
};

bool use_color() {
    return std::getenv("NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO);
}

std::string paint(const std::string& text, const char* code) {
    if (!use_color()) return text;
    return std::string("\033[") + code + "m" + text + "\033[0m";
}

void print_metrics(const lrpt::TrialResult& r) {
    std::cout << "seed " << r.seed << "  I_G " << lrpt::format_real(r.metrics.graph_idleness) << "  I_W "
              << lrpt::format_real(r.metrics.worst_idleness) << "  D_MSA " << lrpt::format_real(r.metrics.mean_sa_delay)
              << "  D_WSA " << lrpt::format_real(r.metrics.worst_sa_delay) << "  (normalized I_G "
              << lrpt::format_real(r.normalized.graph_idleness) << ")\n";
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) {
            try {
                out.push_back(lrpt::parse_real(item));
            } catch (const std::exception&) {
                throw lrpt::ConfigError(flag, "bad number '" + item + "'");
            }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-robot patrolling simulator (LR-PT)"};
    app.require_subcommand(1);

    Overrides run_o, batch_o, sweep_o, verify_o;
    std::uint64_t seed = 1;
    std::string run_out = "out";
    auto* run = app.add_subcommand("run", "Run a single trial and write its artifacts");
    run_o.attach(run, false);
    run->add_option("--seed", seed, "Trial seed");
    run->add_option("--out", run_out, "Output directory");

    std::optional<std::uint32_t> trials;
    std::uint64_t base_seed = 1;
    std::string batch_out = "out";
    auto* batch = app.add_subcommand("batch", "Run independent trials with consecutive seeds");
    batch_o.attach(batch, false);
    batch->add_option("--trials", trials, "Number of trials (default: config 'trials')");
    batch->add_option("--base-seed", base_seed, "Seed of the first trial");
    batch->add_option("--out", batch_out, "Output directory");

    std::string eta_list, pm_list, sigma_list;
    std::optional<std::uint32_t> sweep_trials;
    std::uint64_t sweep_seed = 1;
    std::string sweep_out = "sweep.csv";
    auto* sweep = app.add_subcommand("sweep", "Exhaustive eta x p_max x sigma sweep");
    sweep_o.attach(sweep, false);
    sweep->add_option("--eta-list", eta_list, "Comma-separated eta values")->required();
    sweep->add_option("--pm-list", pm_list, "Comma-separated p_max values")->required();
    sweep->add_option("--sigma-list", sigma_list, "Comma-separated sigma values")->required();
    sweep->add_option("--trials", sweep_trials, "Trials per grid point (default: config 'trials')");
    sweep->add_option("--base-seed", sweep_seed, "Seed of the first trial at every point");
    sweep->add_option("--out", sweep_out, "Output CSV path");

    std::string events_path;
    auto* verify = app.add_subcommand("verify", "Replay an events.log and check the emitted metrics");
    verify->add_option("events", events_path, "Path to events.log")->required();
    verify_o.attach(verify, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    try {
        if (*run) {
            const auto config = run_o.load();
            const auto result = lrpt::run_trial(config, seed);
            lrpt::write_run_artifacts(result, run_out);
            print_metrics(result);
            std::cout << "wrote " << run_out << '\n';
        } else if (*batch) {
            const auto config = batch_o.load();
            const auto result = lrpt::run_batch(config, trials.value_or(config.trials), base_seed);
            lrpt::write_batch_artifacts(result, batch_out);
            for (const auto& t : result.trials) print_metrics(t);
            std::cout << "mean I_G " << lrpt::format_real(result.summary.graph_idleness.mean) << "  mean I_W "
                      << lrpt::format_real(result.summary.worst_idleness.mean) << "\nwrote " << batch_out << '\n';
        } else if (*sweep) {
            const auto config = sweep_o.load();
            const auto rows = lrpt::parameter_sweep(config, parse_list(eta_list, "eta-list"),
                                                    parse_list(pm_list, "pm-list"), parse_list(sigma_list, "sigma-list"),
                                                    sweep_trials.value_or(config.trials), sweep_seed);
            lrpt::write_sweep_table(rows, sweep_out);
            std::cout << rows.size() << " grid points written to " << sweep_out << '\n';
        } else if (*verify) {
            const auto config = verify_o.load();
            const auto report = lrpt::verify_run(events_path, config);
            if (!report.ok) {
                for (const auto& m : report.mismatches) std::cout << paint("MISMATCH", "31") << ' ' << m << '\n';
                return kExitMismatch;
            }
            std::cout << paint("OK", "32") << " replay of " << events_path << " matches emitted metrics\n";
        }
    } catch (const lrpt::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const lrpt::MetricsError& e) {
        std::cerr << "trial failed: " << e.what() << '\n';
        return kExitConfig;
    } catch (const lrpt::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
