// rfswarm: run swarm scenarios, Monte Carlo batches, and Markov-chain oracles.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rfswarm/config.hpp"
#include "rfswarm/io.hpp"
#include "rfswarm/markov_chain.hpp"
#include "rfswarm/scenario.hpp"

namespace fs = std::filesystem;
using namespace rfswarm;

namespace {

enum Exit : int {
    ok = 0,
    usage = 1,
    config_missing = 2,
    config_parse = 3,
    config_invalid = 4,
    runtime = 5,
    io = 6,
};

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::size_t runs = 0;
    std::size_t threads = 0;
    std::string out = ".";
    bool emit_intensity = false;
    bool log_measurements = false;
    bool dump_chain = false;
    bool quiet = false;
    std::optional<std::size_t> robots;
    std::vector<NodeId> start;
};

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{:.4g}", *v) : "n/a"; }

void prepare_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

void dump_chain(const fs::path& dir, const ScenarioConfig& cfg) {
    const GridGraph grid = cfg.grid.build();
    write_text(dir / (cfg.name + "_grid.csv"), grid_csv(grid));
    write_text(dir / (cfg.name + "_matrix.csv"), matrix_csv(build_transition_matrix(grid)));
}

int cmd_run(const Options& opt) {
    ConfigFile file = parse_config(opt.config);
    ScenarioConfig& cfg = file.scenario;
    if (opt.seed) cfg.seed = *opt.seed;

    const fs::path dir(opt.out);
    prepare_out_dir(dir);
    if (opt.dump_chain) dump_chain(dir, cfg);

    const RunRecord record = run_scenario(cfg, {.record_measurements = opt.log_measurements});
    const std::string stem = run_stem(cfg.name, cfg.seed);
    write_text(dir / (stem + ".csv"), step_csv(record));
    write_text(dir / (stem + "_encounters.csv"), encounters_csv(record));
    write_text(dir / (stem + "_rewards.csv"), rewards_csv(record));
    if (opt.log_measurements) write_text(dir / (stem + "_measurements.csv"), measurements_csv(record));
    if (opt.emit_intensity) {
        const SurfaceLattice lattice =
            surface_lattice(cfg.grid.build(), file.intensity_resolution_m, file.intensity_margin_m);
        for (std::size_t r = 0; r < record.final_intensities.size(); ++r) {
            write_text(dir / fmt::format("{}_intensity_r{}.csv", stem, r),
                       intensity_csv(record.final_intensities[r], lattice));
        }
    }
    const RunDigest d = digest(record, cfg.targets);
    const SummaryStats summary = summarize(std::span<const RunDigest>(&d, 1));
    write_text(dir / (stem + "_summary.json"), summary_json(summary));

    if (!opt.quiet) {
        std::cout << fmt::format("{}: seed {} horizon {} encounters {} inter-arrival {} reward% {} "
                                 "convergence {} rmse {}\n",
                                 cfg.name, cfg.seed, cfg.horizon, record.encounters.size(),
                                 fmt_opt(summary.mean_inter_arrival_steps), fmt_opt(summary.mean_reward_pct),
                                 fmt_opt(summary.convergence_step), fmt_opt(summary.position_rmse_m));
    }
    return ok;
}

int cmd_montecarlo(const Options& opt) {
    ConfigFile file = parse_config(opt.config);
    ScenarioConfig& cfg = file.scenario;
    const std::uint64_t seed_base = opt.seed.value_or(cfg.seed);
    const std::size_t runs = opt.runs > 0 ? opt.runs : file.runs;

    const fs::path dir(opt.out);
    prepare_out_dir(dir);
    if (opt.dump_chain) dump_chain(dir, cfg);

    const MonteCarloResult result = monte_carlo(cfg, runs, seed_base, opt.threads);
    const std::string stem = run_stem(cfg.name, seed_base);
    write_text(dir / (stem + "_runs.csv"), runs_csv(result.runs));
    write_text(dir / (stem + "_summary.json"), summary_json(result.summary));

    if (!opt.quiet) {
        const SummaryStats& s = result.summary;
        std::cout << fmt::format("{}: {} runs from seed {} inter-arrival {} reward% {} convergence {} "
                                 "converged {:.2f} rmse {}\n",
                                 cfg.name, s.runs, seed_base, fmt_opt(s.mean_inter_arrival_steps),
                                 fmt_opt(s.mean_reward_pct), fmt_opt(s.convergence_step),
                                 s.converged_fraction, fmt_opt(s.position_rmse_m));
    }
    return ok;
}

int cmd_oracle(const Options& opt) {
    const ConfigFile file = parse_config(opt.config);
    const ScenarioConfig& cfg = file.scenario;
    const std::size_t robots = opt.robots.value_or(cfg.robot_count);

    const GridGraph grid = cfg.grid.build();
    const TransitionMatrix matrix = build_transition_matrix(grid);
    const Eigen::VectorXd pi = stationary_distribution(matrix);
    const CompositeChain chain = build_composite(matrix, robots);

    nlohmann::ordered_json j;
    j["nodes"] = grid.node_count();
    j["stationary"] = std::vector<double>(pi.data(), pi.data() + pi.size());
    j["robots"] = robots;
    j["composite_states"] = chain.state_count();
    j["mean_inter_arrival_steps"] = mean_inter_arrival_oracle(chain);
    if (!opt.start.empty()) {
        if (opt.start.size() != robots) throw ConfigError("--start", "needs one node per robot");
        for (NodeId n : opt.start) {
            if (n >= grid.node_count()) throw ConfigError("--start", "node out of range");
        }
        j["start"] = opt.start;
        j["expected_meeting_time"] = expected_meeting_time(chain, chain.encode(opt.start));
    }
    std::cout << j.dump(2) << "\n";
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-robot GM-PHD target search on a lattice"};
    app.require_subcommand(1);
    Options opt;

    auto add_outputs = [&](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "Run seed (Monte Carlo: first seed)");
        sub->add_option("--out", opt.out, "Output directory");
        sub->add_flag("--dump-chain", opt.dump_chain, "Also write grid and transition-matrix CSVs");
    };

    CLI::App* run = app.add_subcommand("run", "Simulate one run and write its logs");
    run->add_option("--config", opt.config, "Scenario config file (INI)")->required();
    add_outputs(run);
    run->add_flag("--emit-intensity", opt.emit_intensity, "Write each robot's final intensity surface");
    run->add_flag("--log-measurements", opt.log_measurements, "Write the per-step measurement log");
    run->add_flag("--quiet,-q", opt.quiet, "Suppress the summary line");

    CLI::App* mc = app.add_subcommand("montecarlo", "Run seeded replicates and summarize");
    mc->add_option("--config", opt.config, "Scenario config file (INI)")->required();
    add_outputs(mc);
    mc->add_option("--runs", opt.runs, "Number of runs (default: run.runs from the config)");
    mc->add_option("--threads", opt.threads, "Worker threads (0 = hardware concurrency)");
    mc->add_flag("--quiet,-q", opt.quiet, "Suppress the summary line");

    CLI::App* oracle = app.add_subcommand("oracle", "Print chain oracles as JSON");
    oracle->add_option("--config", opt.config, "Scenario config file (INI)")->required();
    oracle->add_option("--robots", opt.robots, "Robot count (default: robots.count)");
    oracle->add_option("--start", opt.start, "Start node per robot for the meeting-time query")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (run->parsed()) return cmd_run(opt);
        if (mc->parsed()) return cmd_montecarlo(opt);
        return cmd_oracle(opt);
    } catch (const ConfigFileMissing& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config_missing;
    } catch (const ConfigParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config_parse;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config_invalid;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return runtime;
    }
}
