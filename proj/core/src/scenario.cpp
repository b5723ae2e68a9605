#include "rfswarm/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "rfswarm/error.hpp"

namespace rfswarm {

GridGraph GridSpec::build() const {
    if (kind == Kind::path) return build_path(path_nodes, spacing_m);
    return build_grid(width_m, height_m, spacing_m);
}

void ScenarioConfig::validate() const {
    if (robot_count < 1) throw ConfigError("robots.count", "must be at least 1");
    if (horizon < 0) throw ConfigError("run.horizon", "must be nonnegative");
    if (!(match_radius_m >= 0.0)) throw ConfigError("metrics.match_radius_m", "must be >= 0");
    models.validate();
    const GridGraph g = grid.build();
    if (placement == Placement::fixed) {
        if (initial_nodes.size() != robot_count) {
            throw ConfigError("robots.initial_nodes", "needs one node per robot");
        }
        for (NodeId n : initial_nodes) {
            if (n >= g.node_count()) throw ConfigError("robots.initial_nodes", "node id out of range");
        }
    }
    const double tol = 1e-9;
    for (const auto& t : targets) {
        if (!t.allFinite() || t.x() < -tol || t.y() < -tol || t.x() > g.width_m() + tol ||
            t.y() > g.height_m() + tol) {
            throw ConfigError("targets.positions", "target outside the environment bounds");
        }
    }
}

std::vector<NodeId> initial_placement(const ScenarioConfig& cfg, const GridGraph& grid,
                                      std::uint64_t run_seed) {
    if (cfg.placement == Placement::fixed) return cfg.initial_nodes;
    std::vector<NodeId> nodes(cfg.robot_count);
    for (RobotId id = 0; id < cfg.robot_count; ++id) {
        Rng rng(derive_seed(run_seed, id, StreamPurpose::placement));
        nodes[id] = static_cast<NodeId>(rng.uniform_index(grid.node_count()));
    }
    return nodes;
}

RunRecord run_scenario(const ScenarioConfig& cfg, const RunOptions& options) {
    cfg.validate();
    GridGraph grid = cfg.grid.build();
    std::vector<Target> targets;
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) targets.push_back({i, cfg.targets[i]});

    RunRecord record;
    record.scenario = cfg.name;
    record.seed = cfg.seed;
    record.horizon = cfg.horizon;
    record.true_count = cfg.targets.size();
    record.initial_nodes = initial_placement(cfg, grid, cfg.seed);

    SwarmModels models = cfg.models;
    models.bind_clutter_to_sensor();
    World world = make_world(std::move(grid), std::move(targets), std::move(models),
                             record.initial_nodes, cfg.seed);
    world.record_measurements = options.record_measurements;

    const std::size_t n_robots = world.robots.size();
    std::vector<std::size_t> detected(n_robots, 0);
    record.rows.reserve(static_cast<std::size_t>(cfg.horizon) * n_robots);
    if (record.true_count == 0) record.convergence_step = 0;

    for (Step k = 1; k <= cfg.horizon; ++k) {
        const auto events = step_swarm(world);
        std::vector<bool> touched(n_robots, false);
        for (const auto& e : events) touched[e.first] = touched[e.second] = true;

        bool all_complete = true;
        for (const auto& robot : world.robots) {
            if (touched[robot.id] || !robot.extracted.empty()) {
                detected[robot.id] =
                    matched_target_count(robot.rewards.positions(), cfg.targets, cfg.match_radius_m);
            }
            record.rows.push_back({k, robot.id, robot.position.node, robot.rewards.size(),
                                   estimate_count(robot.intensity), detected[robot.id]});
            all_complete = all_complete && detected[robot.id] >= record.true_count;
        }
        if (!record.convergence_step && all_complete) {
            record.convergence_step = k;
            for (const auto& robot : world.robots) record.rewards_at_convergence.push_back(robot.rewards);
        }
    }

    record.encounters = std::move(world.encounters);
    record.renewals = std::move(world.renewals);
    for (auto& robot : world.robots) {
        record.final_extracted.push_back(robot.extracted);
        record.final_rewards.push_back(robot.rewards);
        record.final_intensities.push_back(robot.intensity);
    }
    record.measurement_log = std::move(world.measurement_log);
    return record;
}

RunDigest digest(const RunRecord& record, const std::vector<Vec2>& true_targets) {
    RunDigest d;
    d.seed = record.seed;
    d.horizon = record.horizon;
    d.true_count = record.true_count;
    d.robot_count = record.renewals.robot_count();
    d.inter_arrivals = record.renewals.all_inter_arrivals();
    d.mean_detected_by_step.assign(static_cast<std::size_t>(record.horizon) + 1, 0.0);
    for (const auto& row : record.rows) {
        d.mean_detected_by_step[static_cast<std::size_t>(row.step)] +=
            static_cast<double>(row.detected_count);
    }
    if (d.robot_count > 0) {
        for (auto& v : d.mean_detected_by_step) v /= static_cast<double>(d.robot_count);
    }
    d.convergence_step = record.convergence_step;
    if (auto rmse = position_rmse(record, true_targets)) d.position_rmse_m = rmse->rmse_m;
    return d;
}

MonteCarloResult monte_carlo(const ScenarioConfig& cfg, std::size_t n_runs,
                             std::uint64_t seed_base, std::size_t threads) {
    if (n_runs < 1) throw ConfigError("run.runs", "must be at least 1");
    cfg.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n_runs);

    MonteCarloResult result;
    result.runs.resize(n_runs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < n_runs; i = next++) {
            try {
                ScenarioConfig run_cfg = cfg;
                run_cfg.seed = seed_base + i;
                const RunRecord record = run_scenario(run_cfg);
                result.runs[i] = digest(record, cfg.targets);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    result.summary = summarize(result.runs);
    return result;
}

}  // namespace rfswarm
