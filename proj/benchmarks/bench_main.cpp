#include <benchmark/benchmark.h>

#include "rfswarm/gmphd.hpp"
#include "rfswarm/scenario.hpp"
#include "rfswarm/swarm.hpp"
#include "rfswarm/tracked_set.hpp"

using namespace rfswarm;

namespace {

GaussianMixture busy_mixture(std::size_t n) {
    Rng rng(1);
    GaussianMixture m;
    for (std::size_t i = 0; i < n; ++i) {
        m.components.push_back({0.05 + rng.uniform(), Vec2(rng.uniform() * 2, rng.uniform() * 2),
                                (0.2 + rng.uniform()) * Mat2::Identity()});
    }
    return m;
}

void BM_FilterStep(benchmark::State& state) {
    SwarmModels models;
    models.bind_clutter_to_sensor();
    const GaussianMixture prior = busy_mixture(static_cast<std::size_t>(state.range(0)));
    const std::vector<Vec2> zs{Vec2(1.0, 1.1), Vec2(0.8, 0.9), Vec2(1.3, 1.0)};
    const Vec2 robot(1, 1);
    for (auto _ : state) {
        GaussianMixture m = predict(prior, models.motion, models.birth, models.spawn, robot);
        m = update(m, zs, models.sensor, robot);
        m = prune_merge(m, models.prune);
        benchmark::DoNotOptimize(extract_states(m, models.extract));
    }
}
BENCHMARK(BM_FilterStep)->Arg(4)->Arg(20)->Arg(100);

void BM_MergeRewards(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    auto make = [&](RobotId origin) {
        std::vector<TrackedTarget> entries;
        for (std::size_t i = 0; i < n; ++i) {
            entries.push_back({{origin, i}, Vec2(rng.uniform() * 30, rng.uniform() * 30), 0.5 + rng.uniform()});
        }
        return TrackedTargetSet::from_entries(std::move(entries), 0.5);
    };
    const TrackedTargetSet a = make(0);
    const TrackedTargetSet b = make(1);
    for (auto _ : state) benchmark::DoNotOptimize(merge_rewards(a, b, 0.5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MergeRewards)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_StepSwarm(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.grid.width_m = 15;
    cfg.grid.height_m = 15;
    cfg.robot_count = static_cast<std::size_t>(state.range(0));
    cfg.targets = {Vec2(3.1, 4.2), Vec2(10.2, 7.9), Vec2(6.0, 12.1)};
    SwarmModels models = cfg.models;
    models.bind_clutter_to_sensor();
    const GridGraph grid = cfg.grid.build();
    std::vector<Target> targets;
    for (std::size_t i = 0; i < cfg.targets.size(); ++i) targets.push_back({i, cfg.targets[i]});
    World world = make_world(grid, targets, models, initial_placement(cfg, grid, 1), 1);
    for (auto _ : state) benchmark::DoNotOptimize(step_swarm(world));
}
BENCHMARK(BM_StepSwarm)->Arg(3)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
