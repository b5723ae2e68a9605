#include <gtest/gtest.h>

#include "rfswarm/error.hpp"
#include "rfswarm/io.hpp"
#include "rfswarm/scenario.hpp"

using namespace rfswarm;

namespace {

ScenarioConfig small_scenario() {
    ScenarioConfig cfg;
    cfg.name = "small";
    cfg.grid.width_m = 3;
    cfg.grid.height_m = 3;
    cfg.robot_count = 3;
    cfg.targets = {Vec2(1.1, 0.9), Vec2(2.0, 2.2)};
    cfg.horizon = 200;
    cfg.seed = 5;
    return cfg;
}

RunRecord record_with_rows(std::size_t robots, Step horizon, Step complete_at, std::size_t n) {
    RunRecord r;
    r.horizon = horizon;
    r.true_count = n;
    for (Step k = 1; k <= horizon; ++k) {
        for (RobotId i = 0; i < robots; ++i) {
            const bool done = complete_at > 0 && k >= complete_at - static_cast<Step>(i == 0 ? 5 : 0);
            r.rows.push_back({k, i, 0, done ? n : n - 1, 0, done ? n : n - 1});
        }
    }
    return r;
}

}  // namespace

TEST(MeanInterArrival, AveragesAllIntervals) {
    RunDigest d;
    d.inter_arrivals = {7, 5};
    EXPECT_DOUBLE_EQ(*mean_inter_arrival(std::span<const RunDigest>(&d, 1)), 6.0);
    RunDigest none;
    EXPECT_FALSE(mean_inter_arrival(std::span<const RunDigest>(&none, 1)).has_value());
}

TEST(MeanInterArrival, SingleNodeGridIsOne) {
    ScenarioConfig cfg;
    cfg.grid.kind = GridSpec::Kind::path;
    cfg.grid.path_nodes = 1;
    cfg.robot_count = 2;
    cfg.horizon = 100;
    const RunRecord r = run_scenario(cfg);
    const auto m = mean_inter_arrival(std::span<const RunRecord>(&r, 1));
    ASSERT_TRUE(m.has_value());
    EXPECT_DOUBLE_EQ(*m, 1.0);
    EXPECT_EQ(r.encounters.size(), 100u);
}

TEST(RewardPercentage, Examples) {
    RunDigest d;
    d.inter_arrivals = {4, 4};
    d.true_count = 3;
    d.mean_detected_by_step = {0, 0, 0, 1, 3, 3};
    EXPECT_DOUBLE_EQ(*reward_percentage(std::span<const RunDigest>(&d, 1), 3), 100.0);
    d.mean_detected_by_step = {0, 0, 0, 0, 0, 0};
    EXPECT_DOUBLE_EQ(*reward_percentage(std::span<const RunDigest>(&d, 1), 3), 0.0);
    d.mean_detected_by_step = {0, 0, 0, 0, 1.5, 3};
    EXPECT_DOUBLE_EQ(*reward_percentage(std::span<const RunDigest>(&d, 1), 3), 50.0);
    // Evaluation step past the horizon is clamped to the last step.
    d.inter_arrivals = {40};
    EXPECT_DOUBLE_EQ(*reward_percentage(std::span<const RunDigest>(&d, 1), 3), 100.0);
}

TEST(RewardPercentage, FloorOfMeanAcrossRuns) {
    std::vector<RunDigest> runs(2);
    runs[0].inter_arrivals = {2, 3};
    runs[1].inter_arrivals = {3};
    runs[0].mean_detected_by_step = {0, 0, 1, 2};
    runs[1].mean_detected_by_step = {0, 0, 2, 2};
    // mean tau = 8/3, floor 2: mean detected 1.5 of 2
    EXPECT_DOUBLE_EQ(*reward_percentage(runs, 2), 75.0);
}

TEST(ConvergenceTime, Examples) {
    EXPECT_EQ(convergence_time(record_with_rows(3, 300, 150, 3), 3), std::optional<Step>(150));
    EXPECT_FALSE(convergence_time(record_with_rows(3, 300, 0, 3), 3).has_value());
    EXPECT_EQ(convergence_time(RunRecord{}, 0), std::optional<Step>(0));
}

TEST(PositionRmse, Examples) {
    const std::vector<Vec2> truth{Vec2(1, 1), Vec2(3, 2)};
    EXPECT_DOUBLE_EQ(position_rmse(truth, truth).rmse_m, 0.0);
    const auto r = position_rmse({Vec2(1.3, 1.4)}, {Vec2(1, 1)});
    EXPECT_NEAR(r.rmse_m, 0.5, 1e-15);
    EXPECT_EQ(r.matched, 1u);
    const auto partial = position_rmse({Vec2(1, 1), Vec2(9, 9), Vec2(8, 8)}, truth);
    EXPECT_EQ(partial.matched, 2u);
    EXPECT_EQ(partial.unmatched_estimates, 1u);
    EXPECT_EQ(matched_target_count({Vec2(1.2, 1), Vec2(9, 9)}, truth, 0.5), 1u);
}

TEST(RunScenario, ZeroHorizonGivesEmptyLogs) {
    ScenarioConfig cfg = small_scenario();
    cfg.horizon = 0;
    const RunRecord r = run_scenario(cfg);
    EXPECT_TRUE(r.rows.empty());
    EXPECT_TRUE(r.encounters.empty());
    EXPECT_EQ(r.initial_nodes.size(), 3u);
}

TEST(RunScenario, SameSeedSameRecord) {
    const ScenarioConfig cfg = small_scenario();
    const RunRecord a = run_scenario(cfg, {.record_measurements = true});
    const RunRecord b = run_scenario(cfg, {.record_measurements = true});
    EXPECT_EQ(step_csv(a), step_csv(b));
    EXPECT_EQ(encounters_csv(a), encounters_csv(b));
    EXPECT_EQ(rewards_csv(a), rewards_csv(b));
    EXPECT_EQ(measurements_csv(a), measurements_csv(b));
    EXPECT_EQ(a.rows.size(), 200u * 3u);
    ScenarioConfig other = cfg;
    other.seed = 6;
    EXPECT_NE(step_csv(run_scenario(other)), step_csv(a));
}

TEST(RunScenario, RecordIsConsistent) {
    const ScenarioConfig cfg = small_scenario();
    const RunRecord r = run_scenario(cfg);
    EXPECT_TRUE(r.renewals.satisfies_counting_identity(r.horizon));
    EXPECT_EQ(convergence_time(r, r.true_count), r.convergence_step);
    for (const StepRow& row : r.rows) {
        EXPECT_LE(row.detected_count, r.true_count);
        EXPECT_LE(row.detected_count, row.reward_size);
    }
}

TEST(RunScenario, RejectsTargetsOutsideBounds) {
    ScenarioConfig cfg = small_scenario();
    cfg.targets.push_back(Vec2(4, 1));
    EXPECT_THROW(run_scenario(cfg), ConfigError);
    cfg = small_scenario();
    cfg.robot_count = 0;
    EXPECT_THROW(run_scenario(cfg), ConfigError);
    cfg = small_scenario();
    cfg.placement = Placement::fixed;
    cfg.initial_nodes = {0, 1};
    EXPECT_THROW(run_scenario(cfg), ConfigError);
}

TEST(RunScenario, FixedPlacementIsHonoured) {
    ScenarioConfig cfg = small_scenario();
    cfg.placement = Placement::fixed;
    cfg.initial_nodes = {0, 5, 15};
    EXPECT_EQ(run_scenario(cfg).initial_nodes, cfg.initial_nodes);
}

TEST(MonteCarlo, SingleRunMatchesThatRun) {
    const ScenarioConfig cfg = small_scenario();
    const MonteCarloResult mc = monte_carlo(cfg, 1, cfg.seed, 1);
    const RunRecord r = run_scenario(cfg);
    const RunDigest d = digest(r, cfg.targets);
    const SummaryStats s = summarize(std::span<const RunDigest>(&d, 1));
    EXPECT_EQ(summary_json(mc.summary), summary_json(s));
    ASSERT_TRUE(s.convergence_step.has_value() == r.convergence_step.has_value());
}

TEST(MonteCarlo, IndependentOfThreadCount) {
    const ScenarioConfig cfg = small_scenario();
    const MonteCarloResult one = monte_carlo(cfg, 12, 100, 1);
    const MonteCarloResult many = monte_carlo(cfg, 12, 100, 4);
    EXPECT_EQ(runs_csv(one.runs), runs_csv(many.runs));
    EXPECT_EQ(summary_json(one.summary), summary_json(many.summary));
    for (std::size_t i = 0; i < one.runs.size(); ++i) EXPECT_EQ(one.runs[i].seed, 100 + i);
}

TEST(MonteCarlo, RewardPercentageWithinBounds) {
    const MonteCarloResult mc = monte_carlo(small_scenario(), 10, 1, 1);
    ASSERT_TRUE(mc.summary.mean_reward_pct.has_value());
    EXPECT_GE(*mc.summary.mean_reward_pct, 0.0);
    EXPECT_LE(*mc.summary.mean_reward_pct, 100.0);
}
