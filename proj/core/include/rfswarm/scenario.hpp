#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rfswarm/swarm.hpp"

namespace rfswarm {

struct GridSpec {
    enum class Kind { lattice, path };
    Kind kind = Kind::lattice;
    double width_m = 5.0;
    double height_m = 5.0;
    double spacing_m = 1.0;
    std::size_t path_nodes = 3;  // used when kind == path

    GridGraph build() const;
};

enum class Placement { uniform, fixed };

struct ScenarioConfig {
    std::string name = "scenario";
    GridSpec grid;
    std::size_t robot_count = 3;
    Placement placement = Placement::uniform;
    std::vector<NodeId> initial_nodes;  // used when placement == fixed
    std::vector<Vec2> targets;
    Step horizon = 300;
    SwarmModels models;
    /// Radius for matching reward entries to true targets in the metrics.
    double match_radius_m = 0.5;
    std::uint64_t seed = 1;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// One row per robot per step.
struct StepRow {
    Step step = 0;
    RobotId robot = 0;
    NodeId node = 0;
    std::size_t reward_size = 0;      // |M|
    std::size_t estimated_count = 0;  // ceil of summed intensity weights
    std::size_t detected_count = 0;   // true targets matched by M
};

struct RunRecord {
    std::string scenario;
    std::uint64_t seed = 0;
    Step horizon = 0;
    std::size_t true_count = 0;
    std::vector<NodeId> initial_nodes;
    std::vector<StepRow> rows;
    std::vector<EncounterEvent> encounters;
    RenewalLog renewals;
    std::vector<std::vector<ExtractedState>> final_extracted;
    std::vector<TrackedTargetSet> final_rewards;
    std::vector<GaussianMixture> final_intensities;
    std::optional<Step> convergence_step;
    /// Reward sets at the convergence step (empty when never converged).
    std::vector<TrackedTargetSet> rewards_at_convergence;
    std::vector<MeasurementLogRow> measurement_log;
};

struct RunOptions {
    bool record_measurements = false;
};

/// Robot start nodes for a run seed (uniform over nodes, independent per
/// robot, or the configured fixed nodes).
std::vector<NodeId> initial_placement(const ScenarioConfig& cfg, const GridGraph& grid,
                                      std::uint64_t run_seed);

/// Runs cfg.horizon steps with run seed cfg.seed.
RunRecord run_scenario(const ScenarioConfig& cfg, const RunOptions& options = {});

/// Compact per-run statistics kept by Monte Carlo batches.
struct RunDigest {
    std::uint64_t seed = 0;
    Step horizon = 0;
    std::size_t true_count = 0;
    std::size_t robot_count = 0;
    std::vector<Step> inter_arrivals;
    /// Mean detected count over robots, indexed by step 0..horizon.
    std::vector<double> mean_detected_by_step;
    std::optional<Step> convergence_step;
    std::optional<double> position_rmse_m;
};

RunDigest digest(const RunRecord& record, const std::vector<Vec2>& true_targets);

struct SummaryStats {
    std::size_t runs = 0;
    std::optional<double> mean_inter_arrival_steps;
    std::optional<double> mean_reward_pct;
    /// Single run: its convergence step. Batch: median over converged runs.
    std::optional<double> convergence_step;
    double converged_fraction = 0.0;
    /// Mean over runs with a defined RMSE.
    std::optional<double> position_rmse_m;
};

struct MonteCarloResult {
    std::vector<RunDigest> runs;
    SummaryStats summary;
};

/// Runs n_runs replicates with seeds seed_base + i; targets stay fixed,
/// robot placement is redrawn from each run seed. Results do not depend on
/// thread count or scheduling. threads == 0 picks the hardware concurrency.
MonteCarloResult monte_carlo(const ScenarioConfig& cfg, std::size_t n_runs,
                             std::uint64_t seed_base, std::size_t threads = 0);

SummaryStats summarize(std::span<const RunDigest> runs);

// --- metrics ---------------------------------------------------------------

/// Arithmetic mean of every completed inter-arrival time across robots and
/// runs; nullopt when no renewal was observed.
std::optional<double> mean_inter_arrival(std::span<const RunDigest> runs);
std::optional<double> mean_inter_arrival(std::span<const RunRecord> records);

/// 100 * (mean detected count at step floor(mean inter-arrival)) /
/// true_count. The evaluation step is clamped to [0, horizon].
std::optional<double> reward_percentage(std::span<const RunDigest> runs, std::size_t true_count);
double reward_percentage_at(std::span<const RunDigest> runs, std::size_t true_count, Step step);

/// First step at which every robot's reward set matches all true targets.
std::optional<Step> convergence_time(const RunRecord& record, std::size_t true_count);

/// Greedy nearest-neighbour 1-1 matching within `radius`; returns the
/// number of matched true targets.
std::size_t matched_target_count(const std::vector<Vec2>& estimates,
                                 const std::vector<Vec2>& truths, double radius);

struct RmseResult {
    double rmse_m = 0.0;
    std::size_t matched = 0;
    std::size_t unmatched_estimates = 0;
    std::size_t unmatched_truths = 0;
};

/// Greedy nearest-neighbour 1-1 matching (closest pair first), RMSE over
/// matched pairs.
RmseResult position_rmse(const std::vector<Vec2>& estimates, const std::vector<Vec2>& truths);

/// Per-robot RMSE of the reward sets at convergence (final sets if the run
/// never converged), pooled over robots. nullopt when no robot has an
/// estimate.
std::optional<RmseResult> position_rmse(const RunRecord& record,
                                        const std::vector<Vec2>& true_targets);

}  // namespace rfswarm
