#pragma once

#include <cstdint>
#include <vector>

#include "rfswarm/gaussian.hpp"
#include "rfswarm/gmphd.hpp"
#include "rfswarm/grid.hpp"
#include "rfswarm/markov_chain.hpp"
#include "rfswarm/random.hpp"
#include "rfswarm/renewal.hpp"
#include "rfswarm/sensing.hpp"
#include "rfswarm/tracked_set.hpp"

namespace rfswarm {

/// Everything a robot needs to sense and filter; shared by all robots.
struct SwarmModels {
    MotionModel motion;
    BirthModel birth;
    SpawnModel spawn;
    SensorModel sensor;
    ClutterModel clutter;
    PruneMergeConfig prune;
    ExtractOptions extract;
    double dedup_radius_m = 0.5;
    /// Drop target-originated measurements that noise pushed off the disc.
    bool discard_measurements_outside_fov = false;

    /// Sensor clutter intensity wired to lambda_C.
    void bind_clutter_to_sensor();
    void validate() const;
};

struct Robot {
    RobotId id = 0;
    ChainPosition position;
    GaussianMixture intensity;
    TrackedTargetSet rewards;
    std::vector<ExtractedState> extracted;
    std::uint64_t next_label = 0;
    Rng motion_rng;
    Rng sensing_rng;
};

struct MeasurementLogRow {
    Step step = 0;
    RobotId robot = 0;
    Vec2 point = Vec2::Zero();
    bool is_clutter = false;
};

struct World {
    GridGraph grid;
    TransitionMatrix matrix;
    std::vector<Target> targets;
    SwarmModels models;
    std::vector<Robot> robots;
    Step step = 0;
    RenewalLog renewals;
    std::vector<EncounterEvent> encounters;

    bool record_measurements = false;
    std::vector<MeasurementLogRow> measurement_log;
};

/// Places robots on `initial_nodes` with empty intensities and reward sets
/// and seeds their motion/sensing substreams from `run_seed`.
World make_world(GridGraph grid, std::vector<Target> targets, SwarmModels models,
                 const std::vector<NodeId>& initial_nodes, std::uint64_t run_seed);

/// One event per unordered pair of robots sharing a node, ordered by
/// (first, second).
std::vector<EncounterEvent> detect_encounters(const std::vector<Robot>& robots, Step step);

/// Advances the world one step: every robot moves, senses, and runs
/// predict / update / prune-merge / extract, folding extracted states into
/// its reward set; then co-located robots exchange reward sets and renew.
/// Returns the encounters of this step (also appended to world.encounters).
std::vector<EncounterEvent> step_swarm(World& world);

/// Filter stage of one robot at its current position.
void filter_robot(Robot& robot, const std::vector<Vec2>& measurements, const SwarmModels& models,
                  const Vec2& robot_pos);

}  // namespace rfswarm
