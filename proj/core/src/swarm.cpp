#include "rfswarm/swarm.hpp"

#include <algorithm>
#include <map>

#include "rfswarm/error.hpp"

namespace rfswarm {

void SwarmModels::bind_clutter_to_sensor() {
    const double lambda = clutter.intensity_per_m2;
    sensor.clutter_intensity = [lambda](const Vec2&) { return lambda; };
}

void SwarmModels::validate() const {
    motion.validate();
    birth.validate();
    spawn.validate();
    sensor.validate();
    clutter.validate();
    prune.validate();
    if (!(extract.threshold >= 0.0)) throw ConfigError("filter.extract_threshold", "must be >= 0");
    if (!(dedup_radius_m >= 0.0)) throw ConfigError("exchange.dedup_radius_m", "must be >= 0");
}

World make_world(GridGraph grid, std::vector<Target> targets, SwarmModels models,
                 const std::vector<NodeId>& initial_nodes, std::uint64_t run_seed) {
    World world{.grid = std::move(grid),
                .matrix = {},
                .targets = std::move(targets),
                .models = std::move(models),
                .robots = {},
                .step = 0,
                .renewals = RenewalLog(initial_nodes.size()),
                .encounters = {},
                .record_measurements = false,
                .measurement_log = {}};
    world.matrix = build_transition_matrix(world.grid);
    world.robots.reserve(initial_nodes.size());
    for (RobotId id = 0; id < initial_nodes.size(); ++id) {
        if (initial_nodes[id] >= world.grid.node_count()) {
            throw ConfigError("robots.initial_nodes", "node id out of range");
        }
        Robot robot;
        robot.id = id;
        robot.position = {initial_nodes[id], 0};
        robot.motion_rng = Rng(derive_seed(run_seed, id, StreamPurpose::motion));
        robot.sensing_rng = Rng(derive_seed(run_seed, id, StreamPurpose::sensing));
        world.robots.push_back(std::move(robot));
    }
    return world;
}

std::vector<EncounterEvent> detect_encounters(const std::vector<Robot>& robots, Step step) {
    std::vector<EncounterEvent> out;
    for (std::size_t i = 0; i < robots.size(); ++i) {
        for (std::size_t j = i + 1; j < robots.size(); ++j) {
            if (robots[i].position.node == robots[j].position.node) {
                out.push_back({step, robots[i].id, robots[j].id, robots[i].position.node});
            }
        }
    }
    return out;
}

void filter_robot(Robot& robot, const std::vector<Vec2>& measurements, const SwarmModels& models,
                  const Vec2& robot_pos) {
    GaussianMixture predicted =
        predict(robot.intensity, models.motion, models.birth, models.spawn, robot_pos);
    GaussianMixture posterior = update(predicted, measurements, models.sensor, robot_pos);
    robot.intensity = prune_merge(posterior, models.prune);
    robot.extracted = extract_states(robot.intensity, models.extract);
    if (robot.extracted.empty()) return;

    std::vector<TrackedTarget> fresh;
    fresh.reserve(robot.extracted.size());
    for (const auto& state : robot.extracted) {
        fresh.push_back({{robot.id, robot.next_label++}, state.mean, state.weight});
    }
    robot.rewards = merge_rewards(
        robot.rewards, TrackedTargetSet::from_entries(std::move(fresh), models.dedup_radius_m),
        models.dedup_radius_m);
}

std::vector<EncounterEvent> step_swarm(World& world) {
    const Step k = world.step + 1;
    const auto& models = world.models;

    for (auto& robot : world.robots) {
        robot.position = step(robot.position, world.matrix, robot.motion_rng);
        const Vec2& here = world.grid.position(robot.position.node);

        MeasurementSet scan = generate_measurements(here, world.targets, models.sensor,
                                                    models.clutter, robot.sensing_rng, robot.id, k);
        if (world.record_measurements) {
            for (std::size_t i = 0; i < scan.size(); ++i) {
                world.measurement_log.push_back({k, robot.id, scan.points[i], scan.is_clutter[i]});
            }
        }
        std::vector<Vec2> points;
        points.reserve(scan.size());
        for (std::size_t i = 0; i < scan.size(); ++i) {
            if (models.discard_measurements_outside_fov &&
                (scan.points[i] - here).norm() > models.sensor.fov_radius_m) {
                continue;
            }
            points.push_back(scan.points[i]);
        }
        filter_robot(robot, points, models, here);
    }

    auto events = detect_encounters(world.robots, k);

    // All robots on one node end with the fold of their reward sets.
    std::map<NodeId, std::vector<RobotId>> groups;
    for (const auto& e : events) {
        auto& members = groups[e.node];
        if (members.empty()) members.push_back(e.first);
        if (std::find(members.begin(), members.end(), e.second) == members.end()) {
            members.push_back(e.second);
        }
        world.renewals.record(e);
    }
    for (auto& [node, members] : groups) {
        std::sort(members.begin(), members.end());
        TrackedTargetSet combined = world.robots[members.front()].rewards;
        for (std::size_t m = 1; m < members.size(); ++m) {
            combined = merge_rewards(combined, world.robots[members[m]].rewards,
                                     models.dedup_radius_m);
        }
        for (RobotId id : members) world.robots[id].rewards = combined;
    }

    world.encounters.insert(world.encounters.end(), events.begin(), events.end());
    world.step = k;
    return events;
}

}  // namespace rfswarm
