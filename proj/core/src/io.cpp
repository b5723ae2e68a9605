#include "rfswarm/io.hpp"

#include <cmath>
#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace rfswarm {

namespace {

void append_real(std::string& out, double v) { fmt::format_to(std::back_inserter(out), "{:.10g}", v); }

}  // namespace

SurfaceLattice surface_lattice(const GridGraph& grid, double resolution_m, double margin_m) {
    if (!(resolution_m > 0.0)) throw ConfigError("output.intensity_resolution_m", "must be positive");
    double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
    for (NodeId v = 0; v < grid.node_count(); ++v) {
        const Vec2& p = grid.position(v);
        x_min = std::min(x_min, p.x());
        x_max = std::max(x_max, p.x());
        y_min = std::min(y_min, p.y());
        y_max = std::max(y_max, p.y());
    }
    return {x_min - margin_m, x_max + margin_m, y_min - margin_m, y_max + margin_m, resolution_m};
}

std::string step_csv(const RunRecord& record) {
    std::string out = "step,robot,node,reward_size,estimated_count,detected_count\n";
    auto it = std::back_inserter(out);
    for (const StepRow& r : record.rows) {
        fmt::format_to(it, "{},{},{},{},{},{}\n", r.step, r.robot, r.node, r.reward_size,
                       r.estimated_count, r.detected_count);
    }
    return out;
}

std::string encounters_csv(const RunRecord& record) {
    std::string out = "step,robot_a,robot_b,node\n";
    auto it = std::back_inserter(out);
    for (const EncounterEvent& e : record.encounters) {
        fmt::format_to(it, "{},{},{},{}\n", e.step, e.first, e.second, e.node);
    }
    return out;
}

std::string rewards_csv(const RunRecord& record) {
    std::string out = "robot,origin,sequence,x,y,weight\n";
    auto it = std::back_inserter(out);
    for (std::size_t robot = 0; robot < record.final_rewards.size(); ++robot) {
        for (const TrackedTarget& t : record.final_rewards[robot].entries()) {
            fmt::format_to(it, "{},{},{},", robot, t.label.origin, t.label.sequence);
            append_real(out, t.position.x());
            out += ',';
            append_real(out, t.position.y());
            out += ',';
            append_real(out, t.weight);
            out += '\n';
        }
    }
    return out;
}

std::string measurements_csv(const RunRecord& record) {
    std::string out = "step,robot,x,y,is_clutter\n";
    for (const MeasurementLogRow& m : record.measurement_log) {
        fmt::format_to(std::back_inserter(out), "{},{},", m.step, m.robot);
        append_real(out, m.point.x());
        out += ',';
        append_real(out, m.point.y());
        out += m.is_clutter ? ",1\n" : ",0\n";
    }
    return out;
}

std::string intensity_csv(const GaussianMixture& mixture, const SurfaceLattice& lattice) {
    std::string out = "x,y,intensity\n";
    const auto nx = static_cast<long>(std::floor((lattice.x_max - lattice.x_min) / lattice.resolution_m + 1e-9));
    const auto ny = static_cast<long>(std::floor((lattice.y_max - lattice.y_min) / lattice.resolution_m + 1e-9));
    for (long iy = 0; iy <= ny; ++iy) {
        const double y = lattice.y_min + static_cast<double>(iy) * lattice.resolution_m;
        for (long ix = 0; ix <= nx; ++ix) {
            const double x = lattice.x_min + static_cast<double>(ix) * lattice.resolution_m;
            append_real(out, x);
            out += ',';
            append_real(out, y);
            out += ',';
            append_real(out, intensity_at(mixture, Vec2(x, y)));
            out += '\n';
        }
    }
    return out;
}

std::string grid_csv(const GridGraph& grid) {
    std::string out = "node,x,y\n";
    for (NodeId v = 0; v < grid.node_count(); ++v) {
        fmt::format_to(std::back_inserter(out), "{},", v);
        append_real(out, grid.position(v).x());
        out += ',';
        append_real(out, grid.position(v).y());
        out += '\n';
    }
    return out;
}

std::string matrix_csv(const TransitionMatrix& matrix) {
    std::string out = "row,col,value\n";
    for (NodeId i = 0; i < matrix.dim(); ++i) {
        for (const auto& entry : matrix.row(i)) {
            fmt::format_to(std::back_inserter(out), "{},{},", i, entry.column);
            append_real(out, entry.probability);
            out += '\n';
        }
    }
    return out;
}

std::string runs_csv(std::span<const RunDigest> runs) {
    std::string out = "seed,renewals,mean_inter_arrival_steps,convergence_step,position_rmse_m\n";
    auto it = std::back_inserter(out);
    for (const RunDigest& d : runs) {
        fmt::format_to(it, "{},{},", d.seed, d.inter_arrivals.size());
        if (!d.inter_arrivals.empty()) {
            double sum = 0.0;
            for (Step t : d.inter_arrivals) sum += static_cast<double>(t);
            append_real(out, sum / static_cast<double>(d.inter_arrivals.size()));
        }
        out += ',';
        if (d.convergence_step) fmt::format_to(it, "{}", *d.convergence_step);
        out += ',';
        if (d.position_rmse_m) append_real(out, *d.position_rmse_m);
        out += '\n';
    }
    return out;
}

std::string summary_json(const SummaryStats& s) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::ordered_json j;
    j["runs"] = s.runs;
    j["mean_inter_arrival_steps"] = opt(s.mean_inter_arrival_steps);
    j["mean_reward_pct"] = opt(s.mean_reward_pct);
    j["convergence_step"] = opt(s.convergence_step);
    j["converged_fraction"] = s.converged_fraction;
    j["position_rmse_m"] = opt(s.position_rmse_m);
    return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string run_stem(const std::string& scenario, std::uint64_t seed) {
    return fmt::format("{}_{}", scenario, seed);
}

}  // namespace rfswarm
