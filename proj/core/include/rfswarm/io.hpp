#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "rfswarm/error.hpp"
#include "rfswarm/scenario.hpp"

namespace rfswarm {

/// A file could not be created or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Rectangle and resolution of an intensity-surface dump.
struct SurfaceLattice {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
    double resolution_m = 0.05;
};

/// The grid's bounding box grown by margin_m on every side.
SurfaceLattice surface_lattice(const GridGraph& grid, double resolution_m, double margin_m);

std::string step_csv(const RunRecord& record);
std::string encounters_csv(const RunRecord& record);
std::string rewards_csv(const RunRecord& record);
std::string measurements_csv(const RunRecord& record);
std::string intensity_csv(const GaussianMixture& mixture, const SurfaceLattice& lattice);
std::string grid_csv(const GridGraph& grid);
std::string matrix_csv(const TransitionMatrix& matrix);
std::string runs_csv(std::span<const RunDigest> runs);
std::string summary_json(const SummaryStats& summary);

/// Writes `contents` to `path`, replacing it. Throws IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& contents);

/// "{scenario}_{seed}".
std::string run_stem(const std::string& scenario, std::uint64_t seed);

}  // namespace rfswarm
