#include "rfswarm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "rfswarm/error.hpp"

namespace rfswarm {

namespace {

bool is_connected(const std::vector<std::vector<NodeId>>& adjacency) {
    if (adjacency.empty()) return false;
    std::vector<bool> seen(adjacency.size(), false);
    std::deque<NodeId> frontier{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const NodeId node = frontier.front();
        frontier.pop_front();
        for (NodeId next : adjacency[node]) {
            if (!seen[next]) {
                seen[next] = true;
                ++reached;
                frontier.push_back(next);
            }
        }
    }
    return reached == adjacency.size();
}

std::size_t lattice_cells(double length, double spacing, const std::string& field) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ConfigError(field, "must be positive");
    }
    const double ratio = length / spacing;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError(field, "must be an integer multiple of the grid spacing");
    }
    return static_cast<std::size_t>(rounded);
}

}  // namespace

GridGraph GridGraph::from_edges(std::vector<Vec2> coordinates,
                                const std::vector<std::pair<NodeId, NodeId>>& edges,
                                double width_m, double height_m, double spacing_m) {
    if (coordinates.empty()) throw ConfigError("grid", "graph needs at least one node");
    GridGraph graph;
    graph.adjacency_.resize(coordinates.size());
    for (auto [a, b] : edges) {
        if (a >= coordinates.size() || b >= coordinates.size()) {
            throw ConfigError("grid.edges", "edge endpoint out of range");
        }
        if (a == b) continue;
        graph.adjacency_[a].push_back(b);
        graph.adjacency_[b].push_back(a);
    }
    for (auto& row : graph.adjacency_) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    if (!is_connected(graph.adjacency_)) {
        throw ModelError("grid graph is not connected");
    }
    graph.coordinates_ = std::move(coordinates);
    graph.width_m_ = width_m;
    graph.height_m_ = height_m;
    graph.spacing_m_ = spacing_m;
    return graph;
}

bool GridGraph::has_edge(NodeId a, NodeId b) const {
    if (a >= node_count() || b >= node_count()) return false;
    if (a == b) return true;
    const auto& row = adjacency_[a];
    return std::binary_search(row.begin(), row.end(), b);
}

std::vector<std::pair<NodeId, NodeId>> GridGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId a = 0; a < node_count(); ++a) {
        out.emplace_back(a, a);
        for (NodeId b : adjacency_[a]) {
            if (a < b) out.emplace_back(a, b);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

NodeId GridGraph::nearest_node(const Vec2& point) const {
    NodeId best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (NodeId id = 0; id < node_count(); ++id) {
        const double d = (coordinates_[id] - point).squaredNorm();
        if (d < best_distance) {
            best_distance = d;
            best = id;
        }
    }
    return best;
}

GridGraph build_grid(double width_m, double height_m, double spacing_m) {
    if (!(spacing_m > 0.0) || !std::isfinite(spacing_m)) {
        throw ConfigError("grid.spacing_m", "must be positive");
    }
    const std::size_t cells_x = lattice_cells(width_m, spacing_m, "grid.width_m");
    const std::size_t cells_y = lattice_cells(height_m, spacing_m, "grid.height_m");
    const std::size_t nx = cells_x + 1;
    const std::size_t ny = cells_y + 1;

    std::vector<Vec2> coordinates;
    coordinates.reserve(nx * ny);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const NodeId id = iy * nx + ix;
            coordinates.emplace_back(static_cast<double>(ix) * spacing_m,
                                     static_cast<double>(iy) * spacing_m);
            if (ix + 1 < nx) edges.emplace_back(id, id + 1);
            if (iy + 1 < ny) edges.emplace_back(id, id + nx);
        }
    }
    return GridGraph::from_edges(std::move(coordinates), edges, width_m, height_m, spacing_m);
}

GridGraph build_path(std::size_t node_count, double spacing_m) {
    if (node_count == 0) throw ConfigError("grid.nodes", "must be at least 1");
    if (!(spacing_m > 0.0)) throw ConfigError("grid.spacing_m", "must be positive");
    std::vector<Vec2> coordinates;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < node_count; ++i) {
        coordinates.emplace_back(static_cast<double>(i) * spacing_m, 0.0);
        if (i + 1 < node_count) edges.emplace_back(i, i + 1);
    }
    const double length = static_cast<double>(node_count - 1) * spacing_m;
    return GridGraph::from_edges(std::move(coordinates), edges, length, 0.0, spacing_m);
}

}  // namespace rfswarm
