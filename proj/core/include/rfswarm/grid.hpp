#pragma once

#include <utility>
#include <vector>

#include "rfswarm/types.hpp"

namespace rfswarm {

/// Undirected spatial graph the robots walk on. Nodes sit on lattice
/// vertices; every node carries a self-edge so "stay" is always a move.
class GridGraph {
public:
    /// Builds an arbitrary graph from node coordinates and undirected
    /// non-self edges. Self-edges are added automatically. Throws
    /// ConfigError on out-of-range endpoints and ModelError when the
    /// graph is disconnected.
    static GridGraph from_edges(std::vector<Vec2> coordinates,
                                const std::vector<std::pair<NodeId, NodeId>>& edges,
                                double width_m = 0.0, double height_m = 0.0,
                                double spacing_m = 0.0);

    std::size_t node_count() const noexcept { return coordinates_.size(); }
    const Vec2& position(NodeId node) const { return coordinates_.at(node); }
    const std::vector<Vec2>& positions() const noexcept { return coordinates_; }

    /// Non-self neighbors in ascending id order.
    const std::vector<NodeId>& neighbors(NodeId node) const { return adjacency_.at(node); }

    /// Number of non-self neighbors (d_i).
    std::size_t degree(NodeId node) const { return adjacency_.at(node).size(); }

    bool has_edge(NodeId a, NodeId b) const;

    /// All undirected edges (a <= b), self-edges included, sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    /// Node closest to a point (ties resolved to the smaller id).
    NodeId nearest_node(const Vec2& point) const;

    double width_m() const noexcept { return width_m_; }
    double height_m() const noexcept { return height_m_; }
    double spacing_m() const noexcept { return spacing_m_; }

private:
    std::vector<Vec2> coordinates_;
    std::vector<std::vector<NodeId>> adjacency_;
    double width_m_ = 0.0;
    double height_m_ = 0.0;
    double spacing_m_ = 0.0;
};

/// Square lattice over [0, width] x [0, height] with 4-neighbor adjacency.
/// Node ids are row-major from the origin: id = iy * nx + ix.
/// Throws ConfigError for non-positive sizes or sizes that are not integer
/// multiples of the spacing.
GridGraph build_grid(double width_m, double height_m, double spacing_m);

/// Path graph 0 - 1 - ... - (n-1) laid out on the x axis.
GridGraph build_path(std::size_t node_count, double spacing_m = 1.0);

}  // namespace rfswarm
