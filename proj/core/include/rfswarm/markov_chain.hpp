#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "rfswarm/grid.hpp"
#include "rfswarm/random.hpp"
#include "rfswarm/types.hpp"

namespace rfswarm {

/// Row-stochastic walk matrix stored by row as (column, probability)
/// pairs; only edge entries are stored.
class TransitionMatrix {
public:
    struct Entry {
        NodeId column;
        double probability;
    };

    TransitionMatrix() = default;
    explicit TransitionMatrix(std::vector<std::vector<Entry>> rows);

    std::size_t dim() const noexcept { return rows_.size(); }
    const std::vector<Entry>& row(NodeId i) const { return rows_.at(i); }

    /// p_ij, zero when (i, j) is not an edge.
    double operator()(NodeId i, NodeId j) const;

    /// Reachability scan from every node.
    bool is_irreducible() const;

    /// Dense copy; intended for small chains and tests.
    Eigen::MatrixXd dense() const;

    /// Row vector times matrix.
    Eigen::RowVectorXd left_multiply(const Eigen::RowVectorXd& distribution) const;

private:
    std::vector<std::vector<Entry>> rows_;
};

struct ChainPosition {
    NodeId node = 0;
    Step step = 0;
};

/// p_ij = 1 / (d_i + 1) on every edge including the self-edge.
TransitionMatrix build_transition_matrix(const GridGraph& grid);

/// Samples the next node from row pos.node and advances the step.
ChainPosition step(const ChainPosition& pos, const TransitionMatrix& matrix, Rng& rng);

struct StationaryOptions {
    double tolerance = 1e-12;
    std::size_t max_iterations = 1'000'000;
};

/// Stationary distribution pi = pi P by power iteration from the uniform
/// distribution. Throws ModelError for reducible matrices or when the
/// iteration fails to converge.
Eigen::VectorXd stationary_distribution(const TransitionMatrix& matrix,
                                        const StationaryOptions& options = {});

/// Joint chain of N robots walking independently on the same matrix.
/// Composite states are encoded base-S with robot 0 as the most
/// significant digit, so state (a, b) of two robots is a * S + b.
class CompositeChain {
public:
    static constexpr std::uint64_t default_state_cap = 1'000'000;

    CompositeChain(const TransitionMatrix& matrix, std::size_t robot_count,
                   std::uint64_t state_cap = default_state_cap);

    std::size_t robot_count() const noexcept { return robot_count_; }
    std::size_t base_size() const noexcept { return matrix_.dim(); }
    std::uint64_t state_count() const noexcept { return state_count_; }
    const TransitionMatrix& base() const noexcept { return matrix_; }

    std::vector<NodeId> decode(std::uint64_t state) const;
    std::uint64_t encode(const std::vector<NodeId>& nodes) const;

    /// q = product over robots of p(from(a), to(a)).
    double probability(std::uint64_t from, std::uint64_t to) const;

    /// Nonzero entries of one composite row, in ascending state order.
    std::vector<std::pair<std::uint64_t, double>> row(std::uint64_t from) const;

    /// True when every robot occupies the same node.
    bool is_colocated(std::uint64_t state) const;

    /// Dense Q; throws SizeError above dense_cap states.
    Eigen::MatrixXd dense(std::uint64_t dense_cap = 4096) const;

private:
    TransitionMatrix matrix_;
    std::size_t robot_count_;
    std::uint64_t state_count_;
};

CompositeChain build_composite(const TransitionMatrix& matrix, std::size_t robot_count,
                               std::uint64_t state_cap = CompositeChain::default_state_cap);

/// Cap on composite states for the dense hitting-time solve.
inline constexpr std::uint64_t default_dense_solve_cap = 4096;

/// Expected number of steps until two robots first share a node, starting
/// from `start` (zero when start is already co-located). Solves
/// (I - Q_off) h = 1 over the off-diagonal states. Requires N = 2.
/// Throws SizeError above dense_cap, ModelError when singular.
double expected_meeting_time(const CompositeChain& chain, std::uint64_t start,
                             std::uint64_t dense_cap = default_dense_solve_cap);

/// Full hitting-time vector over all composite states (diagonal = 0).
Eigen::VectorXd meeting_times(const CompositeChain& chain,
                              std::uint64_t dense_cap = default_dense_solve_cap);

/// Expected time to the next meeting for two robots that share node m
/// right now: 1 + sum_j q((m,m), j) h(j).
double return_time(const CompositeChain& chain, NodeId node,
                   std::uint64_t dense_cap = default_dense_solve_cap);

/// Long-run mean inter-arrival time of meetings for two robots, averaging
/// return times over the stationary distribution of meeting locations
/// (weights pi_m^2).
double mean_inter_arrival_oracle(const CompositeChain& chain,
                                 std::uint64_t dense_cap = default_dense_solve_cap);

}  // namespace rfswarm
