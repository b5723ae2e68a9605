#include "rfswarm/markov_chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include <Eigen/LU>

#include "rfswarm/error.hpp"

namespace rfswarm {

TransitionMatrix::TransitionMatrix(std::vector<std::vector<Entry>> rows) : rows_(std::move(rows)) {
    for (auto& row : rows_) {
        std::sort(row.begin(), row.end(),
                  [](const Entry& a, const Entry& b) { return a.column < b.column; });
    }
}

double TransitionMatrix::operator()(NodeId i, NodeId j) const {
    const auto& r = rows_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Entry& e, NodeId col) { return e.column < col; });
    return (it != r.end() && it->column == j) ? it->probability : 0.0;
}

bool TransitionMatrix::is_irreducible() const {
    const std::size_t n = dim();
    if (n == 0) return false;
    // Reach every node from 0 forward and backward; together that is
    // strong connectivity.
    auto reaches_all = [n](const std::vector<std::vector<NodeId>>& adj) {
        std::vector<bool> seen(n, false);
        std::deque<NodeId> frontier{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!frontier.empty()) {
            const NodeId v = frontier.front();
            frontier.pop_front();
            for (NodeId w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    frontier.push_back(w);
                }
            }
        }
        return count == n;
    };
    std::vector<std::vector<NodeId>> forward(n), backward(n);
    for (NodeId i = 0; i < n; ++i) {
        for (const auto& e : rows_[i]) {
            if (e.probability > 0.0) {
                forward[i].push_back(e.column);
                backward[e.column].push_back(i);
            }
        }
    }
    return reaches_all(forward) && reaches_all(backward);
}

Eigen::MatrixXd TransitionMatrix::dense() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (NodeId i = 0; i < dim(); ++i) {
        for (const auto& e : rows_[i]) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(e.column)) = e.probability;
        }
    }
    return out;
}

Eigen::RowVectorXd TransitionMatrix::left_multiply(const Eigen::RowVectorXd& distribution) const {
    Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(distribution.size());
    for (NodeId i = 0; i < dim(); ++i) {
        const double mass = distribution(static_cast<Eigen::Index>(i));
        if (mass == 0.0) continue;
        for (const auto& e : rows_[i]) {
            out(static_cast<Eigen::Index>(e.column)) += mass * e.probability;
        }
    }
    return out;
}

TransitionMatrix build_transition_matrix(const GridGraph& grid) {
    std::vector<std::vector<TransitionMatrix::Entry>> rows(grid.node_count());
    for (NodeId i = 0; i < grid.node_count(); ++i) {
        const double p = 1.0 / static_cast<double>(grid.degree(i) + 1);
        rows[i].push_back({i, p});
        for (NodeId j : grid.neighbors(i)) rows[i].push_back({j, p});
        std::sort(rows[i].begin(), rows[i].end(),
                  [](const auto& x, const auto& y) { return x.column < y.column; });
    }
    return TransitionMatrix(std::move(rows));
}

ChainPosition step(const ChainPosition& pos, const TransitionMatrix& matrix, Rng& rng) {
    const auto& row = matrix.row(pos.node);
    const double u = rng.uniform();
    double cumulative = 0.0;
    NodeId next = row.back().column;
    for (const auto& e : row) {
        cumulative += e.probability;
        if (u < cumulative) {
            next = e.column;
            break;
        }
    }
    return {next, pos.step + 1};
}

Eigen::VectorXd stationary_distribution(const TransitionMatrix& matrix,
                                        const StationaryOptions& options) {
    if (!matrix.is_irreducible()) {
        throw ModelError("stationary distribution requires an irreducible matrix");
    }
    const auto n = static_cast<Eigen::Index>(matrix.dim());
    Eigen::RowVectorXd pi = Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        Eigen::RowVectorXd next = matrix.left_multiply(pi);
        next /= next.sum();
        const double change = (next - pi).cwiseAbs().maxCoeff();
        pi = std::move(next);
        if (change < options.tolerance) return pi.transpose();
    }
    throw ModelError("power iteration did not converge");
}

// ---------------------------------------------------------------------------

CompositeChain::CompositeChain(const TransitionMatrix& matrix, std::size_t robot_count,
                               std::uint64_t state_cap)
    : matrix_(matrix), robot_count_(robot_count), state_count_(1) {
    if (robot_count == 0) throw ConfigError("robots.count", "composite chain needs at least one robot");
    const std::uint64_t base = matrix.dim();
    for (std::size_t a = 0; a < robot_count; ++a) {
        if (state_count_ > state_cap / std::max<std::uint64_t>(base, 1)) {
            throw SizeError("composite state space exceeds cap of " + std::to_string(state_cap));
        }
        state_count_ *= base;
    }
    if (state_count_ > state_cap) {
        throw SizeError("composite state space exceeds cap of " + std::to_string(state_cap));
    }
}

std::vector<NodeId> CompositeChain::decode(std::uint64_t state) const {
    std::vector<NodeId> nodes(robot_count_);
    const std::uint64_t base = base_size();
    for (std::size_t a = robot_count_; a-- > 0;) {
        nodes[a] = static_cast<NodeId>(state % base);
        state /= base;
    }
    return nodes;
}

std::uint64_t CompositeChain::encode(const std::vector<NodeId>& nodes) const {
    std::uint64_t state = 0;
    for (NodeId n : nodes) state = state * base_size() + n;
    return state;
}

double CompositeChain::probability(std::uint64_t from, std::uint64_t to) const {
    const auto a = decode(from);
    const auto b = decode(to);
    double q = 1.0;
    for (std::size_t r = 0; r < robot_count_ && q != 0.0; ++r) q *= matrix_(a[r], b[r]);
    return q;
}

std::vector<std::pair<std::uint64_t, double>> CompositeChain::row(std::uint64_t from) const {
    const auto nodes = decode(from);
    std::vector<std::pair<std::uint64_t, double>> out{{0, 1.0}};
    for (std::size_t r = 0; r < robot_count_; ++r) {
        std::vector<std::pair<std::uint64_t, double>> next;
        const auto& entries = matrix_.row(nodes[r]);
        next.reserve(out.size() * entries.size());
        for (const auto& [prefix, q] : out) {
            for (const auto& e : entries) {
                next.emplace_back(prefix * base_size() + e.column, q * e.probability);
            }
        }
        out = std::move(next);
    }
    return out;
}

bool CompositeChain::is_colocated(std::uint64_t state) const {
    const auto nodes = decode(state);
    return std::all_of(nodes.begin(), nodes.end(), [&](NodeId n) { return n == nodes.front(); });
}

Eigen::MatrixXd CompositeChain::dense(std::uint64_t dense_cap) const {
    if (state_count_ > dense_cap) {
        throw SizeError("dense composite matrix exceeds cap of " + std::to_string(dense_cap));
    }
    const auto n = static_cast<Eigen::Index>(state_count_);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    for (std::uint64_t s = 0; s < state_count_; ++s) {
        for (const auto& [t, p] : row(s)) {
            q(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) += p;
        }
    }
    return q;
}

CompositeChain build_composite(const TransitionMatrix& matrix, std::size_t robot_count,
                               std::uint64_t state_cap) {
    return CompositeChain(matrix, robot_count, state_cap);
}

Eigen::VectorXd meeting_times(const CompositeChain& chain, std::uint64_t dense_cap) {
    if (chain.state_count() > dense_cap) {
        throw SizeError("meeting-time solve exceeds dense cap of " + std::to_string(dense_cap) +
                        " composite states");
    }
    if (chain.robot_count() != 2) {
        throw ConfigError("robots.count", "meeting-time oracle is defined for exactly 2 robots");
    }
    const std::uint64_t states = chain.state_count();
    std::vector<Eigen::Index> index(states, -1);
    Eigen::Index off = 0;
    for (std::uint64_t s = 0; s < states; ++s) {
        if (!chain.is_colocated(s)) index[s] = off++;
    }

    Eigen::VectorXd h = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(states));
    if (off == 0) return h;

    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(off, off);
    for (std::uint64_t s = 0; s < states; ++s) {
        if (index[s] < 0) continue;
        for (const auto& [t, q] : chain.row(s)) {
            if (index[t] >= 0) system(index[s], index[t]) -= q;
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (!lu.isInvertible()) {
        throw ModelError("meeting set is unreachable: hitting-time system is singular");
    }
    const Eigen::VectorXd solution = lu.solve(Eigen::VectorXd::Ones(off));
    for (std::uint64_t s = 0; s < states; ++s) {
        if (index[s] >= 0) h(static_cast<Eigen::Index>(s)) = solution(index[s]);
    }
    return h;
}

double expected_meeting_time(const CompositeChain& chain, std::uint64_t start,
                             std::uint64_t dense_cap) {
    if (start >= chain.state_count()) throw DomainError("composite start state out of range");
    if (chain.robot_count() == 2 && chain.is_colocated(start)) return 0.0;
    return meeting_times(chain, dense_cap)(static_cast<Eigen::Index>(start));
}

double return_time(const CompositeChain& chain, NodeId node, std::uint64_t dense_cap) {
    const Eigen::VectorXd h = meeting_times(chain, dense_cap);
    const std::uint64_t start = chain.encode({node, node});
    double expected = 1.0;
    for (const auto& [t, q] : chain.row(start)) expected += q * h(static_cast<Eigen::Index>(t));
    return expected;
}

double mean_inter_arrival_oracle(const CompositeChain& chain, std::uint64_t dense_cap) {
    const Eigen::VectorXd h = meeting_times(chain, dense_cap);
    const Eigen::VectorXd pi = stationary_distribution(chain.base());
    double weighted = 0.0;
    double total = 0.0;
    for (NodeId m = 0; m < chain.base_size(); ++m) {
        const double w = pi(static_cast<Eigen::Index>(m)) * pi(static_cast<Eigen::Index>(m));
        double r = 1.0;
        for (const auto& [t, q] : chain.row(chain.encode({m, m}))) {
            r += q * h(static_cast<Eigen::Index>(t));
        }
        weighted += w * r;
        total += w;
    }
    return weighted / total;
}

}  // namespace rfswarm
