#include "rfswarm/tracked_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace rfswarm {

namespace {

struct CellKey {
    long long x;
    long long y;
    bool operator==(const CellKey&) const = default;
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const noexcept {
        return std::hash<long long>{}(k.x * 73856093LL ^ k.y * 19349663LL);
    }
};

class SpatialIndex {
public:
    SpatialIndex(const std::vector<TrackedTarget>& entries, double radius)
        : entries_(entries), radius_(radius), cell_(std::max(radius, 1e-6)) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            buckets_[key(entries[i].position)].push_back(i);
        }
    }

    /// Indices within `radius` of p.
    template <typename Fn>
    void for_each_near(const Vec2& p, Fn&& fn) const {
        const CellKey center = key(p);
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = buckets_.find({center.x + dx, center.y + dy});
                if (it == buckets_.end()) continue;
                for (std::size_t i : it->second) {
                    if ((entries_[i].position - p).norm() <= radius_) fn(i);
                }
            }
        }
    }

private:
    CellKey key(const Vec2& p) const {
        return {static_cast<long long>(std::floor(p.x() / cell_)),
                static_cast<long long>(std::floor(p.y() / cell_))};
    }

    const std::vector<TrackedTarget>& entries_;
    double radius_;
    double cell_;
    std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> buckets_;
};

/// Maximum independent set of a small bipartite conflict component, with
/// canonical-order tie breaking.
class ComponentSolver {
public:
    ComponentSolver(std::vector<std::size_t> vertices, std::vector<bool> left,
                    std::vector<std::vector<std::size_t>> adjacency)
        : vertices_(std::move(vertices)), left_(std::move(left)), adjacency_(std::move(adjacency)) {}

    /// `order` lists local vertex ids in canonical order.
    std::vector<std::size_t> solve(const std::vector<std::size_t>& order) {
        const std::size_t n = vertices_.size();
        std::vector<bool> active(n, true);
        const std::size_t target = n - max_matching(active);

        std::vector<int> state(n, 0);  // 0 undecided, 1 accepted, -1 excluded
        std::size_t accepted = 0;
        for (std::size_t v : order) {
            bool conflicts = false;
            for (std::size_t w : adjacency_[v]) conflicts |= (state[w] == 1);
            if (conflicts) {
                state[v] = -1;
                continue;
            }
            // Vertices still free if v joins the accepted set.
            std::vector<bool> free(n, false);
            std::size_t free_count = 0;
            for (std::size_t u = 0; u < n; ++u) {
                if (state[u] != 0 || u == v) continue;
                bool blocked = false;
                for (std::size_t w : adjacency_[u]) blocked |= (state[w] == 1 || w == v);
                if (!blocked) {
                    free[u] = true;
                    ++free_count;
                }
            }
            const std::size_t reachable = accepted + 1 + free_count - max_matching(free);
            if (reachable == target) {
                state[v] = 1;
                ++accepted;
            } else {
                state[v] = -1;
            }
        }

        std::vector<std::size_t> out;
        for (std::size_t u = 0; u < n; ++u) {
            if (state[u] == 1) out.push_back(vertices_[u]);
        }
        return out;
    }

private:
    std::size_t max_matching(const std::vector<bool>& active) const {
        const std::size_t n = vertices_.size();
        std::vector<long> match(n, -1);  // right vertex -> left vertex
        std::size_t size = 0;
        for (std::size_t u = 0; u < n; ++u) {
            if (!active[u] || !left_[u]) continue;
            std::vector<bool> visited(n, false);
            if (augment(u, active, match, visited)) ++size;
        }
        return size;
    }

    bool augment(std::size_t u, const std::vector<bool>& active, std::vector<long>& match,
                 std::vector<bool>& visited) const {
        for (std::size_t w : adjacency_[u]) {
            if (!active[w] || visited[w]) continue;
            visited[w] = true;
            if (match[w] < 0 ||
                augment(static_cast<std::size_t>(match[w]), active, match, visited)) {
                match[w] = static_cast<long>(u);
                return true;
            }
        }
        return false;
    }

    std::vector<std::size_t> vertices_;
    std::vector<bool> left_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

}  // namespace

bool canonical_less(const TrackedTarget& a, const TrackedTarget& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.position.x() != b.position.x()) return a.position.x() < b.position.x();
    if (a.position.y() != b.position.y()) return a.position.y() < b.position.y();
    return a.label < b.label;
}

TrackedTargetSet TrackedTargetSet::from_entries(std::vector<TrackedTarget> entries,
                                                double dedup_radius) {
    std::stable_sort(entries.begin(), entries.end(), canonical_less);
    TrackedTargetSet out;
    for (auto& e : entries) {
        const bool duplicate = std::any_of(out.entries_.begin(), out.entries_.end(), [&](const auto& kept) {
            return (kept.position - e.position).norm() <= dedup_radius;
        });
        if (!duplicate) out.entries_.push_back(std::move(e));
    }
    return out;
}

std::vector<Vec2> TrackedTargetSet::positions() const {
    std::vector<Vec2> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.position);
    return out;
}

bool TrackedTargetSet::is_separated(double radius) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        for (std::size_t j = i + 1; j < entries_.size(); ++j) {
            if ((entries_[i].position - entries_[j].position).norm() <= radius) return false;
        }
    }
    return true;
}

TrackedTargetSet merge_rewards(const TrackedTargetSet& a, const TrackedTargetSet& b,
                               double dedup_radius) {
    if (a.empty()) return b;
    if (b.empty()) return a;

    std::vector<TrackedTarget> combined = a.entries_;
    combined.insert(combined.end(), b.entries_.begin(), b.entries_.end());
    const std::size_t n_left = a.size();
    const std::size_t n = combined.size();

    // Conflict edges only run between the two sides.
    std::vector<std::vector<std::size_t>> adjacency(n);
    const SpatialIndex right_index(b.entries_, dedup_radius);
    for (std::size_t i = 0; i < n_left; ++i) {
        right_index.for_each_near(combined[i].position, [&](std::size_t j) {
            adjacency[i].push_back(n_left + j);
            adjacency[n_left + j].push_back(i);
        });
    }

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t i = 0; i < n_left; ++i) {
        for (std::size_t j : adjacency[i]) parent[find_root(parent, j)] = find_root(parent, i);
    }
    std::unordered_map<std::size_t, std::vector<std::size_t>> components;
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find_root(parent, i);
        auto [it, inserted] = components.try_emplace(r);
        if (inserted) roots.push_back(r);
        it->second.push_back(i);
    }

    TrackedTargetSet out;
    for (std::size_t r : roots) {
        const auto& members = components[r];
        if (members.size() == 1) {
            out.entries_.push_back(combined[members.front()]);
            continue;
        }
        std::unordered_map<std::size_t, std::size_t> local;
        for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = k;
        std::vector<bool> left(members.size());
        std::vector<std::vector<std::size_t>> local_adjacency(members.size());
        for (std::size_t k = 0; k < members.size(); ++k) {
            left[k] = members[k] < n_left;
            for (std::size_t w : adjacency[members[k]]) local_adjacency[k].push_back(local[w]);
        }
        std::vector<std::size_t> order(members.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return canonical_less(combined[members[x]], combined[members[y]]);
        });
        ComponentSolver solver(members, std::move(left), std::move(local_adjacency));
        for (std::size_t idx : solver.solve(order)) out.entries_.push_back(combined[idx]);
    }

    std::stable_sort(out.entries_.begin(), out.entries_.end(), canonical_less);
    return out;
}

}  // namespace rfswarm
