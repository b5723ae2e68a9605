#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "rfswarm/types.hpp"

namespace rfswarm {

/// Label of a tracked target: the robot that first extracted it and a
/// per-robot sequence number. Unique across a run without remapping.
struct TargetLabel {
    RobotId origin = 0;
    std::uint64_t sequence = 0;

    auto operator<=>(const TargetLabel&) const = default;
};

struct TrackedTarget {
    TargetLabel label;
    Vec2 position = Vec2::Zero();
    double weight = 0.0;

    bool operator==(const TrackedTarget& other) const {
        return label == other.label && position == other.position && weight == other.weight;
    }
};

/// Canonical order: heavier first, then smaller x, smaller y, label.
bool canonical_less(const TrackedTarget& a, const TrackedTarget& b);

/// Set of tracked targets, no two of which lie within the dedup radius.
/// Entries are kept in canonical order so equal sets compare equal.
class TrackedTargetSet {
public:
    TrackedTargetSet() = default;

    /// Greedy canonical-order deduplication of an arbitrary list: an entry
    /// is kept unless it lies within `dedup_radius` of an already kept one.
    static TrackedTargetSet from_entries(std::vector<TrackedTarget> entries, double dedup_radius);

    const std::vector<TrackedTarget>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    std::vector<Vec2> positions() const;

    /// True when every pair of entries is farther apart than `radius`.
    bool is_separated(double radius) const;

    bool operator==(const TrackedTargetSet&) const = default;

private:
    friend TrackedTargetSet merge_rewards(const TrackedTargetSet&, const TrackedTargetSet&, double);
    std::vector<TrackedTarget> entries_;
};

/// Union of two tracked sets in which entries within `dedup_radius` of each
/// other denote the same target.
///
/// The result is a maximum-cardinality subset of the combined entries with
/// no two entries within the radius (the conflict graph between two
/// separated sets is bipartite, so this is |A| + |B| - max matching). Among
/// maximum subsets, entries are chosen greedily in canonical order, so the
/// heavier member of an identified pair is kept. Consequences:
///   - the result depends only on the combined multiset (symmetric);
///   - merge_rewards(M, M, r) == M;
///   - size >= max(|A|, |B|), so repeated unions never shrink a set.
TrackedTargetSet merge_rewards(const TrackedTargetSet& a, const TrackedTargetSet& b,
                               double dedup_radius);

}  // namespace rfswarm
