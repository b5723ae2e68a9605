#pragma once

#include <vector>

#include "rfswarm/types.hpp"

namespace rfswarm {

struct EncounterEvent {
    Step step = 0;
    RobotId first = 0;   // first < second
    RobotId second = 0;
    NodeId node = 0;

    bool operator==(const EncounterEvent&) const = default;
};

/// Renewal history of one robot: epochs S_1 < S_2 < ... (S_0 = 0 implied)
/// and the inter-arrival times tau_n = S_n - S_{n-1}.
class RobotRenewals {
public:
    const std::vector<Step>& epochs() const noexcept { return epochs_; }
    const std::vector<Step>& inter_arrivals() const noexcept { return inter_arrivals_; }

    Step last_epoch() const noexcept { return epochs_.empty() ? 0 : epochs_.back(); }

    /// T(k): number of epochs at or before k.
    std::size_t count_at(Step k) const;

    /// S_n; S_0 = 0. Requires n <= count.
    Step epoch(std::size_t n) const;

    /// Steps since the last epoch.
    Step running_time(Step now) const { return now - last_epoch(); }

    /// Closes the running interval at step k. A second renewal at the same
    /// step is a no-op (meeting several robots at once is one epoch).
    /// Throws OrderingError when k precedes the last epoch.
    void renew(Step k);

private:
    std::vector<Step> epochs_;
    std::vector<Step> inter_arrivals_;
};

/// Per-robot renewal histories of a run.
class RenewalLog {
public:
    RenewalLog() = default;
    explicit RenewalLog(std::size_t robot_count) : robots_(robot_count) {}

    std::size_t robot_count() const noexcept { return robots_.size(); }
    const RobotRenewals& robot(RobotId id) const { return robots_.at(id); }

    /// Renews both robots of the event. Throws OrderingError on a
    /// non-monotone step for either robot; the log is unchanged then.
    void record(const EncounterEvent& event);

    /// All inter-arrival times across robots, robot-major.
    std::vector<Step> all_inter_arrivals() const;

    /// Checks T(k) >= n <=> S_n <= k for every robot and every (n, k) with
    /// k in [0, horizon], plus S_n = sum of the first n inter-arrivals.
    bool satisfies_counting_identity(Step horizon) const;

private:
    std::vector<RobotRenewals> robots_;
};

/// Free-function form: returns the log with `event` recorded.
RenewalLog record_renewal(RenewalLog log, const EncounterEvent& event);

}  // namespace rfswarm
