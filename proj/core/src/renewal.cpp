#include "rfswarm/renewal.hpp"

#include <algorithm>
#include <string>

#include "rfswarm/error.hpp"

namespace rfswarm {

std::size_t RobotRenewals::count_at(Step k) const {
    return static_cast<std::size_t>(std::upper_bound(epochs_.begin(), epochs_.end(), k) -
                                    epochs_.begin());
}

Step RobotRenewals::epoch(std::size_t n) const {
    if (n == 0) return 0;
    return epochs_.at(n - 1);
}

void RobotRenewals::renew(Step k) {
    if (k < last_epoch() || k < 0) {
        throw OrderingError("renewal at step " + std::to_string(k) + " precedes last epoch " +
                            std::to_string(last_epoch()));
    }
    if (!epochs_.empty() && k == epochs_.back()) return;
    if (epochs_.empty() && k == 0) return;
    inter_arrivals_.push_back(k - last_epoch());
    epochs_.push_back(k);
}

void RenewalLog::record(const EncounterEvent& event) {
    auto& a = robots_.at(event.first);
    auto& b = robots_.at(event.second);
    if (event.step < a.last_epoch() || event.step < b.last_epoch()) {
        throw OrderingError("encounter at step " + std::to_string(event.step) +
                            " is older than a recorded epoch");
    }
    a.renew(event.step);
    b.renew(event.step);
}

std::vector<Step> RenewalLog::all_inter_arrivals() const {
    std::vector<Step> out;
    for (const auto& r : robots_) {
        out.insert(out.end(), r.inter_arrivals().begin(), r.inter_arrivals().end());
    }
    return out;
}

bool RenewalLog::satisfies_counting_identity(Step horizon) const {
    // With S strictly increasing, {n : S_n <= k} = {0..m(k)}, so the
    // identity over all n at fixed k reduces to T(k) == m(k). Sweeping k
    // covers every (n, k) pair in O(count + horizon).
    for (const auto& r : robots_) {
        const auto& epochs = r.epochs();
        Step running = 0;
        for (std::size_t n = 0; n < epochs.size(); ++n) {
            running += r.inter_arrivals()[n];
            if (running != epochs[n]) return false;
            if (n > 0 && epochs[n] <= epochs[n - 1]) return false;
        }
        std::size_t reached = 0;
        for (Step k = 0; k <= horizon; ++k) {
            while (reached < epochs.size() && epochs[reached] <= k) ++reached;
            if (r.count_at(k) != reached) return false;
        }
    }
    return true;
}

RenewalLog record_renewal(RenewalLog log, const EncounterEvent& event) {
    log.record(event);
    return log;
}

}  // namespace rfswarm
