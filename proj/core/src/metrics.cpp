#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "rfswarm/scenario.hpp"

namespace rfswarm {

namespace {

struct Pair {
    double distance;
    std::size_t estimate;
    std::size_t truth;
};

/// All estimate/truth pairs, closest first; ties by index for determinism.
std::vector<Pair> sorted_pairs(const std::vector<Vec2>& estimates, const std::vector<Vec2>& truths,
                               double max_distance) {
    std::vector<Pair> pairs;
    for (std::size_t e = 0; e < estimates.size(); ++e) {
        for (std::size_t t = 0; t < truths.size(); ++t) {
            const double d = (estimates[e] - truths[t]).norm();
            if (d <= max_distance) pairs.push_back({d, e, t});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return std::tie(a.distance, a.truth, a.estimate) < std::tie(b.distance, b.truth, b.estimate);
    });
    return pairs;
}

template <typename Fn>
void greedy_match(const std::vector<Vec2>& estimates, const std::vector<Vec2>& truths,
                  double max_distance, Fn&& on_match) {
    std::vector<bool> used_e(estimates.size(), false), used_t(truths.size(), false);
    for (const auto& p : sorted_pairs(estimates, truths, max_distance)) {
        if (used_e[p.estimate] || used_t[p.truth]) continue;
        used_e[p.estimate] = used_t[p.truth] = true;
        on_match(p);
    }
}

}  // namespace

std::size_t matched_target_count(const std::vector<Vec2>& estimates,
                                 const std::vector<Vec2>& truths, double radius) {
    std::size_t count = 0;
    greedy_match(estimates, truths, radius, [&](const Pair&) { ++count; });
    return count;
}

RmseResult position_rmse(const std::vector<Vec2>& estimates, const std::vector<Vec2>& truths) {
    RmseResult r;
    double squared = 0.0;
    greedy_match(estimates, truths, std::numeric_limits<double>::infinity(), [&](const Pair& p) {
        squared += p.distance * p.distance;
        ++r.matched;
    });
    r.rmse_m = r.matched > 0 ? std::sqrt(squared / static_cast<double>(r.matched)) : 0.0;
    r.unmatched_estimates = estimates.size() - r.matched;
    r.unmatched_truths = truths.size() - r.matched;
    return r;
}

std::optional<RmseResult> position_rmse(const RunRecord& record,
                                        const std::vector<Vec2>& true_targets) {
    const auto& sets = record.convergence_step && !record.rewards_at_convergence.empty()
                           ? record.rewards_at_convergence
                           : record.final_rewards;
    RmseResult pooled;
    double squared = 0.0;
    for (const auto& set : sets) {
        const RmseResult r = position_rmse(set.positions(), true_targets);
        squared += r.rmse_m * r.rmse_m * static_cast<double>(r.matched);
        pooled.matched += r.matched;
        pooled.unmatched_estimates += r.unmatched_estimates;
        pooled.unmatched_truths += r.unmatched_truths;
    }
    if (pooled.matched == 0) return std::nullopt;
    pooled.rmse_m = std::sqrt(squared / static_cast<double>(pooled.matched));
    return pooled;
}

std::optional<Step> convergence_time(const RunRecord& record, std::size_t true_count) {
    if (true_count == 0) return 0;
    Step current = -1;
    bool all = true;
    for (const auto& row : record.rows) {
        if (row.step != current) {
            if (current > 0 && all) return current;
            current = row.step;
            all = true;
        }
        all = all && row.detected_count >= true_count;
    }
    if (current > 0 && all) return current;
    return std::nullopt;
}

std::optional<double> mean_inter_arrival(std::span<const RunDigest> runs) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& run : runs) {
        for (Step tau : run.inter_arrivals) sum += static_cast<double>(tau);
        count += run.inter_arrivals.size();
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

std::optional<double> mean_inter_arrival(std::span<const RunRecord> records) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& record : records) {
        for (Step tau : record.renewals.all_inter_arrivals()) sum += static_cast<double>(tau);
        count += record.renewals.all_inter_arrivals().size();
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

double reward_percentage_at(std::span<const RunDigest> runs, std::size_t true_count, Step step) {
    if (true_count == 0 || runs.empty()) return 0.0;
    double total = 0.0;
    for (const auto& run : runs) {
        if (run.mean_detected_by_step.empty()) continue;
        const Step last = static_cast<Step>(run.mean_detected_by_step.size()) - 1;
        const Step at = std::clamp<Step>(step, 0, last);
        total += run.mean_detected_by_step[static_cast<std::size_t>(at)];
    }
    const double mean_detected = total / static_cast<double>(runs.size());
    return std::clamp(100.0 * mean_detected / static_cast<double>(true_count), 0.0, 100.0);
}

std::optional<double> reward_percentage(std::span<const RunDigest> runs, std::size_t true_count) {
    const auto tau = mean_inter_arrival(runs);
    if (!tau) return std::nullopt;
    return reward_percentage_at(runs, true_count, static_cast<Step>(std::floor(*tau)));
}

SummaryStats summarize(std::span<const RunDigest> runs) {
    SummaryStats s;
    s.runs = runs.size();
    if (runs.empty()) return s;
    s.mean_inter_arrival_steps = mean_inter_arrival(runs);
    s.mean_reward_pct = reward_percentage(runs, runs.front().true_count);

    std::vector<Step> converged;
    double rmse_sum = 0.0;
    std::size_t rmse_count = 0;
    for (const auto& run : runs) {
        if (run.convergence_step) converged.push_back(*run.convergence_step);
        if (run.position_rmse_m) {
            rmse_sum += *run.position_rmse_m;
            ++rmse_count;
        }
    }
    s.converged_fraction = static_cast<double>(converged.size()) / static_cast<double>(runs.size());
    if (!converged.empty()) {
        std::sort(converged.begin(), converged.end());
        const std::size_t mid = converged.size() / 2;
        s.convergence_step = converged.size() % 2 == 1
                                 ? static_cast<double>(converged[mid])
                                 : 0.5 * static_cast<double>(converged[mid - 1] + converged[mid]);
    }
    if (rmse_count > 0) s.position_rmse_m = rmse_sum / static_cast<double>(rmse_count);
    return s;
}

}  // namespace rfswarm
