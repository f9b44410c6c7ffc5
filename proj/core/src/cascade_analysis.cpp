#include "illiqnet/cascade_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "illiqnet/errors.hpp"
#include "illiqnet/rng.hpp"
#include "illiqnet/stats.hpp"

namespace illiqnet {

std::optional<FailureEvent> detect_failures(const IlliquiditySeries& series,
                                            const StockMeta& meta) {
    const double limit = meta.down_limit_price + kLimitTolerance;
    for (int m = 0; m < int(series.slots.size()); ++m) {
        const MinuteSlot& slot = series.slots[size_t(m)];
        if (slot.state == LiquidityState::Missing) continue;
        bool has_ask = !std::isnan(slot.best_ask);
        bool has_bid = !std::isnan(slot.best_bid);
        bool pinned = !has_bid && has_ask && slot.best_ask <= limit;
        bool mid_at_limit = has_ask && has_bid && (slot.best_ask + slot.best_bid) / 2.0 <= limit;
        if (pinned || mid_at_limit)
            return FailureEvent{series.stock_id, series.date, m};
    }
    return std::nullopt;
}

std::vector<CrashCalendarEntry> crash_days(
    const std::map<std::string, std::vector<FailureEvent>>& events_by_date,
    std::span<const std::string> dates, int threshold) {
    std::vector<CrashCalendarEntry> out;
    out.reserve(dates.size());
    for (const auto& date : dates) {
        CrashCalendarEntry entry;
        entry.date = date;
        auto it = events_by_date.find(date);
        if (it != events_by_date.end()) {
            std::set<std::string> distinct;
            for (const auto& e : it->second) distinct.insert(e.stock_id);
            entry.failed_count = int(distinct.size());
        }
        entry.crash = entry.failed_count > threshold;
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<int> failure_counts(std::span<const FailureEvent> events) {
    std::vector<int> counts(kMinutesPerDay, 0);
    for (const auto& e : events)
        if (e.fail_minute >= 0 && e.fail_minute < kMinutesPerDay) ++counts[size_t(e.fail_minute)];
    return counts;
}

PeakSet detect_peaks(std::span<const int> counts, int window, int min_height) {
    if (window < 1) throw ValidationError("detect_peaks: window must be >= 1");
    if (min_height < 1) throw ValidationError("detect_peaks: min_height must be >= 1");
    PeakSet out;
    out.counts.assign(counts.begin(), counts.end());
    const int n = int(counts.size());
    for (int m = 0; m < n; ++m) {
        if (counts[size_t(m)] < min_height) continue;
        bool peak = true;
        for (int k = std::max(0, m - window); k <= std::min(n - 1, m + window); ++k) {
            if (k == m) continue;
            // strict over the past, ties allowed over the future: the earlier
            // minute of a tie is the peak, the later one is not
            if (k < m ? counts[size_t(k)] >= counts[size_t(m)]
                      : counts[size_t(k)] > counts[size_t(m)]) {
                peak = false;
                break;
            }
        }
        if (peak) out.peaks.push_back(m);
    }
    return out;
}

int assign_peak(int minute, std::span<const int> peaks) {
    int best = -1, best_dist = -1;
    for (int p : peaks) {
        int d = std::abs(minute - p);
        if (best < 0 || d < best_dist) {  // ties keep the earlier peak
            best = p;
            best_dist = d;
        }
    }
    return best;
}

namespace {

/// R_bp for one assignment of fail minutes; counts per group plus the total.
/// `minutes[i]` pairs with `group_of[i]` (index into group label list).
void count_before_peak(std::span<const int> minutes, std::span<const int> group_of,
                       int group_count, std::span<const int> peaks, std::vector<long>& n_bp,
                       long& total_bp) {
    std::fill(n_bp.begin(), n_bp.end(), 0L);
    total_bp = 0;
    for (size_t i = 0; i < minutes.size(); ++i) {
        int peak = assign_peak(minutes[i], peaks);
        if (peak < 0 || minutes[i] >= peak) continue;
        ++total_bp;
        if (group_of[i] >= 0 && group_of[i] < group_count) ++n_bp[size_t(group_of[i])];
    }
}

}  // namespace

std::vector<BeforePeakScore> before_peak_score(std::span<const FailureEvent> events,
                                               const PeakSet& peaks,
                                               const IlliquidityNetwork& network,
                                               const std::map<std::string, StockMeta>& meta,
                                               Grouping grouping, int shuffles, uint64_t seed) {
    if (peaks.peaks.empty() || events.empty()) return {};
    if (shuffles < 1) throw ValidationError("before_peak_score: shuffles must be >= 1");

    // group shares of the network's nodes (N_ij / N_j)
    std::vector<std::string> group_labels;
    std::map<std::string, int> group_index;
    std::vector<long> n_nodes;
    long total_nodes = 0;
    for (const auto& id : network.nodes) {
        auto it = meta.find(id);
        if (it == meta.end()) continue;
        const std::string& label =
            grouping == Grouping::Sector ? it->second.sector : it->second.cap_style;
        auto [gi, inserted] = group_index.try_emplace(label, int(group_labels.size()));
        if (inserted) {
            group_labels.push_back(label);
            n_nodes.push_back(0);
        }
        ++n_nodes[size_t(gi->second)];
        ++total_nodes;
    }
    if (total_nodes == 0) return {};

    // distinct failed stocks with their group; groups absent from the network
    // are dropped from scoring but their failures still shuffle
    std::vector<int> minutes, group_of;
    std::set<std::string> seen;
    for (const auto& e : events) {
        if (!seen.insert(e.stock_id).second) continue;
        minutes.push_back(e.fail_minute);
        int gi = -1;
        auto it = meta.find(e.stock_id);
        if (it != meta.end()) {
            const std::string& label =
                grouping == Grouping::Sector ? it->second.sector : it->second.cap_style;
            auto g = group_index.find(label);
            if (g != group_index.end()) gi = g->second;
        }
        group_of.push_back(gi);
    }

    const int g_count = int(group_labels.size());
    std::vector<long> n_bp(size_t(g_count), 0L);
    long total_bp = 0;
    count_before_peak(minutes, group_of, g_count, peaks.peaks, n_bp, total_bp);
    if (total_bp == 0) return {};

    auto r_bp = [&](long group_bp, long group_nodes, long bp_total) {
        double bp_share = double(group_bp) / double(bp_total);
        double node_share = double(group_nodes) / double(total_nodes);
        return bp_share / node_share;
    };

    // shuffled baseline: permute the fail-minute multiset across failed
    // stocks; the before-peak total is invariant, membership is not
    std::vector<double> baseline_sum(size_t(g_count), 0.0);
    std::vector<long> shuffle_bp(size_t(g_count), 0L);
    std::vector<int> shuffled = minutes;
    for (int s = 0; s < shuffles; ++s) {
        Rng rng(seed + uint64_t(s));
        shuffled = minutes;
        rng.shuffle(shuffled);
        long total = 0;
        count_before_peak(shuffled, group_of, g_count, peaks.peaks, shuffle_bp, total);
        for (int g = 0; g < g_count; ++g)
            if (total > 0 && n_nodes[size_t(g)] > 0)
                baseline_sum[size_t(g)] += r_bp(shuffle_bp[size_t(g)], n_nodes[size_t(g)], total);
    }

    std::vector<BeforePeakScore> out;
    for (int g = 0; g < g_count; ++g) {
        if (n_nodes[size_t(g)] == 0) continue;
        BeforePeakScore sc;
        sc.group = group_labels[size_t(g)];
        sc.date = network.date;
        sc.n_bp_ij = n_bp[size_t(g)];
        sc.N_bp_j = total_bp;
        sc.R_bp = r_bp(n_bp[size_t(g)], n_nodes[size_t(g)], total_bp);
        sc.R_bpr = baseline_sum[size_t(g)] / double(shuffles);
        sc.S = sc.R_bp - sc.R_bpr;
        out.push_back(std::move(sc));
    }
    return out;
}

DistanceProfile distance_profile(std::span<const FailureEvent> events, const PeakSet& peaks,
                                 const IlliquidityNetwork& network, int bin_width) {
    if (bin_width < 1) throw ValidationError("distance_profile: bin_width must be >= 1");
    DistanceProfile out;
    out.date = network.date;
    if (peaks.peaks.empty()) return out;

    std::set<std::string> seen;
    std::map<int, int> bin_max;  // bin index -> max degree
    for (const auto& e : events) {
        if (!seen.insert(e.stock_id).second) continue;
        int idx = network.node_index(e.stock_id);
        if (idx < 0) continue;  // failed but absent from the network
        int peak = assign_peak(e.fail_minute, peaks.peaks);
        int dist = std::abs(e.fail_minute - peak);
        int deg = network.degree_at(idx);
        out.points.emplace_back(dist, deg);
        int bin = dist / bin_width;
        auto [it, inserted] = bin_max.try_emplace(bin, deg);
        if (!inserted) it->second = std::max(it->second, deg);
    }
    if (out.points.empty()) return out;

    std::vector<double> centers, log_max;
    bool constant_degree = true;
    for (const auto& [bin, deg] : bin_max) {
        double center = (double(bin) + 0.5) * double(bin_width);
        out.bins.emplace_back(center, deg);
        if (deg > 0) {
            if (!log_max.empty() && std::log(double(deg)) != log_max.back())
                constant_degree = false;
            centers.push_back(center);
            log_max.push_back(std::log(double(deg)));
        }
    }
    if (centers.size() >= 3 && !constant_degree) {
        try {
            PearsonResult pr = pearson(centers, log_max);
            out.r = pr.r;
            out.p_value = pr.p_value;
        } catch (const UndefinedStatError&) {
            // constant distances: r surfaces as absent
        }
    }
    return out;
}

}  // namespace illiqnet
