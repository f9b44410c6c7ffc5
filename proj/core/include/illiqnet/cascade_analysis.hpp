#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "illiqnet/dependency_network.hpp"
#include "illiqnet/network_dynamics.hpp"
#include "illiqnet/types.hpp"

namespace illiqnet {

inline constexpr int kDefaultCrashThreshold = 800;
inline constexpr int kDefaultPeakWindow = 10;
inline constexpr int kDefaultPeakMinHeight = 5;
inline constexpr int kDefaultShuffles = 100;
inline constexpr double kLimitTolerance = 0.005;  // absorbs tick rounding

/// First minute a stock sits at its down limit; at most one per stock-day.
struct FailureEvent {
    std::string stock_id;
    std::string date;
    int fail_minute = 0;
};

/// Failure = (no bid and best ask <= limit + tol) or (mid <= limit + tol),
/// evaluated per minute slot on the raw (non-imputed) series.
std::optional<FailureEvent> detect_failures(const IlliquiditySeries& series,
                                            const StockMeta& meta);

struct CrashCalendarEntry {
    std::string date;
    int failed_count = 0;
    bool crash = false;  // strictly more than `threshold` distinct failed stocks
};

/// Labels every date in `dates`; dates without events count zero failures.
std::vector<CrashCalendarEntry> crash_days(
    const std::map<std::string, std::vector<FailureEvent>>& events_by_date,
    std::span<const std::string> dates, int threshold = kDefaultCrashThreshold);

/// Per-minute newly-failed counts for one day.
std::vector<int> failure_counts(std::span<const FailureEvent> events);

struct PeakSet {
    std::string date;
    std::vector<int> peaks;   // ascending minute indices
    std::vector<int> counts;  // kMinutesPerDay entries
};

/// Minute m is a peak iff counts[m] >= min_height and it strictly exceeds
/// every earlier minute and ties-or-exceeds every later minute within
/// +-window (so the earlier minute wins a tie and no two peaks can sit
/// within one window of each other).
PeakSet detect_peaks(std::span<const int> counts, int window = kDefaultPeakWindow,
                     int min_height = kDefaultPeakMinHeight);

/// Peak assigned to a failure: nearest in absolute time, ties to the earlier
/// peak. Returns -1 when `peaks` is empty.
int assign_peak(int minute, std::span<const int> peaks);

/// Before-peak seeding significance for one group on one day:
///     R_bp  = (n_bp_ij / N_bp_j) / (N_ij / N_j)
///     S     = R_bp - R_bpr
/// R_bpr is the mean R_bp after repeatedly permuting the day's fail minutes
/// across its failed stocks (shuffle s uses seed + s).
struct BeforePeakScore {
    std::string group;
    std::string date;
    double R_bp = 0.0;
    double R_bpr = 0.0;
    double S = 0.0;
    long n_bp_ij = 0;
    long N_bp_j = 0;
};

std::vector<BeforePeakScore> before_peak_score(std::span<const FailureEvent> events,
                                               const PeakSet& peaks,
                                               const IlliquidityNetwork& network,
                                               const std::map<std::string, StockMeta>& meta,
                                               Grouping grouping,
                                               int shuffles = kDefaultShuffles,
                                               uint64_t seed = 0);

/// Degree vs |fail minute - assigned peak| for failed stocks present in the
/// network; max degree per distance bin; r = pearson(bin centers, log max
/// degree). r is absent when fewer than 3 bins or variance vanishes.
struct DistanceProfile {
    std::string date;
    std::vector<std::pair<int, int>> points;        // (abs distance, degree)
    std::vector<std::pair<double, int>> bins;       // (bin center, max degree)
    std::optional<double> r;
    std::optional<double> p_value;
};

DistanceProfile distance_profile(std::span<const FailureEvent> events, const PeakSet& peaks,
                                 const IlliquidityNetwork& network, int bin_width = 5);

}  // namespace illiqnet
