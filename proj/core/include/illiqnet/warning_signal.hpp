#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "illiqnet/cascade_analysis.hpp"
#include "illiqnet/dependency_network.hpp"

namespace illiqnet {

inline constexpr int kDefaultIntervalLen = 10;
inline constexpr int kDefaultSignalWindow = 5;

/// Non-randomness of simultaneous failures in one intraday interval:
///     w = e_nf / (n_f (n_f - 1) / 2)
/// n_f = distinct stocks newly failed in the interval, e_nf = edges among
/// them in that day's network. w is defined only when n_f >= 2, and is a
/// ratio of integer counts, so w == 0 tests are exact.
struct IntervalStat {
    int interval_index = 0;
    int n_f = 0;
    long e_nf = 0;
    std::optional<double> w;
};

/// Consecutive `interval_len`-minute blocks; 237 minutes leave a short final
/// block (7 minutes at the default length). Failed stocks absent from the
/// network still count in n_f.
std::vector<IntervalStat> interval_nonrandomness(std::span<const FailureEvent> events,
                                                 const IlliquidityNetwork& network,
                                                 int interval_len = kDefaultIntervalLen);

/// Mean over intervals with defined w; exactly 0 when no interval qualifies.
double daily_nonrandomness(std::span<const IntervalStat> stats);

/// Per-day signal state: N counts w_d == 0 over the window of t days ending
/// at this date; warn (N == 0) predicts a crash on the next trading day.
/// Days with fewer than t predecessors are warm-up: N and warn are absent.
struct SignalState {
    std::string date;
    double w_d = 0.0;
    std::optional<int> N;
    std::optional<bool> warn;
};

std::vector<SignalState> signal(std::span<const std::pair<std::string, double>> daily_w,
                                int t = kDefaultSignalWindow);

/// A warn on day d is a true positive iff the next trading day is a crash
/// day. Warm-up days and the final day (no next day) are not evaluable.
struct EvaluationReport {
    int t = 0;
    long tp = 0, fp = 0, fn = 0, tn = 0;
    std::optional<double> recall;     // tp / (tp + fn)
    std::optional<double> precision;  // tp / (tp + fp)
    std::vector<std::string> warned_dates;
};

EvaluationReport evaluate(std::span<const SignalState> states,
                          const std::map<std::string, bool>& crash_by_date, int t);

}  // namespace illiqnet
