#pragma once

#include <map>
#include <string>
#include <vector>

#include "illiqnet/types.hpp"

namespace illiqnet {

/// Synthetic market with planted ground truth: factor-coupled latent
/// illiquidity, a crash calendar, seeded cascades and pre-crash stress
/// windows, rendered down to 10-level quote snapshots.
struct SynthConfig {
    int n_stocks = 50;
    int n_days = 60;
    std::vector<int> crash_days;  // day indices
    uint64_t seed = 12345;

    // latent factor structure
    double base_coupling = 0.05;    // common-factor variance share, calm days
    double crash_coupling = 0.85;   // same, crash days; must exceed base
    double sector_coupling = 0.75;  // sector-factor variance share, calm days
    double crash_shift = 1.2;       // latent level shift on crash days

    // planted cascades
    double fail_frac = 0.45;        // stocks failing on a crash day
    std::string seed_group = "Financial";
    int stress_days = 5;            // pre-run days with clustered co-failures
    double stress_fail_frac = 0.12;
    double panic_intensity = 1.0;   // ask-volume growth during no-bid episodes

    std::vector<std::pair<std::string, double>> sectors = {
        {"Financial", 0.2},
        {"Manufacturing", 0.4},
        {"Information technology", 0.2},
        {"Real estate", 0.2},
    };

    int snapshot_rate = 3;  // snapshots per minute
    std::string start_date = "2015-01-05";

    void validate() const;  // throws ConfigError
};

enum class DayRegime { Calm, Stress, Crash };
const char* to_string(DayRegime r);

struct StockProfile {
    std::string id;
    std::string sector;
    std::string cap_style;
    double prev_close = 10.0;
    /// Planted connectivity in [0,1]-ish range; drives the common-factor
    /// loading on crash days and therefore realized degree.
    double core = 1.0;
};

struct DayPlan {
    std::string date;
    DayRegime regime = DayRegime::Calm;
    std::vector<int> fail_minute;  // per stock; -1 = no failure
    std::vector<int> episode_len;  // per stock; minutes of no-bid after failing
};

struct GroundTruth {
    SynthConfig config;
    std::vector<StockProfile> stocks;
    std::vector<DayPlan> days;

    std::vector<std::string> dates() const;
    /// Static per-stock metadata (same every day).
    std::map<std::string, StockMeta> stock_meta() const;
};

/// Deterministic plan: universe, calendar regimes, planted failure schedule.
/// Crash-day cascades run periphery -> core -> periphery: seed-group stocks
/// (lowest planted connectivity) fail early, the wave then stacks the
/// highest-connectivity stocks at the center minute and tapers outward.
GroundTruth plan_market(const SynthConfig& config);

/// Latent log-illiquidity paths for one day, [stock][minute]; exposed so the
/// factor model is testable without book rendering.
std::vector<std::vector<double>> latent_paths(const GroundTruth& gt, int day);

/// All snapshots for one day, grouped by stock in universe order, ts
/// ascending within each stock. Same seed, same bytes.
std::vector<QuoteSnapshot> generate_day(const GroundTruth& gt, int day);

/// Writes quotes/<date>.csv per day, meta.csv, and manifest.json under
/// out_dir. Day files are generated in parallel; contents are deterministic.
void write_market(const GroundTruth& gt, const std::string& out_dir,
                  const std::string& config_hash, int workers = 1);

}  // namespace illiqnet
