#include <doctest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "illiqnet/cascade_analysis.hpp"
#include "illiqnet/dependency_network.hpp"
#include "illiqnet/errors.hpp"
#include "illiqnet/illiquidity.hpp"
#include "illiqnet/market_data.hpp"
#include "illiqnet/synthetic_market.hpp"
#include "test_support.hpp"

using namespace illiqnet;

namespace {

SynthConfig small_config(uint64_t seed = 99) {
    SynthConfig cfg;
    cfg.n_stocks = 24;
    cfg.n_days = 14;
    cfg.crash_days = {8, 9};
    cfg.seed = seed;
    cfg.snapshot_rate = 2;
    return cfg;
}

std::vector<IlliquiditySeries> render_day(const GroundTruth& gt, int day) {
    auto snaps = generate_day(gt, day);
    auto aggs = aggregate_day(snaps, 1);
    std::vector<IlliquiditySeries> out;
    for (const auto& a : aggs) out.push_back(to_series(a, gt.days[size_t(day)].date));
    return out;
}

}  // namespace

TEST_CASE("config validation rejects inconsistent setups") {
    SynthConfig cfg = small_config();
    cfg.crash_coupling = cfg.base_coupling;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.sectors = {{"Financial", 0.5}, {"Manufacturing", 0.4}};  // sums to 0.9
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.sectors = {{"Banking", 1.0}};  // not a Table-style label
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.seed_group = "Retailing";  // not among the configured sectors
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = small_config();
    cfg.crash_days = {99};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("same seed produces byte-identical quote streams") {
    auto gt1 = plan_market(small_config(7));
    auto gt2 = plan_market(small_config(7));
    for (int day : {0, 8}) {
        std::ostringstream a, b;
        write_quotes_csv(a, generate_day(gt1, day));
        write_quotes_csv(b, generate_day(gt2, day));
        CHECK(a.str() == b.str());
    }
    auto gt3 = plan_market(small_config(8));
    std::ostringstream c;
    write_quotes_csv(c, generate_day(gt3, 0));
    std::ostringstream a0;
    write_quotes_csv(a0, generate_day(gt1, 0));
    CHECK(a0.str() != c.str());
}

TEST_CASE("the parser accepts every generated row") {
    auto gt = plan_market(small_config());
    for (int day : {0, 5, 8}) {  // calm, stress, crash
        auto snaps = generate_day(gt, day);
        std::ostringstream out;
        write_quotes_csv(out, snaps);
        std::istringstream in(out.str());
        auto parsed = parse_quotes(in);
        CHECK(parsed.rejected.empty());
        CHECK(parsed.snapshots.size() == snaps.size());
        CHECK(parsed.total_rows == long(snaps.size()));
    }
}

TEST_CASE("planted failure minutes match detection exactly") {
    auto gt = plan_market(small_config());
    auto meta = gt.stock_meta();
    for (int day = 0; day < gt.config.n_days; ++day) {
        auto series = render_day(gt, day);
        std::map<std::string, int> detected;
        for (const auto& s : series)
            if (auto ev = detect_failures(s, meta.at(s.stock_id)))
                detected[ev->stock_id] = ev->fail_minute;

        const DayPlan& plan = gt.days[size_t(day)];
        std::map<std::string, int> planted;
        for (size_t i = 0; i < plan.fail_minute.size(); ++i)
            if (plan.fail_minute[i] >= 0) planted[gt.stocks[i].id] = plan.fail_minute[i];
        CHECK(detected == planted);
    }
}

TEST_CASE("a market without crash days detects none") {
    SynthConfig cfg = small_config();
    cfg.crash_days = {};
    auto gt = plan_market(cfg);
    auto meta = gt.stock_meta();
    std::map<std::string, std::vector<FailureEvent>> events;
    for (int day = 0; day < cfg.n_days; ++day) {
        for (const auto& s : render_day(gt, day))
            if (auto ev = detect_failures(s, meta.at(s.stock_id)))
                events[ev->date].push_back(*ev);
    }
    auto dates = gt.dates();
    int threshold = int(0.3 * cfg.n_stocks);
    for (const auto& entry : crash_days(events, dates, threshold)) CHECK_FALSE(entry.crash);
}

TEST_CASE("crash-day regimes fail more stocks than the scaled threshold") {
    auto gt = plan_market(small_config());
    auto meta = gt.stock_meta();
    std::map<std::string, std::vector<FailureEvent>> events;
    for (int day = 0; day < gt.config.n_days; ++day)
        for (const auto& s : render_day(gt, day))
            if (auto ev = detect_failures(s, meta.at(s.stock_id)))
                events[ev->date].push_back(*ev);
    auto dates = gt.dates();
    auto calendar = crash_days(events, dates, int(0.3 * gt.config.n_stocks));
    for (int day = 0; day < gt.config.n_days; ++day) {
        bool planted_crash = gt.days[size_t(day)].regime == DayRegime::Crash;
        CHECK(calendar[size_t(day)].crash == planted_crash);
    }
}

TEST_CASE("episode duration and max ask volume are positively rank-correlated") {
    auto gt = plan_market(small_config());
    std::vector<double> durations, volumes;
    for (int day : gt.config.crash_days) {
        for (const auto& s : render_day(gt, day)) {
            for (const auto& ep : no_bid_episodes(s)) {
                durations.push_back(double(ep.duration_minutes));
                volumes.push_back(ep.max_ask_volume);
            }
        }
    }
    REQUIRE(durations.size() >= 10);
    CHECK(testsupport::spearman(durations, volumes) > 0);
}

TEST_CASE("max ask volume is nondecreasing in panic intensity") {
    SynthConfig low = small_config();
    low.panic_intensity = 0.5;
    SynthConfig high = small_config();
    high.panic_intensity = 2.0;
    auto gt_low = plan_market(low);
    auto gt_high = plan_market(high);
    int day = low.crash_days[0];
    auto lo_series = render_day(gt_low, day);
    auto hi_series = render_day(gt_high, day);
    REQUIRE(lo_series.size() == hi_series.size());
    int compared = 0;
    for (size_t i = 0; i < lo_series.size(); ++i) {
        auto lo_eps = no_bid_episodes(lo_series[i]);
        auto hi_eps = no_bid_episodes(hi_series[i]);
        REQUIRE(lo_eps.size() == hi_eps.size());  // schedule is intensity-independent
        for (size_t e = 0; e < lo_eps.size(); ++e) {
            CHECK(hi_eps[e].max_ask_volume >= lo_eps[e].max_ask_volume);
            ++compared;
        }
    }
    CHECK(compared > 0);
}

TEST_CASE("daily market illiquidity rises on crash days") {
    auto gt = plan_market(small_config());
    auto calm = render_day(gt, 0);
    auto crash = render_day(gt, 8);
    CHECK(daily_market_illiquidity(crash) > daily_market_illiquidity(calm));
}

TEST_CASE("stronger crash coupling raises the selected threshold") {
    double sum_low = 0, sum_high = 0;
    const int seeds = 10;
    for (uint64_t seed = 0; seed < seeds; ++seed) {
        for (double coupling : {0.5, 0.85}) {
            SynthConfig cfg = small_config(500 + seed);
            cfg.crash_coupling = coupling;
            cfg.crash_days = {8};
            cfg.n_days = 9;
            auto gt = plan_market(cfg);
            auto series = render_day(gt, 8);
            std::vector<DiscreteSeries> discrete;
            for (const auto& s : series)
                discrete.push_back(discretize(impute_missing(s), kDefaultBins));
            auto matrix = pairwise_nmi(discrete, "d", 2);
            double thr = select_threshold(matrix, 0.01).threshold;
            (coupling < 0.6 ? sum_low : sum_high) += thr;
        }
    }
    CHECK(sum_high / seeds > sum_low / seeds);
}

TEST_CASE("sector allocation follows the configured fractions") {
    SynthConfig cfg = small_config();
    cfg.n_stocks = 50;
    auto gt = plan_market(cfg);
    std::map<std::string, int> counts;
    for (const auto& s : gt.stocks) ++counts[s.sector];
    CHECK(counts["Financial"] == 10);
    CHECK(counts["Manufacturing"] == 20);
    CHECK(counts["Information technology"] == 10);
    CHECK(counts["Real estate"] == 10);
    // seed group occupies the bottom of the planted-connectivity range
    double max_seed_core = 0, min_other_core = 1;
    for (const auto& s : gt.stocks) {
        if (s.sector == cfg.seed_group)
            max_seed_core = std::max(max_seed_core, s.core);
        else
            min_other_core = std::min(min_other_core, s.core);
    }
    CHECK(max_seed_core <= min_other_core);
}

TEST_CASE("stress days precede each crash run") {
    SynthConfig cfg = small_config();
    cfg.n_days = 30;
    cfg.crash_days = {10, 11, 20};
    cfg.stress_days = 3;
    auto gt = plan_market(cfg);
    std::set<int> stress;
    for (int d = 0; d < cfg.n_days; ++d)
        if (gt.days[size_t(d)].regime == DayRegime::Stress) stress.insert(d);
    CHECK(stress == std::set<int>{7, 8, 9, 17, 18, 19});
    // stress failures stay well under the crash threshold
    for (int d : stress) {
        int failing = 0;
        for (int f : gt.days[size_t(d)].fail_minute) failing += f >= 0 ? 1 : 0;
        CHECK(failing >= 2);
        CHECK(failing < int(0.3 * cfg.n_stocks));
    }
}

TEST_CASE("write_market emits quotes per day plus metadata and manifest") {
    namespace fs = std::filesystem;
    SynthConfig cfg = small_config();
    cfg.n_days = 3;
    cfg.crash_days = {};
    auto gt = plan_market(cfg);
    fs::path dir = fs::temp_directory_path() / "illiqnet_test_write_market";
    fs::remove_all(dir);
    write_market(gt, dir.string(), "abcd", 2);
    CHECK(fs::exists(dir / "meta.csv"));
    CHECK(fs::exists(dir / "manifest.json"));
    int day_files = 0;
    for (const auto& e : fs::directory_iterator(dir / "quotes")) {
        (void)e;
        ++day_files;
    }
    CHECK(day_files == 3);
    fs::remove_all(dir);
}
