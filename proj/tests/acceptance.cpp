// Acceptance suite: one criterion per invocation (argv[1] = 1..10) or all in
// sequence. Prints exactly one [PASS]/[FAIL] line per criterion; exit status
// is the number of failed criteria.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "illiqnet/cascade_analysis.hpp"
#include "illiqnet/config.hpp"
#include "illiqnet/csv.hpp"
#include "illiqnet/dependency_network.hpp"
#include "illiqnet/illiquidity.hpp"
#include "illiqnet/market_data.hpp"
#include "illiqnet/network_dynamics.hpp"
#include "illiqnet/parallel.hpp"
#include "illiqnet/pipeline.hpp"
#include "illiqnet/rng.hpp"
#include "illiqnet/stats.hpp"
#include "illiqnet/synthetic_market.hpp"
#include "illiqnet/union_find.hpp"
#include "illiqnet/warning_signal.hpp"
#include "test_support.hpp"

using namespace illiqnet;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

QuoteSnapshot uniform_book(double ask, double ask_vol, double bid, double bid_vol, int levels,
                           double level_step = 0.0) {
    QuoteSnapshot s;
    s.stock_id = "T";
    for (int l = 0; l < levels; ++l) {
        s.ask_prices.push_back(ask + level_step * l);
        s.ask_volumes.push_back(ask_vol);
        s.bid_prices.push_back(bid - level_step * l);
        s.bid_volumes.push_back(bid_vol);
    }
    return s;
}

SynthConfig base_synth(uint64_t seed) {
    SynthConfig cfg;
    cfg.n_stocks = 50;
    cfg.n_days = 60;
    cfg.crash_days = {20, 21, 22, 40, 41, 42};
    cfg.seed = seed;
    cfg.snapshot_rate = 2;
    return cfg;
}

std::vector<IlliquiditySeries> day_series(const GroundTruth& gt, int day) {
    auto snaps = generate_day(gt, day);
    auto aggs = aggregate_day(snaps, 2);
    std::vector<IlliquiditySeries> series;
    series.reserve(aggs.size());
    for (const auto& a : aggs) series.push_back(to_series(a, gt.days[size_t(day)].date));
    return series;
}

DependencyMatrix day_matrix(const GroundTruth& gt, int day,
                            std::vector<IlliquiditySeries>* series_out = nullptr) {
    auto series = day_series(gt, day);
    std::vector<DiscreteSeries> discrete;
    discrete.reserve(series.size());
    for (const auto& s : series) discrete.push_back(discretize(impute_missing(s), kDefaultBins));
    auto matrix = pairwise_nmi(discrete, gt.days[size_t(day)].date, 2);
    if (series_out) *series_out = std::move(series);
    return matrix;
}

// --------------------------------------------------------------------------

bool criterion_1(std::string& detail) {
    auto t0 = Clock::now();
    // hand-derived book: 10 ask levels (10.01, 100), 10 bid levels (9.99, 100)
    QuoteSnapshot book = uniform_book(10.01, 100, 9.99, 100, 10);
    double i1 = compute_illiquidity(book);
    if (i1 != 2000.0) {
        detail = "uniform book gave " + std::to_string(i1) + ", want exactly 2000";
        return false;
    }
    // mirrored book: sum A V == sum B V
    QuoteSnapshot sym = uniform_book(10.0, 100, 10.0, 100, 10);
    if (compute_illiquidity(sym) != 0.0) {
        detail = "symmetric book nonzero";
        return false;
    }
    // scale equivariance over 1000 random books
    Rng rng(771);
    for (int trial = 0; trial < 1000; ++trial) {
        QuoteSnapshot s;
        int la = 1 + int(rng.next_below(10)), lb = 1 + int(rng.next_below(10));
        double mid = rng.uniform(5, 50), half = rng.uniform(0.01, 0.5);
        for (int l = 0; l < la; ++l) {
            s.ask_prices.push_back(mid + half + 0.01 * l);
            s.ask_volumes.push_back(std::floor(rng.uniform(1, 500)));
        }
        for (int l = 0; l < lb; ++l) {
            s.bid_prices.push_back(mid - half - 0.01 * l);
            s.bid_volumes.push_back(std::floor(rng.uniform(1, 500)));
        }
        double base = compute_illiquidity(s);
        double c = rng.uniform(0.5, 4.0);
        QuoteSnapshot priced = s, volumed = s;
        for (auto& p : priced.ask_prices) p *= c;
        for (auto& p : priced.bid_prices) p *= c;
        for (auto& v : volumed.ask_volumes) v *= c;
        for (auto& v : volumed.bid_volumes) v *= c;
        if (std::fabs(compute_illiquidity(priced) - base) > 1e-9 * std::fabs(base) + 1e-12) {
            detail = "price-scale equivariance violated at trial " + std::to_string(trial);
            return false;
        }
        if (std::fabs(compute_illiquidity(volumed) - c * base) >
            1e-9 * std::fabs(c * base) + 1e-12) {
            detail = "volume-scale linearity violated at trial " + std::to_string(trial);
            return false;
        }
    }
    double dt = seconds_since(t0);
    detail = "I=2000 exact, symmetric 0, 1000 scale trials in " + format_double(dt, 3) + "s";
    return dt < 1.0;
}

bool criterion_2(std::string& detail) {
    auto t0 = Clock::now();
    // exhaustive pairs over alphabet {0,1,2}, lengths 1..8
    size_t checked = 0;
    double worst = 0;
    for (int len = 1; len <= 8; ++len) {
        size_t count = 1;
        for (int i = 0; i < len; ++i) count *= 3;
        auto decode = [&](size_t code) {
            std::vector<uint8_t> s(size_t(len), 0);
            for (int i = 0; i < len; ++i) {
                s[size_t(i)] = uint8_t(code % 3);
                code /= 3;
            }
            return s;
        };
        std::vector<DiscreteSeries> all(count);
        for (size_t c = 0; c < count; ++c) all[c] = testsupport::make_discrete(decode(c), 3);

        std::atomic<long> bad{0};
        std::vector<double> worst_per(count, 0.0);
        parallel_for(count, 2, [&](size_t i) {
            for (size_t j = i; j < count; ++j) {
                double got = nmi(all[i], all[j]);
                double want = testsupport::nmi_oracle(all[i].symbols, all[j].symbols);
                double err = std::fabs(got - want);
                if (err > worst_per[i]) worst_per[i] = err;
                if (err > 1e-12) bad.fetch_add(1);
            }
        });
        for (double w : worst_per) worst = std::max(worst, w);
        checked += count * (count + 1) / 2;
        if (bad.load() > 0) {
            detail = "oracle mismatch at length " + std::to_string(len);
            return false;
        }
    }
    // self-NMI exactly 1 and alphabet-permutation invariance, random cases
    Rng rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<uint8_t> xs(237), ys(237);
        for (auto& v : xs) v = uint8_t(rng.next_below(16));
        for (auto& v : ys) v = uint8_t(rng.next_below(16));
        auto x = testsupport::make_discrete(xs, 16);
        auto y = testsupport::make_discrete(ys, 16);
        if (nmi(x, x) != 1.0) {
            detail = "self-NMI != 1";
            return false;
        }
        std::vector<uint8_t> perm(16);
        for (int i = 0; i < 16; ++i) perm[size_t(i)] = uint8_t(i);
        rng.shuffle(perm);
        auto relabeled = ys;
        for (auto& v : relabeled) v = perm[v];
        auto y2 = testsupport::make_discrete(relabeled, 16);
        if (std::fabs(nmi(x, y) - nmi(x, y2)) > 1e-12) {
            detail = "relabeling changed NMI by more than 1e-12";
            return false;
        }
    }
    std::ostringstream os;
    os << checked << " exhaustive pairs, max |err| " << worst << ", "
       << format_double(seconds_since(t0), 1) << "s";
    detail = os.str();
    return true;
}

bool criterion_3(std::string& detail) {
    auto t0 = Clock::now();
    // independent uniform series, n=237, B=16, 1000 trials
    Rng rng(909);
    double indep_sum = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> a(237), b(237);
        for (auto& v : a) v = rng.next_double();
        for (auto& v : b) v = rng.next_double();
        auto da = discretize(testsupport::series_from_values(a), 16);
        auto db = discretize(testsupport::series_from_values(b), 16);
        indep_sum += nmi(da, db);
    }
    double indep_mean = indep_sum / 1000.0;

    // factor-coupled pairs from the synthetic model at crash coupling 0.6
    SynthConfig cfg = base_synth(31);
    cfg.crash_days = {0};
    cfg.crash_coupling = 0.6;
    cfg.n_days = 1;
    GroundTruth gt = plan_market(cfg);
    auto latents = latent_paths(gt, 0);
    std::vector<DiscreteSeries> coupled;
    coupled.reserve(latents.size());
    for (const auto& path : latents)
        coupled.push_back(discretize(testsupport::series_from_values(path), 16));
    double coupled_sum = 0;
    long pairs = 0;
    for (size_t i = 0; i < coupled.size(); ++i)
        for (size_t j = i + 1; j < coupled.size(); ++j) {
            coupled_sum += nmi(coupled[i], coupled[j]);
            ++pairs;
        }
    double coupled_mean = coupled_sum / double(pairs);

    double dt = seconds_since(t0);
    std::ostringstream os;
    os << "independent mean " << format_double(indep_mean, 4) << " (< 0.25), coupled mean "
       << format_double(coupled_mean, 4) << ", " << format_double(dt, 1) << "s";
    detail = os.str();
    return indep_mean < 0.25 && indep_mean < coupled_mean && dt < 60.0;
}

bool criterion_4(std::string& detail) {
    // union-find vs BFS on 100 random graphs
    Rng rng(5150);
    for (int g = 0; g < 100; ++g) {
        int n = 2 + int(rng.next_below(499));
        double p = rng.uniform(0.0, 3.0 / double(n));
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.next_double() < p) edges.emplace_back(i, j);
        UnionFind uf(n);
        for (auto [a, b] : edges) uf.unite(a, b);
        if (uf.component_sizes() != testsupport::bfs_component_sizes(n, edges)) {
            detail = "component sizes differ from BFS oracle on graph " + std::to_string(g);
            return false;
        }
    }
    // GCC size non-increasing over a full threshold sweep
    const int n = 80;
    DependencyMatrix m;
    m.date = "2015-01-05";
    for (int i = 0; i < n; ++i) m.stocks.push_back("S" + std::to_string(i));
    m.tri.resize(size_t(n) * (n - 1) / 2);
    for (auto& v : m.tri) v = float(rng.next_double());
    auto curve = gcc_curve(m, 0.01, 100);
    for (size_t k = 1; k < curve.size(); ++k) {
        if (curve[k] > curve[k - 1]) {
            detail = "GCC size increased between candidates " + std::to_string(k - 1) + " and " +
                     std::to_string(k);
            return false;
        }
    }
    detail = "100 random graphs match BFS oracle; sweep monotone over 101 candidates";
    return true;
}

bool criterion_5(std::string& detail) {
    auto t0 = Clock::now();
    int good = 0;
    std::ostringstream os;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        GroundTruth gt = plan_market(base_synth(1000 + seed));
        double crash_mean = 0, calm_mean = 0, crash_std = 0, calm_std = 0;
        int n_crash = 0, n_calm = 0;
        for (int day = 0; day < gt.config.n_days; ++day) {
            NmiStats st = nmi_stats(day_matrix(gt, day));
            if (gt.days[size_t(day)].regime == DayRegime::Crash) {
                crash_mean += st.mean;
                crash_std += st.stddev;
                ++n_crash;
            } else {
                calm_mean += st.mean;
                calm_std += st.stddev;
                ++n_calm;
            }
        }
        crash_mean /= n_crash;
        crash_std /= n_crash;
        calm_mean /= n_calm;
        calm_std /= n_calm;
        bool ok = crash_mean > calm_mean && crash_std < calm_std;
        good += ok ? 1 : 0;
        if (seed == 0)
            os << "seed0: mean " << format_double(crash_mean, 3) << ">"
               << format_double(calm_mean, 3) << ", std " << format_double(crash_std, 4) << "<"
               << format_double(calm_std, 4) << "; ";
    }
    double dt = seconds_since(t0);
    os << good << "/10 seeds directional, " << format_double(dt, 1) << "s";
    detail = os.str();
    return good >= 9 && dt < 300.0;
}

bool criterion_6(std::string& detail) {
    // 5-node star, hub alone in its group
    IlliquidityNetwork star;
    star.date = "2015-01-05";
    star.nodes = {"H", "A", "B", "C", "D"};
    star.total_stocks = 5;
    for (int leaf = 1; leaf <= 4; ++leaf) star.edges.push_back({0, leaf, 0.5f});
    star.finalize();
    std::map<std::string, StockMeta> meta;
    for (const auto& id : star.nodes) {
        StockMeta m;
        m.stock_id = id;
        m.sector = id == "H" ? "Financial" : "Manufacturing";
        m.cap_style = "Mid-cap-balance";
        m.prev_close = 10;
        meta[id] = m;
    }
    auto scores = group_proportion(star, meta, Grouping::Sector);
    double r_hub = -1;
    for (const auto& s : scores)
        if (s.group == "Financial") r_hub = s.R;
    if (r_hub != 2.5) {
        detail = "star hub R = " + format_full(r_hub) + ", want exactly 2.5";
        return false;
    }

    // handshake conservation on every day of a generated market
    SynthConfig cfg = base_synth(77);
    cfg.n_stocks = 30;
    cfg.n_days = 12;
    cfg.crash_days = {8, 9};
    GroundTruth gt = plan_market(cfg);
    auto day_meta = gt.stock_meta();
    for (int day = 0; day < cfg.n_days; ++day) {
        auto matrix = day_matrix(gt, day);
        auto pick = select_threshold(matrix, 0.01);
        auto network = build_network(matrix, pick.threshold);
        for (Grouping grouping : {Grouping::Sector, Grouping::CapStyle}) {
            auto day_scores = group_proportion(network, day_meta, grouping);
            long sum_n = 0, n_j = -1;
            for (const auto& s : day_scores) {
                sum_n += s.n_ij;
                n_j = s.n_j;
            }
            if (sum_n != n_j || n_j != 2 * long(network.edges.size())) {
                detail = "handshake broken on day " + std::to_string(day) + ": sum n_ij " +
                         std::to_string(sum_n) + " vs 2|E| " +
                         std::to_string(2 * network.edges.size());
                return false;
            }
        }
    }
    detail = "star R = 2.5 exact; handshake holds on 12 generated days x 2 groupings";
    return true;
}

bool criterion_7(std::string& detail) {
    auto t0 = Clock::now();
    // (a) shuffle neutrality on randomized fail times, 50 seeds
    std::map<std::string, std::vector<double>> s_by_group;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(mix_seed(888, seed));
        const int n = 60;
        IlliquidityNetwork net;
        net.date = "2015-01-05";
        net.total_stocks = n;
        for (int i = 0; i < n; ++i) net.nodes.push_back("S" + std::to_string(i));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.next_double() < 0.1) net.edges.push_back({i, j, 0.5f});
        net.finalize();
        std::map<std::string, StockMeta> meta;
        const char* groups[3] = {"Financial", "Manufacturing", "Real estate"};
        for (int i = 0; i < n; ++i) {
            StockMeta m;
            m.stock_id = net.nodes[size_t(i)];
            m.sector = groups[rng.next_below(3)];
            m.cap_style = "Mid-cap-balance";
            m.prev_close = 10;
            meta[m.stock_id] = m;
        }
        // random failures in a mid-day block so at least one peak exists
        std::vector<FailureEvent> events;
        for (int i = 0; i < 40; ++i) {
            int minute = 100 + int(rng.next_below(41));
            events.push_back({net.nodes[size_t(i)], net.date, minute});
        }
        PeakSet peaks = detect_peaks(failure_counts(events), 10, 2);
        if (peaks.peaks.empty()) continue;
        for (const auto& sc :
             before_peak_score(events, peaks, net, meta, Grouping::Sector, 100, seed))
            s_by_group[sc.group].push_back(sc.S);
    }
    for (const auto& [group, values] : s_by_group) {
        if (values.size() < 10) continue;
        double m = mean(values);
        double se = stddev_pop(values) / std::sqrt(double(values.size()));
        if (std::fabs(m) > 3 * se && std::fabs(m) > 1e-9) {
            detail = "group " + group + " mean S " + format_full(m) + " exceeds 3 SE " +
                     format_full(3 * se);
            return false;
        }
    }

    // (b) planted seed-group cascades: S_seedgroup > 0 on >= 9/10 seeds
    int positive = 0;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        GroundTruth gt = plan_market(base_synth(2000 + seed));
        int crash_day = gt.config.crash_days.front();
        std::vector<IlliquiditySeries> series;
        auto matrix = day_matrix(gt, crash_day, &series);
        auto network = build_network(matrix, select_threshold(matrix, 0.01).threshold);
        auto meta = gt.stock_meta();
        std::vector<FailureEvent> events;
        for (const auto& s : series)
            if (auto ev = detect_failures(s, meta.at(s.stock_id))) events.push_back(*ev);
        PeakSet peaks = detect_peaks(failure_counts(events), 10, 3);
        auto scores = before_peak_score(events, peaks, network, meta, Grouping::Sector, 100,
                                        mix_seed(seed, 7));
        for (const auto& sc : scores)
            if (sc.group == gt.config.seed_group && sc.S > 0) ++positive;
    }
    double dt = seconds_since(t0);
    std::ostringstream os;
    os << "neutral within 3 SE over 50 seeds; planted S_seedgroup > 0 in " << positive
       << "/10 seeds, " << format_double(dt, 1) << "s";
    detail = os.str();
    return positive >= 9;
}

bool criterion_8(std::string& detail) {
    auto t0 = Clock::now();
    int negative = 0;
    double r0 = 0;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        GroundTruth gt = plan_market(base_synth(3000 + seed));
        int crash_day = gt.config.crash_days.front();
        std::vector<IlliquiditySeries> series;
        auto matrix = day_matrix(gt, crash_day, &series);
        auto network = build_network(matrix, select_threshold(matrix, 0.01).threshold);
        auto meta = gt.stock_meta();
        std::vector<FailureEvent> events;
        for (const auto& s : series)
            if (auto ev = detect_failures(s, meta.at(s.stock_id))) events.push_back(*ev);
        PeakSet peaks = detect_peaks(failure_counts(events), 10, 3);
        DistanceProfile profile = distance_profile(events, peaks, network);
        if (profile.r && *profile.r < 0) ++negative;
        if (seed == 0 && profile.r) r0 = *profile.r;
    }
    std::ostringstream os;
    os << "binned log-max-degree vs |distance| r < 0 in " << negative << "/10 seeds (seed0 r="
       << format_double(r0, 3) << "), " << format_double(seconds_since(t0), 1) << "s";
    detail = os.str();
    return negative >= 9;
}

bool criterion_9(std::string& detail) {
    auto t0 = Clock::now();
    // exact-zero property: w is a ratio of integer counts
    {
        IlliquidityNetwork net;
        net.date = "2015-01-05";
        net.nodes = {"A", "B", "C"};
        net.total_stocks = 3;
        net.edges.push_back({0, 1, 0.9f});
        net.finalize();
        std::vector<FailureEvent> ev = {{"A", net.date, 5}, {"C", net.date, 7}};
        auto stats = interval_nonrandomness(ev, net, 10);
        if (!stats[0].w || *stats[0].w != 0.0) {
            detail = "disconnected co-failures must give w exactly 0";
            return false;
        }
        if (daily_nonrandomness(stats) != 0.0) {
            detail = "w_d of exact zeros must be exactly 0";
            return false;
        }
    }

    // end-to-end pipeline on disk with planted consecutive crash runs
    PipelineConfig cfg;
    cfg.synth = base_synth(4100);
    cfg.seed = 4100;
    cfg.synth.seed = 4100;
    cfg.crash_threshold = 12;
    cfg.peak_min_height = 3;
    cfg.workers = 2;
    fs::path dir = fs::temp_directory_path() / "illiqnet_acceptance_9";
    fs::remove_all(dir);
    cfg.out = dir.string();
    Pipeline pipe(cfg);
    pipe.synth();
    pipe.illiq();
    pipe.net();
    pipe.cascade();
    pipe.warn();
    pipe.evaluate();

    std::ifstream eval_in(dir / "signal" / "evaluation.json");
    nlohmann::json eval;
    eval_in >> eval;
    if (eval.at("sweep").size() != 15) {
        detail = "t-sweep must cover t=1..15";
        return false;
    }
    double recall = -1;
    for (const auto& entry : eval.at("sweep"))
        if (entry.at("t").get<int>() == 5 && !entry.at("recall").is_null())
            recall = entry.at("recall").get<double>();
    fs::remove_all(dir);
    std::ostringstream os;
    os << "next-day recall at t=5: " << format_double(recall, 3) << " (need >= 0.5), sweep 1..15 "
       << "produced, w_d zero-test exact, " << format_double(seconds_since(t0), 1) << "s";
    detail = os.str();
    return recall >= 0.5;
}

bool criterion_10(std::string& detail) {
    const int n = 2500;
    Rng rng(606);
    std::vector<DiscreteSeries> series(size_t(n), DiscreteSeries{});
    for (int i = 0; i < n; ++i) {
        std::vector<uint8_t> symbols(237);
        for (auto& s : symbols) s = uint8_t(rng.next_below(16));
        series[size_t(i)] =
            testsupport::make_discrete(std::move(symbols), 16, "S" + std::to_string(i));
    }
    int hw = effective_workers(0);

    auto t0 = Clock::now();
    auto m1 = pairwise_nmi(series, "2015-06-26", 1);
    double t_serial = seconds_since(t0);

    t0 = Clock::now();
    auto m8 = pairwise_nmi(series, "2015-06-26", 8);
    double t_multi8 = seconds_since(t0);

    t0 = Clock::now();
    auto m2 = pairwise_nmi(series, "2015-06-26", 2);
    double t_multi2 = seconds_since(t0);

    if (m1.pair_count() != size_t(n) * (n - 1) / 2) {
        detail = "pair count mismatch";
        return false;
    }
    bool identical =
        std::memcmp(m1.tri.data(), m8.tri.data(), m1.tri.size() * sizeof(float)) == 0 &&
        std::memcmp(m1.tri.data(), m2.tri.data(), m1.tri.size() * sizeof(float)) == 0;
    double speedup = t_serial / std::min(t_multi8, t_multi2);

    std::ostringstream os;
    os << m1.pair_count() << " pairs: serial " << format_double(t_serial, 2) << "s, 2w "
       << format_double(t_multi2, 2) << "s, 8w " << format_double(t_multi8, 2) << "s (hw=" << hw
       << "), speedup x" << format_double(speedup, 2)
       << ", bit-identical=" << (identical ? "yes" : "NO");
    detail = os.str();

    bool fast_enough = t_multi8 < 300.0;
    // near-linear scaling, judged against the cores this host actually has
    double expected = 0.6 * double(std::min(8, hw));
    bool scales = hw < 2 || speedup >= std::max(1.2, expected);
    return identical && fast_enough && scales;
}

struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "Eq-1 exactness and scale equivariance", criterion_1},
        {2, "NMI oracle equivalence (exhaustive len<=8 over {0,1,2})", criterion_2},
        {3, "plug-in estimator bias bound vs factor-coupled pairs", criterion_3},
        {4, "union-find vs BFS oracle; GCC sweep monotone", criterion_4},
        {5, "crash days: NMI mean up, std down (10 seeds)", criterion_5},
        {6, "degree-weighted proportion hand case + handshake", criterion_6},
        {7, "before-peak shuffle neutrality + planted seed group", criterion_7},
        {8, "degree vs peak-distance negative correlation", criterion_8},
        {9, "warning-signal recall >= 0.5 at t=5, t-sweep, exact zeros", criterion_9},
        {10, "pairwise NMI at 2500 stocks: speed, scaling, determinism", criterion_10},
    };

    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    detail.c_str());
        failures += ok ? 0 : 1;
    }
    return failures;
}
