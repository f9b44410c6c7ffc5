#include "illiqnet/synthetic_market.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "illiqnet/dates.hpp"
#include "illiqnet/errors.hpp"
#include "illiqnet/market_data.hpp"
#include "illiqnet/parallel.hpp"
#include "illiqnet/rng.hpp"

namespace illiqnet {

namespace {

// purpose tags for stream derivation
constexpr uint64_t kTagUniverse = 0xA1;
constexpr uint64_t kTagCommon = 0xA2;
constexpr uint64_t kTagSector = 0xA3;
constexpr uint64_t kTagIdio = 0xA4;
constexpr uint64_t kTagBook = 0xA5;
constexpr uint64_t kTagSchedule = 0xA6;

// book rendering
constexpr double kBaseVolume = 100.0;
constexpr double kBaseHalfSpread = 0.03;
constexpr double kSpreadSensitivity = 1.0;  // half-spread = base * exp(sens * z)
constexpr double kLatentClampLo = -4.0, kLatentClampHi = 5.0;

// cascade wave: failures stack on minutes kWaveCenter + 4k, Gaussian-tapered
constexpr int kWaveCenter = 120;
constexpr int kWaveBucketSpacing = 4;
constexpr int kWaveBuckets = 3;  // offsets -3..3 in bucket units
constexpr int kSeedFailStart = 30, kSeedFailSpan = 26;
constexpr int kStressFailMinute = 100;

// planted connectivity range; seed-group stocks sit at the bottom. The range
// is kept narrow so crash-day dependencies stay homogeneous (low NMI std)
// while the rank ordering still shapes realized degrees.
constexpr double kCoreMin = 0.90;
constexpr double kSeedCoreBand = 0.15;  // seeds occupy the lowest 15% of the range

double tick(double price) { return std::floor(price * 100.0 + 0.5) / 100.0; }

}  // namespace

const char* to_string(DayRegime r) {
    switch (r) {
        case DayRegime::Calm: return "calm";
        case DayRegime::Stress: return "stress";
        case DayRegime::Crash: return "crash";
    }
    return "?";
}

void SynthConfig::validate() const {
    if (n_stocks < 4) throw ConfigError("synth: need at least 4 stocks");
    if (n_days < 1) throw ConfigError("synth: need at least 1 day");
    if (!(crash_coupling > base_coupling))
        throw ConfigError("synth: crash_coupling must exceed base_coupling");
    if (base_coupling < 0 || crash_coupling >= 1)
        throw ConfigError("synth: couplings must lie in [0, 1)");
    if (sector_coupling < 0 || sector_coupling >= 1)
        throw ConfigError("synth: sector_coupling must lie in [0, 1)");
    if (fail_frac <= 0 || fail_frac > 1) throw ConfigError("synth: fail_frac must be in (0, 1]");
    if (stress_fail_frac < 0 || stress_fail_frac > 0.5)
        throw ConfigError("synth: stress_fail_frac must be in [0, 0.5]");
    if (snapshot_rate < 1 || snapshot_rate > 60)
        throw ConfigError("synth: snapshot_rate must be in [1, 60]");
    if (sectors.empty()) throw ConfigError("synth: sectors must not be empty");
    double total = 0;
    bool has_seed_group = false;
    for (const auto& [label, frac] : sectors) {
        if (!is_valid_sector(label)) throw ConfigError("synth: unknown sector '" + label + "'");
        if (frac <= 0) throw ConfigError("synth: sector fractions must be positive");
        total += frac;
        if (label == seed_group) has_seed_group = true;
    }
    if (std::fabs(total - 1.0) > 1e-9) throw ConfigError("synth: sector fractions must sum to 1");
    if (!has_seed_group) throw ConfigError("synth: seed_group must be one of the sectors");
    for (int d : crash_days)
        if (d < 0 || d >= n_days) throw ConfigError("synth: crash day index out of range");
    if (!is_valid_date(start_date)) throw ConfigError("synth: bad start_date");
}

std::vector<std::string> GroundTruth::dates() const {
    std::vector<std::string> out;
    out.reserve(days.size());
    for (const auto& d : days) out.push_back(d.date);
    return out;
}

std::map<std::string, StockMeta> GroundTruth::stock_meta() const {
    std::map<std::string, StockMeta> out;
    for (const auto& s : stocks) {
        StockMeta m;
        m.stock_id = s.id;
        m.sector = s.sector;
        m.cap_style = s.cap_style;
        m.prev_close = s.prev_close;
        m.limit_ratio = 0.10;
        m.down_limit_price = down_limit_price(m.prev_close, m.limit_ratio);
        out[s.id] = std::move(m);
    }
    return out;
}

namespace {

std::vector<int> sector_allocation(const SynthConfig& c) {
    // largest-remainder allocation of n_stocks over sector fractions
    std::vector<int> counts(c.sectors.size(), 0);
    std::vector<std::pair<double, size_t>> rema;
    int assigned = 0;
    for (size_t g = 0; g < c.sectors.size(); ++g) {
        double exact = c.sectors[g].second * c.n_stocks;
        counts[g] = int(exact);
        assigned += counts[g];
        rema.emplace_back(exact - double(counts[g]), g);
    }
    std::sort(rema.rbegin(), rema.rend());
    for (int k = 0; assigned < c.n_stocks; ++k, ++assigned) ++counts[rema[size_t(k)].second];
    return counts;
}

}  // namespace

GroundTruth plan_market(const SynthConfig& config) {
    config.validate();
    GroundTruth gt;
    gt.config = config;
    const int n = config.n_stocks;

    // universe
    Rng rng(mix_seed(config.seed, kTagUniverse));
    auto counts = sector_allocation(config);
    std::vector<int> sector_of;
    for (size_t g = 0; g < counts.size(); ++g)
        sector_of.insert(sector_of.end(), size_t(counts[g]), int(g));
    rng.shuffle(sector_of);

    int seed_sector = -1;
    for (size_t g = 0; g < config.sectors.size(); ++g)
        if (config.sectors[g].first == config.seed_group) seed_sector = int(g);

    // core scores: seed group pinned to the bottom band, everyone else spread
    // evenly above it (in shuffled order so rank is not tied to the id)
    std::vector<int> non_seed;
    std::vector<int> seeds;
    for (int i = 0; i < n; ++i)
        (sector_of[size_t(i)] == seed_sector ? seeds : non_seed).push_back(i);
    std::vector<double> core(size_t(n), kCoreMin);
    for (size_t k = 0; k < seeds.size(); ++k)
        core[size_t(seeds[k])] =
            kCoreMin + kSeedCoreBand * (1.0 - kCoreMin) * (double(k) / std::max<size_t>(1, seeds.size() - 1));
    std::vector<int> order = non_seed;
    rng.shuffle(order);
    double lo = kCoreMin + kSeedCoreBand * (1.0 - kCoreMin);
    for (size_t k = 0; k < order.size(); ++k)
        core[size_t(order[k])] =
            lo + (1.0 - lo) * (double(k) / std::max<size_t>(1, order.size() - 1));

    const auto& styles = cap_style_labels();
    gt.stocks.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
        StockProfile p;
        char buf[16];
        std::snprintf(buf, sizeof buf, "S%04d", i);
        p.id = buf;
        p.sector = config.sectors[size_t(sector_of[size_t(i)])].first;
        p.cap_style = styles[rng.next_below(styles.size())];
        p.prev_close = 8.0 + double(i % 21) * 0.2;
        p.core = core[size_t(i)];
        gt.stocks.push_back(std::move(p));
    }

    // calendar: crash set plus stress windows before each run start
    std::set<int> crash(config.crash_days.begin(), config.crash_days.end());
    std::set<int> stress;
    for (int d : crash) {
        if (crash.count(d - 1)) continue;  // not a run start
        for (int k = 1; k <= config.stress_days; ++k) {
            int s = d - k;
            if (s >= 0 && !crash.count(s)) stress.insert(s);
        }
    }

    auto dates = weekday_sequence(config.start_date, config.n_days);
    gt.days.resize(size_t(config.n_days));
    for (int d = 0; d < config.n_days; ++d) {
        DayPlan& plan = gt.days[size_t(d)];
        plan.date = dates[size_t(d)];
        plan.regime = crash.count(d)   ? DayRegime::Crash
                      : stress.count(d) ? DayRegime::Stress
                                        : DayRegime::Calm;
        plan.fail_minute.assign(size_t(n), -1);
        plan.episode_len.assign(size_t(n), 0);

        Rng day_rng(mix_seed(config.seed, uint64_t(d), kTagSchedule));
        if (plan.regime == DayRegime::Crash) {
            // seeds fail early, spread over a fixed span
            for (size_t k = 0; k < seeds.size(); ++k)
                plan.fail_minute[size_t(seeds[k])] =
                    kSeedFailStart + int(size_t(kSeedFailSpan) * k / std::max<size_t>(1, seeds.size()));

            // wave: random non-seed subset, highest core at the center minute
            int target = int(std::lround(config.fail_frac * n));
            int wave_n = std::max(0, target - int(seeds.size()));
            std::vector<int> pool = non_seed;
            day_rng.shuffle(pool);
            pool.resize(std::min(pool.size(), size_t(wave_n)));
            std::sort(pool.begin(), pool.end(),
                      [&](int a, int b) { return core[size_t(a)] > core[size_t(b)]; });

            // bucket counts: Gaussian taper, center forced to a strict max
            const int nb = 2 * kWaveBuckets + 1;
            std::vector<double> weight(size_t(nb), 0.0);
            double wsum = 0;
            for (int b = -kWaveBuckets; b <= kWaveBuckets; ++b) {
                weight[size_t(b + kWaveBuckets)] = std::exp(-double(b * b) / (2.0 * 1.44));
                wsum += weight[size_t(b + kWaveBuckets)];
            }
            std::vector<int> bucket_count(size_t(nb), 0);
            int left = int(pool.size());
            for (int b = 0; b < nb; ++b) {
                bucket_count[size_t(b)] =
                    std::min(left, int(std::lround(weight[size_t(b)] / wsum * double(pool.size()))));
                left -= bucket_count[size_t(b)];
            }
            bucket_count[size_t(kWaveBuckets)] += left;  // remainder stacks on the center

            // assign stocks to buckets, nearest-to-center first
            std::vector<int> bucket_order;
            bucket_order.push_back(0);
            for (int b = 1; b <= kWaveBuckets; ++b) {
                bucket_order.push_back(b);
                bucket_order.push_back(-b);
            }
            size_t next_stock = 0;
            for (int off : bucket_order) {
                int cnt = bucket_count[size_t(off + kWaveBuckets)];
                for (int c = 0; c < cnt && next_stock < pool.size(); ++c, ++next_stock)
                    plan.fail_minute[size_t(pool[next_stock])] =
                        kWaveCenter + off * kWaveBucketSpacing;
            }
        } else if (plan.regime == DayRegime::Stress) {
            // a few seed-group stocks co-fail inside one interval
            int target = std::max(2, int(std::lround(config.stress_fail_frac * n)));
            target = std::min(target, int(seeds.size()));
            size_t start = seeds.empty() ? 0 : size_t(d * 3) % seeds.size();
            for (int k = 0; k < target; ++k) {
                int stock = seeds[(start + size_t(k)) % seeds.size()];
                plan.fail_minute[size_t(stock)] = kStressFailMinute + k;
            }
        }

        for (int i = 0; i < n; ++i)
            if (plan.fail_minute[size_t(i)] >= 0)
                plan.episode_len[size_t(i)] = 6 + int(day_rng.next_below(9));  // 6..14 minutes
    }
    return gt;
}

namespace {

struct FactorLoadings {
    double a, b, e;  // common, sector, idiosyncratic; a^2+b^2+e^2 = 1
};

FactorLoadings loadings(const SynthConfig& c, double core, bool crash) {
    double a2 = (crash ? c.crash_coupling : c.base_coupling) * core;
    // on crash days the common factor crowds the sector factor out
    double b2 = std::min(c.sector_coupling, (1.0 - a2) * (crash ? 0.3 : 0.9));
    double e2 = std::max(0.0, 1.0 - a2 - b2);
    return {std::sqrt(a2), std::sqrt(b2), std::sqrt(e2)};
}

std::vector<double> normals(uint64_t seed, int count) {
    Rng rng(seed);
    std::vector<double> out(size_t(count), 0.0);
    for (auto& v : out) v = rng.normal();
    return out;
}

int sector_index(const GroundTruth& gt, const std::string& sector) {
    for (size_t g = 0; g < gt.config.sectors.size(); ++g)
        if (gt.config.sectors[g].first == sector) return int(g);
    return 0;
}

}  // namespace

std::vector<std::vector<double>> latent_paths(const GroundTruth& gt, int day) {
    const SynthConfig& c = gt.config;
    bool crash = gt.days[size_t(day)].regime == DayRegime::Crash;
    double shift = crash ? c.crash_shift : 0.0;

    auto common = normals(mix_seed(c.seed, uint64_t(day), kTagCommon), kMinutesPerDay);
    std::vector<std::vector<double>> sector_f(c.sectors.size());
    for (size_t g = 0; g < c.sectors.size(); ++g)
        sector_f[g] = normals(mix_seed(c.seed, uint64_t(day), kTagSector, g), kMinutesPerDay);

    std::vector<std::vector<double>> out(gt.stocks.size());
    for (size_t i = 0; i < gt.stocks.size(); ++i) {
        const StockProfile& p = gt.stocks[i];
        FactorLoadings l = loadings(c, p.core, crash);
        const auto& sf = sector_f[size_t(sector_index(gt, p.sector))];
        auto idio = normals(mix_seed(c.seed, uint64_t(day), kTagIdio, i), kMinutesPerDay);
        auto& z = out[i];
        z.resize(kMinutesPerDay);
        for (int m = 0; m < kMinutesPerDay; ++m) {
            double v = l.a * common[size_t(m)] + l.b * sf[size_t(m)] + l.e * idio[size_t(m)] + shift;
            z[size_t(m)] = std::clamp(v, kLatentClampLo, kLatentClampHi);
        }
    }
    return out;
}

std::vector<QuoteSnapshot> generate_day(const GroundTruth& gt, int day) {
    const SynthConfig& c = gt.config;
    const DayPlan& plan = gt.days[size_t(day)];
    auto latent = latent_paths(gt, day);

    std::vector<QuoteSnapshot> out;
    out.reserve(gt.stocks.size() * size_t(kMinutesPerDay) * size_t(c.snapshot_rate));

    for (size_t i = 0; i < gt.stocks.size(); ++i) {
        const StockProfile& p = gt.stocks[i];
        const double limit = down_limit_price(p.prev_close, 0.10);
        const int fail = plan.fail_minute[i];
        const int episode_end = fail >= 0 ? std::min(kMinutesPerDay, fail + plan.episode_len[i]) : -1;

        Rng rng(mix_seed(c.seed, uint64_t(day), i, kTagBook));
        double drift = 0.0;
        for (int m = 0; m < kMinutesPerDay; ++m) {
            // mid random walk, floored well above the down limit so only
            // planted failures can trigger detection
            drift += (rng.next_double() - 0.5) * 0.003;
            drift = std::clamp(drift, -0.07, 0.08);
            double mid = tick(p.prev_close * (1.0 + drift));
            double z = latent[i][size_t(m)];
            int half_ticks =
                std::max<int>(1, int(std::lround(kBaseHalfSpread * std::exp(kSpreadSensitivity * z) / 0.01)));

            bool pinned = fail >= 0 && m >= fail && m < episode_end;
            // depth varies by level but mirrors across sides: independent
            // side noise would swamp the spread term in the two nearly
            // cancelling price-volume sums
            double level_volume[kBookLevels];
            for (double& v : level_volume)
                v = std::floor(kBaseVolume * (0.75 + 0.5 * rng.next_double()));
            for (int k = 0; k < c.snapshot_rate; ++k) {
                QuoteSnapshot s;
                s.stock_id = p.id;
                s.ts = m * kSecondsPerMinute + k * kSecondsPerMinute / c.snapshot_rate;
                if (pinned) {
                    // at the limit: sellers only, ask volume grows with time in state
                    double growth = 1.0 + c.panic_intensity * std::log1p(double(m - fail + 1));
                    for (int l = 0; l < kBookLevels; ++l) {
                        s.ask_prices.push_back(tick(limit + 0.01 * l));
                        s.ask_volumes.push_back(
                            std::floor(kBaseVolume * growth * (0.9 + 0.2 * rng.next_double())));
                    }
                } else {
                    for (int l = 0; l < kBookLevels; ++l) {
                        // exact 0.01 steps keep both sides strictly monotone
                        s.ask_prices.push_back(tick(mid + 0.01 * (half_ticks + l)));
                        s.bid_prices.push_back(tick(mid - 0.01 * (half_ticks + l)));
                        s.ask_volumes.push_back(level_volume[l]);
                        s.bid_volumes.push_back(level_volume[l]);
                    }
                }
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

void write_market(const GroundTruth& gt, const std::string& out_dir,
                  const std::string& config_hash, int workers) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(out_dir) / "quotes");

    parallel_for(gt.days.size(), workers, [&](size_t d) {
        auto snaps = generate_day(gt, int(d));
        std::ofstream out(fs::path(out_dir) / "quotes" / (gt.days[d].date + ".csv"));
        write_quotes_csv(out, snaps, config_hash);
    });

    MetadataTable table;
    auto meta = gt.stock_meta();
    for (const auto& day : gt.days)
        for (const auto& [id, m] : meta) table.insert(day.date, m);
    std::ofstream meta_out(fs::path(out_dir) / "meta.csv");
    write_metadata_csv(meta_out, table, config_hash);

    nlohmann::json j;
    j["config_hash"] = config_hash;
    j["seed"] = gt.config.seed;
    j["n_stocks"] = gt.config.n_stocks;
    j["n_days"] = gt.config.n_days;
    nlohmann::json days = nlohmann::json::array();
    for (size_t d = 0; d < gt.days.size(); ++d) {
        const DayPlan& plan = gt.days[d];
        nlohmann::json jd;
        jd["index"] = d;
        jd["date"] = plan.date;
        jd["regime"] = to_string(plan.regime);
        nlohmann::json fails = nlohmann::json::array();
        for (size_t i = 0; i < plan.fail_minute.size(); ++i) {
            if (plan.fail_minute[i] < 0) continue;
            fails.push_back({{"stock_id", gt.stocks[i].id},
                             {"minute", plan.fail_minute[i]},
                             {"episode_minutes", plan.episode_len[i]}});
        }
        jd["failures"] = std::move(fails);
        days.push_back(std::move(jd));
    }
    j["days"] = std::move(days);
    nlohmann::json stocks = nlohmann::json::array();
    for (const auto& s : gt.stocks)
        stocks.push_back({{"stock_id", s.id},
                          {"sector", s.sector},
                          {"cap_style", s.cap_style},
                          {"prev_close", s.prev_close},
                          {"core", s.core}});
    j["stocks"] = std::move(stocks);

    std::ofstream manifest(fs::path(out_dir) / "manifest.json");
    manifest << j.dump(2) << "\n";
}

}  // namespace illiqnet
