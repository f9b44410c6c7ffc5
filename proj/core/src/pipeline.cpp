#include "illiqnet/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "illiqnet/cascade_analysis.hpp"
#include "illiqnet/csv.hpp"
#include "illiqnet/dates.hpp"
#include "illiqnet/dependency_network.hpp"
#include "illiqnet/errors.hpp"
#include "illiqnet/illiquidity.hpp"
#include "illiqnet/market_data.hpp"
#include "illiqnet/network_dynamics.hpp"
#include "illiqnet/parallel.hpp"
#include "illiqnet/rng.hpp"
#include "illiqnet/stats.hpp"
#include "illiqnet/svg.hpp"
#include "illiqnet/synthetic_market.hpp"
#include "illiqnet/warning_signal.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace illiqnet {

namespace {

std::ofstream open_out(const fs::path& path) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const fs::path& path, const std::string& producer) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw StageError("missing artifact " + path.string() + "; run `illiqnet " + producer +
                         "` first");
    return in;
}

json read_json(const fs::path& path, const std::string& producer) {
    auto in = open_in(path, producer);
    json j;
    in >> j;
    return j;
}

std::optional<std::string> json_hash(const json& j) {
    auto it = j.find("config_hash");
    if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) return std::nullopt;
    return it->get<std::string>();
}

/// Reads just the leading comment block of a CSV artifact.
std::optional<std::string> peek_config_hash(const fs::path& path, const std::string& producer) {
    auto in = open_in(path, producer);
    CsvReader reader(in);
    std::string first;
    return read_artifact_header(reader, first, /*require_tag=*/true);
}

}  // namespace

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
    config_.validate();
    hash_ = config_.hash();
    out_ = config_.out;
}

void Pipeline::set_day_range(int lo, int hi) {
    if (lo < 0 || hi < lo) throw ConfigError("bad --days range");
    day_range_ = {lo, hi};
}

std::vector<std::string> Pipeline::list_dates(const std::string& subdir, const std::string& ext,
                                              const std::string& producer) const {
    fs::path dir = fs::path(out_) / subdir;
    std::vector<std::string> dates;
    if (fs::exists(dir)) {
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (!entry.is_regular_file() || entry.path().extension() != ext) continue;
            std::string stem = entry.path().stem().string();
            if (is_valid_date(stem)) dates.push_back(stem);
        }
    }
    if (dates.empty())
        throw StageError("no " + subdir + "/*" + ext + " artifacts under " + out_ + "; run `illiqnet " +
                         producer + "` first");
    std::sort(dates.begin(), dates.end());
    return dates;
}

std::vector<std::string> Pipeline::selected(std::vector<std::string> dates) const {
    if (!day_range_) return dates;
    int lo = day_range_->first, hi = std::min(day_range_->second, int(dates.size()) - 1);
    if (lo >= int(dates.size())) return {};
    return {dates.begin() + lo, dates.begin() + hi + 1};
}

void Pipeline::check_hash(const std::optional<std::string>& found, const std::string& path) const {
    if (found && *found != hash_)
        throw StageError("artifact " + path + " was produced under config " + *found +
                         " but the active config hashes to " + hash_ +
                         "; refusing to mix runs");
}

// ---------------------------------------------------------------------------
// synth

void Pipeline::synth() {
    GroundTruth gt = plan_market(config_.synth);
    write_market(gt, out_, hash_, config_.workers);
    int crash = 0;
    for (const auto& d : gt.days) crash += d.regime == DayRegime::Crash ? 1 : 0;
    std::cout << "[synth] " << gt.days.size() << " days, " << gt.stocks.size() << " stocks, "
              << crash << " planted crash days -> " << out_ << " (config " << hash_ << ")\n";
}

// ---------------------------------------------------------------------------
// ingest

void Pipeline::ingest(const std::vector<std::string>& quote_files, const std::string& meta_file) {
    if (quote_files.empty() || meta_file.empty())
        throw ConfigError("ingest needs --quotes <date>.csv... and --meta FILE");

    auto meta_in = open_in(meta_file, "ingest");
    MetadataTable table = load_metadata(meta_in);
    {
        auto out = open_out(fs::path(out_) / "meta.csv");
        write_metadata_csv(out, table, hash_);
    }

    json coverage;
    long total_rows = 0, total_rejected = 0;
    for (const auto& file : quote_files) {
        fs::path p(file);
        std::string date = p.stem().string();
        if (!is_valid_date(date))
            throw ConfigError("quote file name must be <YYYY-MM-DD>.csv: " + file);
        auto in = open_in(p, "ingest");
        QuoteParseResult parsed = parse_quotes(in);
        auto out = open_out(fs::path(out_) / "quotes" / (date + ".csv"));
        write_quotes_csv(out, parsed.snapshots, hash_);

        std::set<std::string> missing;
        for (const auto& s : parsed.snapshots)
            if (!table.find(date, s.stock_id)) missing.insert(s.stock_id);
        json day;
        day["rows"] = parsed.total_rows;
        day["rejected"] = parsed.rejected.size();
        json rej = json::array();
        for (const auto& r : parsed.rejected)
            rej.push_back({{"line", r.line}, {"reason", r.reason}});
        day["rejected_rows"] = std::move(rej);
        day["stocks_missing_metadata"] = std::vector<std::string>(missing.begin(), missing.end());
        coverage[date] = std::move(day);
        total_rows += parsed.total_rows;
        total_rejected += long(parsed.rejected.size());
        for (const auto& r : parsed.rejected)
            std::cerr << file << ": rejected line " << r.line << ": " << r.reason << "\n";
    }
    coverage["config_hash"] = hash_;
    auto cov = open_out(fs::path(out_) / "coverage.json");
    cov << coverage.dump(2) << "\n";
    std::cout << "[ingest] " << quote_files.size() << " day files, " << total_rows << " rows, "
              << total_rejected << " rejected -> " << out_ << "/quotes\n";
}

// ---------------------------------------------------------------------------
// illiq

void Pipeline::illiq() {
    auto dates = selected(list_dates("quotes", ".csv", "synth (or ingest)"));
    if (dates.empty()) throw StageError("selected --days range is empty");

    struct DayOut {
        double market_illiquidity = 0;
        int stocks = 0;
        long rejected = 0;
        std::vector<NoBidEpisode> episodes;
        std::vector<std::string> missing_meta;
        std::string error;
    };
    std::vector<DayOut> results(dates.size());

    // metadata used only for the coverage report at this stage
    MetadataTable table;
    {
        auto in = open_in(fs::path(out_) / "meta.csv", "synth (or ingest)");
        table = load_metadata(in);
    }

    parallel_for(dates.size(), config_.workers, [&](size_t d) {
        const std::string& date = dates[d];
        DayOut& res = results[d];
        try {
            auto in = open_in(fs::path(out_) / "quotes" / (date + ".csv"), "synth (or ingest)");
            QuoteParseResult parsed = parse_quotes(in);
            res.rejected = long(parsed.rejected.size());
            auto aggregates = aggregate_day(parsed.snapshots, 1);

            std::vector<IlliquiditySeries> series;
            series.reserve(aggregates.size());
            for (const auto& agg : aggregates) {
                series.push_back(to_series(agg, date));
                if (!table.find(date, agg.stock_id)) res.missing_meta.push_back(agg.stock_id);
            }
            {
                auto out = open_out(fs::path(out_) / "series" / (date + ".csv"));
                write_series_csv(out, series, hash_);
            }
            {
                auto out = open_out(fs::path(out_) / "book" / (date + ".csv"));
                write_book_csv(out, series, hash_);
            }
            for (const auto& s : series) {
                auto eps = no_bid_episodes(s);
                res.episodes.insert(res.episodes.end(), eps.begin(), eps.end());
            }
            res.market_illiquidity = daily_market_illiquidity(series);
            res.stocks = int(series.size());
        } catch (const std::exception& e) {
            res.error = e.what();
        }
    });

    auto daily = open_out(fs::path(out_) / "illiq" / "daily.csv");
    write_artifact_header(daily, hash_);
    daily << "date,market_illiquidity,stocks\n";
    auto episodes = open_out(fs::path(out_) / "illiq" / "episodes.csv");
    write_artifact_header(episodes, hash_);
    episodes << "date,stock_id,start_minute,duration_minutes,max_ask_volume\n";
    json coverage;
    int ok = 0;
    for (size_t d = 0; d < dates.size(); ++d) {
        const DayOut& res = results[d];
        if (!res.error.empty()) {
            day_errors_.push_back(dates[d] + ": " + res.error);
            continue;
        }
        ++ok;
        daily << dates[d] << ',' << format_full(res.market_illiquidity) << ',' << res.stocks
              << "\n";
        for (const auto& ep : res.episodes)
            episodes << ep.date << ',' << ep.stock_id << ',' << ep.start_minute << ','
                     << ep.duration_minutes << ',' << format_full(ep.max_ask_volume) << "\n";
        if (!res.missing_meta.empty()) coverage[dates[d]] = res.missing_meta;
    }
    coverage["config_hash"] = hash_;
    auto cov = open_out(fs::path(out_) / "illiq" / "coverage.json");
    cov << coverage.dump(2) << "\n";
    for (const auto& err : day_errors_) std::cerr << "illiq: " << err << "\n";
    std::cout << "[illiq] " << ok << "/" << dates.size() << " days -> " << out_
              << "/series (config " << hash_ << ")\n";
}

// ---------------------------------------------------------------------------
// net

void Pipeline::net() {
    auto dates = selected(list_dates("series", ".csv", "illiq"));
    int ok = 0, reused = 0;
    for (const auto& date : dates) {
        try {
            // reuse an existing matrix from the same configuration; the NMI
            // stage is the expensive part and never changes under one hash
            DependencyMatrix matrix;
            fs::path mpath = fs::path(out_) / "matrix" / (date + ".ilqm");
            fs::path spath = fs::path(out_) / "matrix" / (date + ".json");
            bool have_matrix = false;
            if (fs::exists(mpath) && fs::exists(spath)) {
                json side = read_json(spath, "net");
                if (json_hash(side) == std::optional<std::string>(hash_)) {
                    auto in = open_in(mpath, "net");
                    matrix = DependencyMatrix::read(in);
                    matrix.stocks = side.at("stocks").get<std::vector<std::string>>();
                    have_matrix = true;
                    ++reused;
                }
            }
            if (!have_matrix) {
                auto series = load_series(date, /*with_book=*/false);
                if (series.size() < 2) throw ValidationError("need at least 2 stocks");
                std::vector<DiscreteSeries> discrete;
                discrete.reserve(series.size());
                for (const auto& s : series)
                    discrete.push_back(discretize(impute_missing(s), config_.bins));
                matrix = pairwise_nmi(discrete, date, config_.workers);
                auto out = open_out(mpath);
                matrix.write(out);
                json side;
                side["date"] = date;
                side["stocks"] = matrix.stocks;
                side["config_hash"] = hash_;
                auto sout = open_out(spath);
                sout << side.dump(2) << "\n";
            }

            NmiStats stats = nmi_stats(matrix);
            ThresholdPick pick = select_threshold(matrix, config_.threshold_step);
            if (pick.fallback)
                std::cerr << "net: " << date
                          << ": no GCC drop above 1% before the weight maximum; using the "
                             "largest single-step drop at "
                          << format_full(pick.threshold) << "\n";
            IlliquidityNetwork network = build_network(matrix, pick.threshold);
            ComponentSummary comps = component_summary(network);
            {
                auto out = open_out(fs::path(out_) / "network" / (date + ".csv"));
                write_network_csv(out, network, hash_);
            }
            json side;
            side["date"] = date;
            side["threshold"] = pick.threshold;
            side["threshold_fallback"] = pick.fallback;
            side["node_count"] = network.nodes.size();
            side["edge_count"] = network.edges.size();
            side["total_stocks"] = network.total_stocks;
            side["isolated_stocks"] = network.total_stocks - int(network.nodes.size());
            side["gcc_size"] = comps.gcc_size;
            side["gcc_ratio"] = comps.gcc_ratio;
            side["second_component"] = comps.second_size;
            side["nmi_mean"] = stats.mean;
            side["nmi_std"] = stats.stddev;
            side["config_hash"] = hash_;
            auto out = open_out(fs::path(out_) / "network" / (date + ".json"));
            out << side.dump(2) << "\n";
            ++ok;
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            day_errors_.push_back(date + ": " + e.what());
            std::cerr << "net: " << date << ": " << e.what() << "\n";
        }
    }
    std::cout << "[net] " << ok << "/" << dates.size() << " days";
    if (reused > 0) std::cout << " (" << reused << " matrices reused)";
    std::cout << " -> " << out_ << "/network\n";
}

// ---------------------------------------------------------------------------
// dynamics

void Pipeline::dynamics() {
    auto dates = list_dates("network", ".csv", "net");
    MetadataTable table = load_meta();

    auto evo = open_out(fs::path(out_) / "dynamics" / "evolution.csv");
    write_artifact_header(evo, hash_);
    evo << "date_a,date_b,new,removed,unchanged,unchanged_ratio\n";
    auto scores = open_out(fs::path(out_) / "dynamics" / "scores.csv");
    write_artifact_header(scores, hash_);
    scores << "date,grouping,group,R,n_ij,n_j,N_ij,N_j\n";

    IlliquidityNetwork prev;
    bool have_prev = false;
    for (const auto& date : dates) {
        IlliquidityNetwork net = load_network(date);
        if (have_prev) {
            LinkEvolution ev = link_evolution(prev, net);
            evo << ev.date_a << ',' << ev.date_b << ',' << ev.new_links << ',' << ev.removed_links
                << ',' << ev.unchanged_links << ',' << format_full(ev.unchanged_ratio) << "\n";
        }
        const auto* meta = table.for_date(date);
        if (meta) {
            for (Grouping g : {Grouping::Sector, Grouping::CapStyle})
                for (const auto& sc : group_proportion(net, *meta, g))
                    scores << sc.date << ',' << to_string(g) << ',' << sc.group << ','
                           << format_full(sc.R) << ',' << sc.n_ij << ',' << sc.n_j << ','
                           << sc.N_ij << ',' << sc.N_j << "\n";
        }
        prev = std::move(net);
        have_prev = true;
    }
    std::cout << "[dynamics] " << dates.size() << " days -> " << out_ << "/dynamics\n";
}

// ---------------------------------------------------------------------------
// cascade

void Pipeline::cascade() {
    auto dates = list_dates("series", ".csv", "illiq");
    MetadataTable table = load_meta();

    auto failures_csv = open_out(fs::path(out_) / "cascade" / "failures.csv");
    write_artifact_header(failures_csv, hash_);
    failures_csv << "date,stock_id,fail_minute\n";
    auto peaks_csv = open_out(fs::path(out_) / "cascade" / "peaks.csv");
    write_artifact_header(peaks_csv, hash_);
    peaks_csv << "date,minute,count\n";
    auto scores_csv = open_out(fs::path(out_) / "cascade" / "scores.csv");
    write_artifact_header(scores_csv, hash_);
    scores_csv << "date,group,R_bp,R_bpr,S,shuffles,seed\n";
    auto dist_csv = open_out(fs::path(out_) / "cascade" / "distance.csv");
    write_artifact_header(dist_csv, hash_);
    dist_csv << "date,bin_center,max_degree\n";

    std::map<std::string, std::vector<FailureEvent>> events_by_date;
    json summary;
    for (size_t di = 0; di < dates.size(); ++di) {
        const std::string& date = dates[di];
        try {
            auto series = load_series(date, /*with_book=*/true);
            const auto* meta = table.for_date(date);
            if (!meta) throw StageError("meta.csv has no rows for " + date +
                                        "; run `illiqnet synth` or `illiqnet ingest` first");

            std::vector<FailureEvent> events;
            for (const auto& s : series) {
                auto it = meta->find(s.stock_id);
                if (it == meta->end()) continue;  // excluded from group analyses
                if (auto ev = detect_failures(s, it->second)) events.push_back(*ev);
            }
            for (const auto& ev : events)
                failures_csv << ev.date << ',' << ev.stock_id << ',' << ev.fail_minute << "\n";

            PeakSet peaks = detect_peaks(failure_counts(events), config_.peak_window,
                                         config_.peak_min_height);
            peaks.date = date;
            for (int p : peaks.peaks)
                peaks_csv << date << ',' << p << ',' << peaks.counts[size_t(p)] << "\n";

            json day_summary;
            day_summary["failed"] = events.size();
            day_summary["peaks"] = peaks.peaks;
            if (!peaks.peaks.empty() && !events.empty()) {
                IlliquidityNetwork network = load_network(date);
                uint64_t day_seed = mix_seed(config_.seed, di, 0xCA5C);
                auto scores = before_peak_score(events, peaks, network, *meta, Grouping::Sector,
                                                config_.shuffles, day_seed);
                for (const auto& sc : scores)
                    scores_csv << sc.date << ',' << sc.group << ',' << format_full(sc.R_bp) << ','
                               << format_full(sc.R_bpr) << ',' << format_full(sc.S) << ','
                               << config_.shuffles << ',' << day_seed << "\n";
                DistanceProfile profile = distance_profile(events, peaks, network);
                for (const auto& [center, deg] : profile.bins)
                    dist_csv << date << ',' << format_full(center) << ',' << deg << "\n";
                day_summary["distance_r"] = profile.r ? json(*profile.r) : json();
                day_summary["distance_p"] = profile.p_value ? json(*profile.p_value) : json();
            }
            summary[date] = std::move(day_summary);
            events_by_date[date] = std::move(events);
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            day_errors_.push_back(date + ": " + e.what());
            std::cerr << "cascade: " << date << ": " << e.what() << "\n";
            events_by_date[date] = {};
        }
    }

    auto calendar = crash_days(events_by_date, dates, config_.crash_threshold);
    auto cal_csv = open_out(fs::path(out_) / "cascade" / "crash_days.csv");
    write_artifact_header(cal_csv, hash_);
    cal_csv << "date,failed_count,crash\n";
    int crashes = 0;
    for (const auto& entry : calendar) {
        cal_csv << entry.date << ',' << entry.failed_count << ',' << (entry.crash ? 1 : 0) << "\n";
        crashes += entry.crash ? 1 : 0;
    }
    summary["config_hash"] = hash_;
    auto sum = open_out(fs::path(out_) / "cascade" / "summary.json");
    sum << summary.dump(2) << "\n";
    std::cout << "[cascade] " << dates.size() << " days, " << crashes << " crash days -> " << out_
              << "/cascade\n";
}

// ---------------------------------------------------------------------------
// warn / evaluate

void Pipeline::warn() {
    auto calendar = load_calendar();
    auto failures = load_failures();

    std::vector<std::pair<std::string, double>> daily_w;
    daily_w.reserve(calendar.size());
    for (const auto& entry : calendar) {
        IlliquidityNetwork network = load_network(entry.date);
        auto it = failures.find(entry.date);
        std::vector<FailureEvent> none;
        const auto& events = it == failures.end() ? none : it->second;
        auto stats = interval_nonrandomness(events, network, config_.interval_len);
        daily_w.emplace_back(entry.date, daily_nonrandomness(stats));
    }

    auto states = signal(daily_w, config_.signal_window);
    auto out = open_out(fs::path(out_) / "signal" / "signal.csv");
    write_artifact_header(out, hash_);
    out << "date,w_d,N,warn,next_day_crash\n";
    int warns = 0;
    for (size_t d = 0; d < states.size(); ++d) {
        const SignalState& st = states[d];
        out << st.date << ',' << format_full(st.w_d) << ','
            << (st.N ? std::to_string(*st.N) : std::string()) << ','
            << (st.warn ? (*st.warn ? "1" : "0") : "") << ','
            << (d + 1 < states.size() ? (calendar[d + 1].crash ? "1" : "0") : "") << "\n";
        warns += st.warn && *st.warn ? 1 : 0;
    }
    std::cout << "[warn] " << states.size() << " days, " << warns << " warnings (t="
              << config_.signal_window << ") -> " << out_ << "/signal/signal.csv\n";
}

void Pipeline::evaluate() {
    auto calendar = load_calendar();
    std::map<std::string, bool> crash_by_date;
    for (const auto& entry : calendar) crash_by_date[entry.date] = entry.crash;

    // re-read w_d so the sweep evaluates exactly what `warn` exported
    auto in = open_in(fs::path(out_) / "signal" / "signal.csv", "warn");
    CsvReader reader(in);
    std::string header;
    check_hash(read_artifact_header(reader, header, true), "signal/signal.csv");
    if (header != "date,w_d,N,warn,next_day_crash")
        throw FormatError("unexpected signal CSV header");
    std::vector<std::pair<std::string, double>> daily_w;
    std::string line;
    while (reader.next(line)) {
        if (line[0] == '#') continue;
        auto f = split(line, ',');
        if (f.size() != 5) throw ValidationError("bad signal row", reader.line_number());
        daily_w.emplace_back(f[0], parse_double(f[1]).value_or(0.0));
    }

    json sweep = json::array();
    std::optional<double> chosen_recall;
    for (int t = 1; t <= 15; ++t) {
        auto states = signal(daily_w, t);
        EvaluationReport rep = ::illiqnet::evaluate(states, crash_by_date, t);
        json jt;
        jt["t"] = t;
        jt["tp"] = rep.tp;
        jt["fp"] = rep.fp;
        jt["fn"] = rep.fn;
        jt["tn"] = rep.tn;
        jt["recall"] = rep.recall ? json(*rep.recall) : json();
        jt["precision"] = rep.precision ? json(*rep.precision) : json();
        jt["warned_dates"] = rep.warned_dates;
        sweep.push_back(std::move(jt));
        if (t == config_.signal_window) chosen_recall = rep.recall;
    }
    json out_json;
    out_json["config_hash"] = hash_;
    out_json["chosen_t"] = config_.signal_window;
    out_json["sweep"] = std::move(sweep);
    auto out = open_out(fs::path(out_) / "signal" / "evaluation.json");
    out << out_json.dump(2) << "\n";
    std::cout << "[evaluate] t=1..15 sweep -> " << out_ << "/signal/evaluation.json (recall at t="
              << config_.signal_window << ": "
              << (chosen_recall ? format_double(*chosen_recall, 3) : std::string("n/a")) << ")\n";
}

// ---------------------------------------------------------------------------
// report

void Pipeline::report() {
    auto calendar = load_calendar();
    std::map<std::string, size_t> date_index;
    for (size_t i = 0; i < calendar.size(); ++i) date_index[calendar[i].date] = i;

    std::vector<SvgBand> crash_bands;
    for (size_t i = 0; i < calendar.size(); ++i)
        if (calendar[i].crash) crash_bands.push_back({double(i) - 0.5, double(i) + 0.5});
    std::vector<std::pair<double, std::string>> ticks;
    for (size_t i = 0; i < calendar.size(); i += std::max<size_t>(1, calendar.size() / 8))
        ticks.emplace_back(double(i), calendar[i].date.substr(5));

    // daily market illiquidity
    {
        auto in = open_in(fs::path(out_) / "illiq" / "daily.csv", "illiq");
        CsvReader reader(in);
        std::string header;
        check_hash(read_artifact_header(reader, header, true), "illiq/daily.csv");
        SvgSeries series;
        series.label = "market illiquidity";
        std::string line;
        while (reader.next(line)) {
            if (line[0] == '#') continue;
            auto f = split(line, ',');
            auto it = date_index.find(f[0]);
            if (it == date_index.end()) continue;
            series.points.emplace_back(double(it->second), parse_double(f[1]).value_or(0.0));
        }
        SvgChart chart;
        chart.title = "Daily market illiquidity";
        chart.x_label = "trading day";
        chart.y_label = "illiquidity";
        chart.series.push_back(std::move(series));
        chart.bands = crash_bands;
        chart.x_ticks = ticks;
        open_out(fs::path(out_) / "report" / "daily_illiquidity.svg") << render_svg(chart);
    }

    // per-day network stats
    std::vector<json> sides;
    for (const auto& entry : calendar) {
        fs::path p = fs::path(out_) / "network" / (entry.date + ".json");
        if (!fs::exists(p)) continue;
        json side = read_json(p, "net");
        check_hash(json_hash(side), p.string());
        sides.push_back(std::move(side));
    }
    if (sides.empty()) throw StageError("no network sidecars; run `illiqnet net` first");
    {
        SvgChart chart;
        chart.title = "NMI mean vs std by day";
        chart.x_label = "NMI mean";
        chart.y_label = "NMI std";
        SvgSeries calm, crash;
        calm.label = "non-crash";
        calm.color = "#7a7a7a";
        calm.line = false;
        crash.label = "crash";
        crash.color = "#c0392b";
        crash.line = false;
        crash.marker = 3.5;
        for (const auto& side : sides) {
            std::string date = side.at("date");
            bool is_crash = calendar[date_index.at(date)].crash;
            (is_crash ? crash : calm)
                .points.emplace_back(side.at("nmi_mean").get<double>(),
                                     side.at("nmi_std").get<double>());
        }
        chart.series.push_back(std::move(calm));
        chart.series.push_back(std::move(crash));
        open_out(fs::path(out_) / "report" / "nmi_mean_std.svg") << render_svg(chart);
    }
    {
        SvgChart chart;
        chart.title = "GCC ratio and link-weight threshold";
        chart.x_label = "trading day";
        chart.y_label = "value";
        SvgSeries gcc, thr;
        gcc.label = "GCC ratio";
        thr.label = "threshold";
        thr.color = "#2e8b57";
        for (const auto& side : sides) {
            double x = double(date_index.at(side.at("date").get<std::string>()));
            gcc.points.emplace_back(x, side.at("gcc_ratio").get<double>());
            thr.points.emplace_back(x, side.at("threshold").get<double>());
        }
        chart.series.push_back(std::move(gcc));
        chart.series.push_back(std::move(thr));
        chart.bands = crash_bands;
        chart.x_ticks = ticks;
        chart.y_min = 0.0;
        open_out(fs::path(out_) / "report" / "gcc_ratio.svg") << render_svg(chart);
    }

    // signal timeline
    {
        auto in = open_in(fs::path(out_) / "signal" / "signal.csv", "warn");
        CsvReader reader(in);
        std::string header;
        check_hash(read_artifact_header(reader, header, true), "signal/signal.csv");
        SvgSeries wd, warns;
        wd.label = "w_d";
        warns.label = "warning";
        warns.color = "#c0392b";
        warns.line = false;
        warns.marker = 4.0;
        std::string line;
        while (reader.next(line)) {
            if (line[0] == '#') continue;
            auto f = split(line, ',');
            auto it = date_index.find(f[0]);
            if (it == date_index.end()) continue;
            double x = double(it->second);
            wd.points.emplace_back(x, parse_double(f[1]).value_or(0.0));
            if (f[3] == "1") warns.points.emplace_back(x, 0.0);
        }
        SvgChart chart;
        chart.title = "Daily non-randomness and warnings";
        chart.x_label = "trading day";
        chart.y_label = "w_d";
        chart.series.push_back(std::move(wd));
        chart.series.push_back(std::move(warns));
        chart.bands = crash_bands;
        chart.x_ticks = ticks;
        open_out(fs::path(out_) / "report" / "signal_timeline.svg") << render_svg(chart);
    }

    json summary;
    summary["config_hash"] = hash_;
    summary["days"] = calendar.size();
    int crashes = 0;
    for (const auto& e : calendar) crashes += e.crash ? 1 : 0;
    summary["crash_days"] = crashes;
    if (fs::exists(fs::path(out_) / "signal" / "evaluation.json")) {
        json eval = read_json(fs::path(out_) / "signal" / "evaluation.json", "evaluate");
        check_hash(json_hash(eval), (fs::path(out_) / "signal" / "evaluation.json").string());
        summary["evaluation"] = std::move(eval);
    }

    // optional external fear series, correlated against daily illiquidity
    if (!config_.fear_csv.empty()) {
        std::ifstream fear_in(config_.fear_csv);
        if (!fear_in) throw StageError("fear_csv not readable: " + config_.fear_csv);
        std::map<std::string, double> fear;
        std::string line;
        while (std::getline(fear_in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#' || line.rfind("date", 0) == 0) continue;
            auto f = split(line, ',');
            if (f.size() == 2)
                if (auto v = parse_double(f[1])) fear[f[0]] = *v;
        }

        auto in = open_in(fs::path(out_) / "illiq" / "daily.csv", "illiq");
        CsvReader daily(in);
        std::string header;
        check_hash(read_artifact_header(daily, header, true), "illiq/daily.csv");
        std::vector<double> xs, ys;
        while (daily.next(line)) {
            if (line[0] == '#') continue;
            auto f = split(line, ',');
            auto it = fear.find(f[0]);
            if (it == fear.end()) continue;
            xs.push_back(parse_double(f[1]).value_or(0.0));
            ys.push_back(it->second);
        }
        if (xs.size() >= 3) {
            PearsonResult pr = pearson(xs, ys);
            summary["fear_correlation"] = {{"r", pr.r}, {"p_value", pr.p_value},
                                           {"days", xs.size()}};
        }
    }
    open_out(fs::path(out_) / "report" / "summary.json") << summary.dump(2) << "\n";
    std::cout << "[report] 4 charts + summary.json -> " << out_ << "/report\n";
}

// ---------------------------------------------------------------------------
// artifact loaders

std::vector<IlliquiditySeries> Pipeline::load_series(const std::string& date,
                                                     bool with_book) const {
    fs::path sp = fs::path(out_) / "series" / (date + ".csv");
    check_hash(peek_config_hash(sp, "illiq"), sp.string());
    auto in = open_in(sp, "illiq");
    auto series = read_series_csv(in);
    if (with_book) {
        fs::path bp = fs::path(out_) / "book" / (date + ".csv");
        check_hash(peek_config_hash(bp, "illiq"), bp.string());
        auto book_in = open_in(bp, "illiq");
        read_book_csv(book_in, series);
    }
    return series;
}

IlliquidityNetwork Pipeline::load_network(const std::string& date) const {
    fs::path cp = fs::path(out_) / "network" / (date + ".csv");
    check_hash(peek_config_hash(cp, "net"), cp.string());
    auto in = open_in(cp, "net");
    IlliquidityNetwork net = read_network_csv(in);
    if (net.date.empty()) net.date = date;

    json side = read_json(fs::path(out_) / "network" / (date + ".json"), "net");
    check_hash(json_hash(side), date + ".json");
    net.threshold = side.at("threshold").get<double>();
    net.total_stocks = side.at("total_stocks").get<int>();
    return net;
}

MetadataTable Pipeline::load_meta() const {
    fs::path mp = fs::path(out_) / "meta.csv";
    check_hash(peek_config_hash(mp, "synth (or ingest)"), mp.string());
    auto in = open_in(mp, "synth (or ingest)");
    return load_metadata(in);
}

std::vector<CrashCalendarEntry> Pipeline::load_calendar() const {
    fs::path cp = fs::path(out_) / "cascade" / "crash_days.csv";
    check_hash(peek_config_hash(cp, "cascade"), cp.string());
    auto in = open_in(cp, "cascade");
    CsvReader reader(in);
    std::string header;
    read_artifact_header(reader, header, true);
    if (header != "date,failed_count,crash")
        throw FormatError("unexpected crash calendar header");
    std::vector<CrashCalendarEntry> out;
    std::string line;
    while (reader.next(line)) {
        if (line[0] == '#') continue;
        auto f = split(line, ',');
        if (f.size() != 3) throw ValidationError("bad calendar row", reader.line_number());
        CrashCalendarEntry entry;
        entry.date = f[0];
        entry.failed_count = int(parse_long(f[1]).value_or(0));
        entry.crash = f[2] == "1";
        out.push_back(std::move(entry));
    }
    return out;
}

std::map<std::string, std::vector<FailureEvent>> Pipeline::load_failures() const {
    fs::path fp = fs::path(out_) / "cascade" / "failures.csv";
    check_hash(peek_config_hash(fp, "cascade"), fp.string());
    auto in = open_in(fp, "cascade");
    CsvReader reader(in);
    std::string header;
    read_artifact_header(reader, header, true);
    if (header != "date,stock_id,fail_minute")
        throw FormatError("unexpected failures header");
    std::map<std::string, std::vector<FailureEvent>> out;
    std::string line;
    while (reader.next(line)) {
        if (line[0] == '#') continue;
        auto f = split(line, ',');
        if (f.size() != 3) throw ValidationError("bad failure row", reader.line_number());
        out[f[0]].push_back({f[1], f[0], int(parse_long(f[2]).value_or(0))});
    }
    return out;
}

// ---------------------------------------------------------------------------
// dispatch

int Pipeline::run(const std::string& subcommand, const std::vector<std::string>& quote_files,
                  const std::string& meta_file) {
    if (subcommand == "synth") synth();
    else if (subcommand == "ingest") ingest(quote_files, meta_file);
    else if (subcommand == "illiq") illiq();
    else if (subcommand == "net") net();
    else if (subcommand == "dynamics") dynamics();
    else if (subcommand == "cascade") cascade();
    else if (subcommand == "warn") warn();
    else if (subcommand == "evaluate") evaluate();
    else if (subcommand == "report") report();
    else throw ConfigError("unknown subcommand '" + subcommand + "'");
    return day_errors_.empty() ? 0 : 1;
}

}  // namespace illiqnet
