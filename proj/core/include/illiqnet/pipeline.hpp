#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "illiqnet/cascade_analysis.hpp"
#include "illiqnet/config.hpp"
#include "illiqnet/market_data.hpp"

namespace illiqnet {

/// Staged pipeline over on-disk artifacts, so the expensive NMI stage runs
/// once per day and every analysis reuses it. Each stage checks that its
/// inputs exist (naming the producing subcommand when they do not) and that
/// their embedded config hashes match the active configuration.
///
/// Artifact layout under the output directory:
///   quotes/<date>.csv   meta.csv        manifest.json (synth only)
///   series/<date>.csv   book/<date>.csv illiq/{daily,episodes}.csv
///   matrix/<date>.{ilqm,json}           network/<date>.{csv,json}
///   dynamics/{evolution,scores}.csv
///   cascade/{failures,crash_days,peaks,scores,distance}.csv cascade/summary.json
///   signal/signal.csv   signal/evaluation.json
///   report/*.svg        report/summary.json
class Pipeline {
public:
    explicit Pipeline(PipelineConfig config);

    /// Restrict per-day stages to date indices [lo, hi] of the sorted list.
    void set_day_range(int lo, int hi);

    void synth();
    void ingest(const std::vector<std::string>& quote_files, const std::string& meta_file);
    void illiq();
    void net();
    void dynamics();
    void cascade();
    void warn();
    void evaluate();
    void report();

    /// Dispatch by subcommand name; returns process exit status (0 = clean).
    int run(const std::string& subcommand, const std::vector<std::string>& quote_files = {},
            const std::string& meta_file = "");

    const PipelineConfig& config() const { return config_; }
    const std::string& out_dir() const { return out_; }
    const std::vector<std::string>& day_errors() const { return day_errors_; }

private:
    PipelineConfig config_;
    std::string hash_;
    std::string out_;
    std::optional<std::pair<int, int>> day_range_;
    std::vector<std::string> day_errors_;

    std::vector<std::string> list_dates(const std::string& subdir, const std::string& ext,
                                        const std::string& producer) const;
    std::vector<std::string> selected(std::vector<std::string> dates) const;
    void check_hash(const std::optional<std::string>& found, const std::string& path) const;

    // artifact loaders, all hash-checked
    std::vector<IlliquiditySeries> load_series(const std::string& date, bool with_book) const;
    IlliquidityNetwork load_network(const std::string& date) const;
    MetadataTable load_meta() const;
    std::vector<CrashCalendarEntry> load_calendar() const;
    std::map<std::string, std::vector<FailureEvent>> load_failures() const;
};

}  // namespace illiqnet
