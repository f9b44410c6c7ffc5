// illiqnet command-line front end: staged pipeline from raw quotes to the
// daily illiquidity networks, cascade profiles and the crash warning signal.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "illiqnet/config.hpp"
#include "illiqnet/csv.hpp"
#include "illiqnet/errors.hpp"
#include "illiqnet/pipeline.hpp"

namespace {

std::optional<std::pair<int, int>> parse_day_range(const std::string& range) {
    if (range.empty()) return std::nullopt;
    auto dash = range.find('-');
    auto lo = illiqnet::parse_long(range.substr(0, dash));
    auto hi = dash == std::string::npos ? lo : illiqnet::parse_long(range.substr(dash + 1));
    if (!lo || !hi || *lo < 0 || *hi < *lo)
        throw illiqnet::ConfigError("bad --days range '" + range + "' (expected A-B)");
    return std::make_pair(int(*lo), int(*hi));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"illiqnet: illiquidity-network market crash analytics"};
    app.require_subcommand(1);

    std::string config_path, days_range, out_dir;
    int workers = -1;
    long long seed = -1;
    app.add_option("--config", config_path, "pipeline config file (key=value)");
    app.add_option("--days", days_range, "restrict per-day stages to date indices A-B");
    app.add_option("--workers", workers, "worker threads (0 = hardware)");
    app.add_option("--seed", seed, "override the configured seed");
    app.add_option("--out", out_dir, "output directory (ILLIQNET_OUT as fallback)");

    const char* names[] = {"synth",   "ingest", "illiq", "net",   "dynamics",
                           "cascade", "warn",   "evaluate", "report"};
    const char* descs[] = {"generate a synthetic market with planted ground truth",
                           "validate external quote/metadata files into the canonical layout",
                           "aggregate quotes into per-minute illiquidity series",
                           "compute NMI matrices, thresholds and daily networks",
                           "link evolution and degree-weighted group proportions",
                           "failures, peaks, before-peak significance, degree-distance profile",
                           "interval non-randomness and the sliding-window warning signal",
                           "sweep the signal window t=1..15 against the crash calendar",
                           "emit SVG charts and the bundled summary"};
    std::vector<std::string> quote_files;
    std::string meta_file;
    for (int i = 0; i < 9; ++i) {
        auto* sub = app.add_subcommand(names[i], descs[i]);
        sub->fallthrough();  // global flags may follow the subcommand
        if (std::string(names[i]) == "ingest") {
            sub->add_option("--quotes", quote_files, "per-day quote files named <date>.csv")
                ->required();
            sub->add_option("--meta", meta_file, "metadata CSV")->required();
        }
    }

    CLI11_PARSE(app, argc, argv);

    try {
        illiqnet::PipelineConfig config;
        if (!config_path.empty()) config = illiqnet::PipelineConfig::parse_file(config_path);
        if (seed >= 0) config.set("seed", std::to_string(seed));
        if (workers >= 0) config.set("workers", std::to_string(workers));
        if (!out_dir.empty()) {
            config.set("out", out_dir);
        } else if (const char* env = std::getenv("ILLIQNET_OUT");
                   env && *env && config.out == "out") {
            config.set("out", env);  // fallback when neither flag nor config set one
        }
        config.synth.seed = config.seed;
        config.validate();

        illiqnet::Pipeline pipeline(config);
        if (auto range = parse_day_range(days_range))
            pipeline.set_day_range(range->first, range->second);

        std::string sub = app.get_subcommands().front()->get_name();
        return pipeline.run(sub, quote_files, meta_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
