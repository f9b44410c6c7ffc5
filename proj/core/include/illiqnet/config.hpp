#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "illiqnet/synthetic_market.hpp"

namespace illiqnet {

/// Flat key=value configuration; '#' starts a comment line; unknown keys are
/// rejected. Every tunable analysis parameter lives here with its default
/// pinned.
struct PipelineConfig {
    int bins = 16;
    double threshold_step = 0.01;
    int peak_window = 10;
    int peak_min_height = 5;
    int shuffles = 100;
    int interval_len = 10;
    int signal_window = 5;
    int crash_threshold = 800;
    uint64_t seed = 12345;
    int workers = 0;  // 0 = hardware concurrency
    std::string out = "out";
    std::string fear_csv;  // optional external daily fear series

    SynthConfig synth;

    /// Parses key=value text; throws ConfigError on unknown keys or values
    /// outside their documented ranges.
    static PipelineConfig parse(std::istream& in);
    static PipelineConfig parse_file(const std::string& path);

    /// Applies one `key=value` override (CLI flags funnel through here too).
    void set(const std::string& key, const std::string& value);

    void validate() const;

    /// Canonical key=value form of every analysis-relevant parameter.
    /// Execution-only keys (`workers`, `out`, `fear_csv`) are excluded: they
    /// change where or how fast things run, not what the artifacts contain.
    std::map<std::string, std::string> canonical() const;

    /// FNV-1a 64 over the canonical form, 16 hex chars. Embedded in every
    /// artifact so stages refuse to mix runs.
    std::string hash() const;
};

}  // namespace illiqnet
