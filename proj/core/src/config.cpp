#include "illiqnet/config.hpp"

#include <fstream>
#include <sstream>

#include "illiqnet/csv.hpp"
#include "illiqnet/dates.hpp"
#include "illiqnet/errors.hpp"

namespace illiqnet {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

int to_int(const std::string& key, const std::string& v, long lo, long hi) {
    auto parsed = parse_long(v);
    if (!parsed || *parsed < lo || *parsed > hi)
        throw ConfigError("config: " + key + " must be an integer in [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "], got '" + v + "'");
    return int(*parsed);
}

double to_double(const std::string& key, const std::string& v, double lo, double hi) {
    auto parsed = parse_double(v);
    if (!parsed || *parsed < lo || *parsed > hi)
        throw ConfigError("config: " + key + " out of range, got '" + v + "'");
    return *parsed;
}

std::vector<int> parse_day_list(const std::string& v) {
    std::vector<int> out;
    if (trim(v).empty()) return out;
    for (const auto& tok : split(v, ',')) {
        auto d = parse_long(trim(tok));
        if (!d || *d < 0) throw ConfigError("config: bad day index '" + tok + "'");
        out.push_back(int(*d));
    }
    return out;
}

std::vector<std::pair<std::string, double>> parse_sectors(const std::string& v) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& tok : split(v, ',')) {
        auto pos = tok.rfind(':');
        if (pos == std::string::npos)
            throw ConfigError("config: synth.sectors entries must be label:fraction");
        auto frac = parse_double(trim(tok.substr(pos + 1)));
        if (!frac) throw ConfigError("config: bad sector fraction in '" + tok + "'");
        out.emplace_back(trim(tok.substr(0, pos)), *frac);
    }
    return out;
}

std::string join_days(const std::vector<int>& days) {
    std::string out;
    for (size_t i = 0; i < days.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(days[i]);
    }
    return out;
}

std::string join_sectors(const std::vector<std::pair<std::string, double>>& sectors) {
    std::string out;
    for (size_t i = 0; i < sectors.size(); ++i) {
        if (i) out += ',';
        out += sectors[i].first + ':' + format_full(sectors[i].second);
    }
    return out;
}

}  // namespace

void PipelineConfig::set(const std::string& key, const std::string& value) {
    if (key == "bins") bins = to_int(key, value, 2, 256);
    else if (key == "threshold_step") threshold_step = to_double(key, value, 1e-6, 1.0);
    else if (key == "peak_window") peak_window = to_int(key, value, 1, kMinutesPerDay);
    else if (key == "peak_min_height") peak_min_height = to_int(key, value, 1, 1 << 20);
    else if (key == "shuffles") shuffles = to_int(key, value, 1, 1 << 20);
    else if (key == "interval_len") interval_len = to_int(key, value, 1, kMinutesPerDay);
    else if (key == "signal_window") signal_window = to_int(key, value, 1, 365);
    else if (key == "crash_threshold") crash_threshold = to_int(key, value, 1, 1 << 30);
    else if (key == "seed") {
        auto parsed = parse_long(value);
        if (!parsed || *parsed < 0) throw ConfigError("config: bad seed '" + value + "'");
        seed = uint64_t(*parsed);
    }
    else if (key == "workers") workers = to_int(key, value, 0, 4096);
    else if (key == "out") out = value;
    else if (key == "fear_csv") fear_csv = value;
    else if (key == "synth.n_stocks") synth.n_stocks = to_int(key, value, 4, 100000);
    else if (key == "synth.n_days") synth.n_days = to_int(key, value, 1, 10000);
    else if (key == "synth.crash_days") synth.crash_days = parse_day_list(value);
    else if (key == "synth.base_coupling") synth.base_coupling = to_double(key, value, 0.0, 0.999);
    else if (key == "synth.crash_coupling") synth.crash_coupling = to_double(key, value, 0.0, 0.999);
    else if (key == "synth.sector_coupling") synth.sector_coupling = to_double(key, value, 0.0, 0.999);
    else if (key == "synth.crash_shift") synth.crash_shift = to_double(key, value, 0.0, 10.0);
    else if (key == "synth.fail_frac") synth.fail_frac = to_double(key, value, 0.001, 1.0);
    else if (key == "synth.seed_group") synth.seed_group = value;
    else if (key == "synth.stress_days") synth.stress_days = to_int(key, value, 0, 30);
    else if (key == "synth.stress_fail_frac") synth.stress_fail_frac = to_double(key, value, 0.0, 0.5);
    else if (key == "synth.panic_intensity") synth.panic_intensity = to_double(key, value, 0.0, 100.0);
    else if (key == "synth.sectors") synth.sectors = parse_sectors(value);
    else if (key == "synth.snapshot_rate") synth.snapshot_rate = to_int(key, value, 1, 60);
    else if (key == "synth.start_date") synth.start_date = value;
    else throw ConfigError("config: unknown key '" + key + "'");
}

PipelineConfig PipelineConfig::parse(std::istream& in) {
    PipelineConfig cfg;
    std::string line;
    long ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto pos = t.find('=');
        if (pos == std::string::npos)
            throw ConfigError("config: expected key=value at line " + std::to_string(ln));
        cfg.set(trim(t.substr(0, pos)), trim(t.substr(pos + 1)));
    }
    cfg.synth.seed = cfg.seed;
    cfg.validate();
    return cfg;
}

PipelineConfig PipelineConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse(in);
}

void PipelineConfig::validate() const {
    if (!is_valid_date(synth.start_date))
        throw ConfigError("config: synth.start_date must be YYYY-MM-DD");
    synth.validate();
}

std::map<std::string, std::string> PipelineConfig::canonical() const {
    std::map<std::string, std::string> kv;
    kv["bins"] = std::to_string(bins);
    kv["threshold_step"] = format_full(threshold_step);
    kv["peak_window"] = std::to_string(peak_window);
    kv["peak_min_height"] = std::to_string(peak_min_height);
    kv["shuffles"] = std::to_string(shuffles);
    kv["interval_len"] = std::to_string(interval_len);
    kv["signal_window"] = std::to_string(signal_window);
    kv["crash_threshold"] = std::to_string(crash_threshold);
    kv["seed"] = std::to_string(seed);
    kv["synth.n_stocks"] = std::to_string(synth.n_stocks);
    kv["synth.n_days"] = std::to_string(synth.n_days);
    kv["synth.crash_days"] = join_days(synth.crash_days);
    kv["synth.base_coupling"] = format_full(synth.base_coupling);
    kv["synth.crash_coupling"] = format_full(synth.crash_coupling);
    kv["synth.sector_coupling"] = format_full(synth.sector_coupling);
    kv["synth.crash_shift"] = format_full(synth.crash_shift);
    kv["synth.fail_frac"] = format_full(synth.fail_frac);
    kv["synth.seed_group"] = synth.seed_group;
    kv["synth.stress_days"] = std::to_string(synth.stress_days);
    kv["synth.stress_fail_frac"] = format_full(synth.stress_fail_frac);
    kv["synth.panic_intensity"] = format_full(synth.panic_intensity);
    kv["synth.sectors"] = join_sectors(synth.sectors);
    kv["synth.snapshot_rate"] = std::to_string(synth.snapshot_rate);
    kv["synth.start_date"] = synth.start_date;
    return kv;
}

std::string PipelineConfig::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [k, v] : canonical()) {
        feed(k);
        feed("=");
        feed(v);
        feed("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace illiqnet
