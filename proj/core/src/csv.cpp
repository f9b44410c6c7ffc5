#include "illiqnet/csv.hpp"

#include <charconv>
#include <cstdio>

#include "illiqnet/errors.hpp"
#include "illiqnet/types.hpp"

namespace illiqnet {

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<long> parse_long(std::string_view s) {
    if (s.empty()) return std::nullopt;
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string format_double(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // shortest representation that round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char probe[64];
        std::snprintf(probe, sizeof probe, "%.*g", prec, v);
        double back = 0;
        std::from_chars(probe, probe + std::char_traits<char>::length(probe), back);
        if (back == v) return probe;
    }
    return buf;
}

bool CsvReader::next(std::string& line) {
    while (std::getline(in_, line)) {
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        return true;
    }
    return false;
}

std::optional<std::string> read_artifact_header(CsvReader& reader, std::string& first_data_line,
                                                bool require_tag) {
    std::optional<std::string> config_hash;
    bool saw_tag = false;
    std::string line;
    while (reader.next(line)) {
        if (line[0] != '#') {
            if (require_tag && !saw_tag)
                throw FormatError(std::string("missing ") + kFormatTag + " version comment");
            first_data_line = line;
            return config_hash;
        }
        if (line == kFormatTag) {
            saw_tag = true;
        } else if (line.rfind("#config=", 0) == 0) {
            config_hash = line.substr(8);
        }
        // other comment lines are ignored
    }
    if (require_tag && !saw_tag)
        throw FormatError(std::string("missing ") + kFormatTag + " version comment");
    first_data_line.clear();
    return config_hash;
}

void write_artifact_header(std::ostream& out, const std::string& config_hash) {
    out << kFormatTag << "\n";
    if (!config_hash.empty()) out << "#config=" << config_hash << "\n";
}

}  // namespace illiqnet
