#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace illiqnet {

/// Minimal CSV helpers for the artifact formats: comma-split rows, `;`-joined
/// sublists, leading `#` comment lines, fixed decimal formatting. No quoting
/// dialects; artifact fields never contain commas.

std::vector<std::string> split(std::string_view line, char sep);

std::optional<double> parse_double(std::string_view s);
std::optional<long> parse_long(std::string_view s);

/// Fixed formatting so re-emitting an artifact is byte-identical.
std::string format_double(double v, int decimals);
/// Shortest round-trip representation, for values whose scale is data-driven.
std::string format_full(double v);

/// Line reader that tracks 1-based line numbers and collects leading comment
/// lines (`#...`) separately from data rows.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    /// Reads the next non-empty line; returns false at EOF.
    bool next(std::string& line);
    long line_number() const { return line_; }

private:
    std::istream& in_;
    long line_ = 0;
};

/// Reads leading `#` comment lines, verifies the first is `#illiqnet-v1`, and
/// returns the embedded config hash if a `#config=` line is present.
/// Throws FormatError when `require_tag` and the tag is absent.
std::optional<std::string> read_artifact_header(CsvReader& reader, std::string& first_data_line,
                                                bool require_tag);

/// Writes the version tag plus optional config-hash comment.
void write_artifact_header(std::ostream& out, const std::string& config_hash);

}  // namespace illiqnet
