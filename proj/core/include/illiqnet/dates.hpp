#pragma once

#include <string>
#include <vector>

namespace illiqnet {

/// Dates are ISO "YYYY-MM-DD" strings throughout; these helpers cover the
/// synthetic calendar (consecutive weekdays) and validation.

bool is_valid_date(const std::string& iso);

/// n consecutive weekdays starting at `start` (start itself shifted to the
/// next weekday if it falls on a weekend).
std::vector<std::string> weekday_sequence(const std::string& start, int n);

/// Compact YYYYMMDD form used in the binary matrix header; 0 if unparsable.
uint32_t date_to_u32(const std::string& iso);
std::string date_from_u32(uint32_t ymd);

}  // namespace illiqnet
