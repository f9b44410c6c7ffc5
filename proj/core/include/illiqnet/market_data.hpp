#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "illiqnet/types.hpp"

namespace illiqnet {

enum class QuoteFormat { Csv, Binary, Auto };

struct RejectedRow {
    long line;  // 1-based; record index for the binary format
    std::string reason;
};

struct QuoteParseResult {
    std::vector<QuoteSnapshot> snapshots;
    std::vector<RejectedRow> rejected;
    long total_rows = 0;  // parsed + rejected
};

/// Validates a snapshot against the book invariants; returns an error message
/// or empty string. Separate from construction so analytic code can evaluate
/// hypothetical books.
std::string validate_snapshot(const QuoteSnapshot& s);

/// Parses the documented CSV or length-prefixed binary quote format.
/// Malformed and invariant-violating rows are collected into `rejected` with
/// their row number; with `strict` the first bad row throws ValidationError.
/// An unreadable header always throws FormatError. Rows out of per-stock ts
/// order are rejected so the output is nondecreasing in ts per stock.
QuoteParseResult parse_quotes(std::istream& in, QuoteFormat format = QuoteFormat::Auto,
                              bool strict = false);

void write_quotes_csv(std::ostream& out, std::span<const QuoteSnapshot> snaps,
                      const std::string& config_hash = "");
void write_quotes_binary(std::ostream& out, std::span<const QuoteSnapshot> snaps);

/// Slot m covers ts in [60m, 60(m+1)). Always returns exactly 237 slots.
/// Slot value = mean Eq-1 illiquidity over the slot's Quoted snapshots; slot
/// state = majority state, ties toward the more severe state; empty slot =
/// Missing. Snapshots beyond the session are counted, not binned.
struct StockDayAggregate {
    std::string stock_id;
    std::vector<MinuteSlot> slots;  // kMinutesPerDay
    long out_of_session = 0;
};

/// Pre: all snapshots share one stock_id and are sorted by ts.
StockDayAggregate aggregate_minute(std::span<const QuoteSnapshot> snaps);

/// Groups a day's snapshots by stock (output sorted by stock_id) and
/// aggregates each; safe to fan out per stock.
std::vector<StockDayAggregate> aggregate_day(std::span<const QuoteSnapshot> snaps, int workers = 1);

IlliquiditySeries to_series(const StockDayAggregate& agg, const std::string& date);

/// Metadata for all dates in one file: date -> stock -> StockMeta.
class MetadataTable {
public:
    const StockMeta* find(const std::string& date, const std::string& stock_id) const;
    const std::map<std::string, StockMeta>* for_date(const std::string& date) const;
    void insert(const std::string& date, StockMeta meta);
    size_t size() const;
    const std::map<std::string, std::map<std::string, StockMeta>>& all() const { return by_date_; }

private:
    std::map<std::string, std::map<std::string, StockMeta>> by_date_;
};

/// Parses the metadata CSV (`date,stock_id,sector,cap_style,prev_close[,limit_ratio]`).
/// Unknown sector/style labels throw ValidationError with the line number.
MetadataTable load_metadata(std::istream& in);

void write_metadata_csv(std::ostream& out, const MetadataTable& table,
                        const std::string& config_hash = "");

}  // namespace illiqnet
