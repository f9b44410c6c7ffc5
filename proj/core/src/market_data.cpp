#include "illiqnet/market_data.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>

#include "illiqnet/csv.hpp"
#include "illiqnet/errors.hpp"
#include "illiqnet/illiquidity.hpp"
#include "illiqnet/parallel.hpp"

namespace illiqnet {

namespace {

constexpr char kBinaryMagic[4] = {'I', 'L', 'Q', 'Q'};
constexpr uint8_t kBinaryVersion = 1;

const char* kQuoteHeader = "stock_id,ts,ask_prices,ask_volumes,bid_prices,bid_volumes";

std::string parse_side(const std::string& prices_field, const std::string& volumes_field,
                       std::vector<double>& prices, std::vector<double>& volumes) {
    if (prices_field.empty() != volumes_field.empty())
        return "one of price/volume fields empty on a side";
    if (prices_field.empty()) return "";
    for (const auto& tok : split(prices_field, ';')) {
        auto v = parse_double(tok);
        if (!v) return "bad price '" + tok + "'";
        prices.push_back(*v);
    }
    for (const auto& tok : split(volumes_field, ';')) {
        auto v = parse_double(tok);
        if (!v) return "bad volume '" + tok + "'";
        volumes.push_back(*v);
    }
    return "";
}

}  // namespace

std::string validate_snapshot(const QuoteSnapshot& s) {
    if (s.stock_id.empty()) return "empty stock_id";
    if (s.ts < 0) return "negative ts";
    if (s.ask_prices.size() != s.ask_volumes.size()) return "ask price/volume length mismatch";
    if (s.bid_prices.size() != s.bid_volumes.size()) return "bid price/volume length mismatch";
    if (s.ask_prices.size() > kBookLevels || s.bid_prices.size() > kBookLevels)
        return "more than 10 book levels";
    for (double p : s.ask_prices)
        if (!(p > 0)) return "non-positive ask price";
    for (double p : s.bid_prices)
        if (!(p > 0)) return "non-positive bid price";
    for (double v : s.ask_volumes)
        if (v < 0) return "negative ask volume";
    for (double v : s.bid_volumes)
        if (v < 0) return "negative bid volume";
    for (size_t i = 1; i < s.ask_prices.size(); ++i)
        if (!(s.ask_prices[i] > s.ask_prices[i - 1])) return "ask prices not strictly ascending";
    for (size_t i = 1; i < s.bid_prices.size(); ++i)
        if (!(s.bid_prices[i] < s.bid_prices[i - 1])) return "bid prices not strictly descending";
    if (s.has_ask() && s.has_bid() && !(s.ask_prices[0] > s.bid_prices[0]))
        return "crossed book (ask <= bid)";
    return "";
}

namespace {

QuoteParseResult parse_quotes_csv(std::istream& in, bool strict) {
    CsvReader reader(in);
    std::string header;
    read_artifact_header(reader, header, /*require_tag=*/true);
    if (header != kQuoteHeader)
        throw FormatError("unexpected quote CSV header: '" + header + "'");

    QuoteParseResult result;
    std::unordered_map<std::string, int> last_ts;
    std::string line;
    auto reject = [&](long ln, std::string reason) {
        if (strict) throw ValidationError(reason, ln);
        result.rejected.push_back({ln, std::move(reason)});
    };
    while (reader.next(line)) {
        if (line[0] == '#') continue;
        ++result.total_rows;
        long ln = reader.line_number();
        auto fields = split(line, ',');
        if (fields.size() != 6) {
            reject(ln, "expected 6 fields, got " + std::to_string(fields.size()));
            continue;
        }
        QuoteSnapshot snap;
        snap.stock_id = fields[0];
        auto ts = parse_long(fields[1]);
        if (!ts) {
            reject(ln, "bad ts '" + fields[1] + "'");
            continue;
        }
        snap.ts = int(*ts);
        std::string err = parse_side(fields[2], fields[3], snap.ask_prices, snap.ask_volumes);
        if (err.empty()) err = parse_side(fields[4], fields[5], snap.bid_prices, snap.bid_volumes);
        if (err.empty()) err = validate_snapshot(snap);
        if (err.empty()) {
            auto it = last_ts.find(snap.stock_id);
            if (it != last_ts.end() && snap.ts < it->second)
                err = "ts out of order for stock " + snap.stock_id;
        }
        if (!err.empty()) {
            reject(ln, err);
            continue;
        }
        last_ts[snap.stock_id] = snap.ts;
        result.snapshots.push_back(std::move(snap));
    }
    return result;
}

template <typename T>
bool read_raw(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return bool(in);
}

template <typename T>
void write_raw(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

QuoteParseResult parse_quotes_binary(std::istream& in, bool strict) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kBinaryMagic, 4) != 0)
        throw FormatError("bad quote binary magic");
    uint8_t version = 0;
    if (!read_raw(in, version) || version != kBinaryVersion)
        throw FormatError("unsupported quote binary version");

    QuoteParseResult result;
    std::unordered_map<std::string, int> last_ts;
    long record = 0;
    auto reject = [&](std::string reason) {
        if (strict) throw ValidationError(reason, record);
        result.rejected.push_back({record, std::move(reason)});
    };
    for (;;) {
        uint16_t id_len = 0;
        if (!read_raw(in, id_len)) break;  // clean EOF
        ++record;
        ++result.total_rows;
        QuoteSnapshot snap;
        snap.stock_id.resize(id_len);
        in.read(snap.stock_id.data(), id_len);
        uint32_t ts = 0;
        if (!in || !read_raw(in, ts)) throw FormatError("truncated quote record");
        snap.ts = int(ts);
        auto read_side = [&](std::vector<double>& prices, std::vector<double>& volumes) {
            uint8_t n = 0;
            if (!read_raw(in, n)) throw FormatError("truncated quote record");
            for (int i = 0; i < n; ++i) {
                double p, v;
                if (!read_raw(in, p) || !read_raw(in, v))
                    throw FormatError("truncated quote record");
                prices.push_back(p);
                volumes.push_back(v);
            }
        };
        read_side(snap.ask_prices, snap.ask_volumes);
        read_side(snap.bid_prices, snap.bid_volumes);
        std::string err = validate_snapshot(snap);
        if (err.empty()) {
            auto it = last_ts.find(snap.stock_id);
            if (it != last_ts.end() && snap.ts < it->second)
                err = "ts out of order for stock " + snap.stock_id;
        }
        if (!err.empty()) {
            reject(err);
            continue;
        }
        last_ts[snap.stock_id] = snap.ts;
        result.snapshots.push_back(std::move(snap));
    }
    return result;
}

}  // namespace

QuoteParseResult parse_quotes(std::istream& in, QuoteFormat format, bool strict) {
    if (format == QuoteFormat::Auto) {
        int c = in.peek();
        format = (c == '#') ? QuoteFormat::Csv : QuoteFormat::Binary;
    }
    return format == QuoteFormat::Csv ? parse_quotes_csv(in, strict)
                                      : parse_quotes_binary(in, strict);
}

namespace {

std::string join_levels(const std::vector<double>& xs, int decimals) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ';';
        // volumes are whole shares in practice; keep them integral when exact
        if (decimals == 0 && xs[i] == std::floor(xs[i]))
            out += format_double(xs[i], 0);
        else
            out += format_full(xs[i]);
    }
    return out;
}

}  // namespace

void write_quotes_csv(std::ostream& out, std::span<const QuoteSnapshot> snaps,
                      const std::string& config_hash) {
    write_artifact_header(out, config_hash);
    out << kQuoteHeader << "\n";
    for (const auto& s : snaps) {
        out << s.stock_id << ',' << s.ts << ',' << join_levels(s.ask_prices, 2) << ','
            << join_levels(s.ask_volumes, 0) << ',' << join_levels(s.bid_prices, 2) << ','
            << join_levels(s.bid_volumes, 0) << "\n";
    }
}

void write_quotes_binary(std::ostream& out, std::span<const QuoteSnapshot> snaps) {
    out.write(kBinaryMagic, 4);
    write_raw(out, kBinaryVersion);
    for (const auto& s : snaps) {
        write_raw(out, uint16_t(s.stock_id.size()));
        out.write(s.stock_id.data(), std::streamsize(s.stock_id.size()));
        write_raw(out, uint32_t(s.ts));
        auto write_side = [&](const std::vector<double>& prices,
                              const std::vector<double>& volumes) {
            write_raw(out, uint8_t(prices.size()));
            for (size_t i = 0; i < prices.size(); ++i) {
                write_raw(out, prices[i]);
                write_raw(out, volumes[i]);
            }
        };
        write_side(s.ask_prices, s.ask_volumes);
        write_side(s.bid_prices, s.bid_volumes);
    }
}

StockDayAggregate aggregate_minute(std::span<const QuoteSnapshot> snaps) {
    StockDayAggregate agg;
    agg.slots.assign(kMinutesPerDay, MinuteSlot{});
    if (!snaps.empty()) agg.stock_id = snaps.front().stock_id;

    size_t i = 0;
    for (int m = 0; m < kMinutesPerDay; ++m) {
        int lo = m * kSecondsPerMinute, hi = lo + kSecondsPerMinute;
        double value_sum = 0;
        int quoted = 0;
        int state_count[4] = {0, 0, 0, 0};  // indexed by severity_rank
        const QuoteSnapshot* last = nullptr;
        while (i < snaps.size() && snaps[i].ts < hi) {
            if (snaps[i].ts < lo) {  // pre-session; only possible for m == 0
                ++i;
                continue;
            }
            const QuoteSnapshot& s = snaps[i];
            LiquidityState st = classify_state(s);
            ++state_count[severity_rank(st)];
            if (st == LiquidityState::Quoted) {
                value_sum += compute_illiquidity(s);
                ++quoted;
            }
            last = &s;
            ++i;
        }
        MinuteSlot& slot = agg.slots[size_t(m)];
        int total = state_count[0] + state_count[1] + state_count[2] + state_count[3];
        if (total == 0) continue;  // stays Missing
        // majority state, ties broken toward the more severe state
        int best = 0;
        for (int r = 1; r < 4; ++r)
            if (state_count[r] >= state_count[best]) best = r;
        static const LiquidityState kByRank[4] = {LiquidityState::Quoted, LiquidityState::NoAsk,
                                                  LiquidityState::NoBid, LiquidityState::NoQuote};
        slot.state = kByRank[best];
        if (slot.state == LiquidityState::Quoted && quoted > 0)
            slot.value = value_sum / double(quoted);
        if (last) {
            if (last->has_ask()) slot.best_ask = last->ask_prices[0];
            if (last->has_bid()) slot.best_bid = last->bid_prices[0];
            slot.ask_volume = last->total_ask_volume();
        }
    }
    agg.out_of_session = long(snaps.size() - i);
    return agg;
}

std::vector<StockDayAggregate> aggregate_day(std::span<const QuoteSnapshot> snaps, int workers) {
    // group by stock, preserving ts order within each
    std::map<std::string, std::vector<QuoteSnapshot>> by_stock;
    for (const auto& s : snaps) by_stock[s.stock_id].push_back(s);

    std::vector<const std::vector<QuoteSnapshot>*> groups;
    groups.reserve(by_stock.size());
    for (auto& [id, vec] : by_stock) groups.push_back(&vec);

    std::vector<StockDayAggregate> out(groups.size());
    parallel_for(groups.size(), workers,
                 [&](size_t g) { out[g] = aggregate_minute(*groups[g]); });
    return out;
}

IlliquiditySeries to_series(const StockDayAggregate& agg, const std::string& date) {
    IlliquiditySeries s(agg.stock_id, date);
    s.slots = agg.slots;
    return s;
}

const StockMeta* MetadataTable::find(const std::string& date, const std::string& stock_id) const {
    auto d = by_date_.find(date);
    if (d == by_date_.end()) return nullptr;
    auto s = d->second.find(stock_id);
    return s == d->second.end() ? nullptr : &s->second;
}

const std::map<std::string, StockMeta>* MetadataTable::for_date(const std::string& date) const {
    auto d = by_date_.find(date);
    return d == by_date_.end() ? nullptr : &d->second;
}

void MetadataTable::insert(const std::string& date, StockMeta meta) {
    by_date_[date][meta.stock_id] = std::move(meta);
}

size_t MetadataTable::size() const {
    size_t n = 0;
    for (const auto& [d, m] : by_date_) n += m.size();
    return n;
}

MetadataTable load_metadata(std::istream& in) {
    CsvReader reader(in);
    std::string header;
    read_artifact_header(reader, header, /*require_tag=*/true);
    auto cols = split(header, ',');
    bool has_ratio = cols.size() == 6 && cols[5] == "limit_ratio";
    if (!(cols.size() == 5 || has_ratio) || cols[0] != "date" || cols[1] != "stock_id" ||
        cols[2] != "sector" || cols[3] != "cap_style" || cols[4] != "prev_close")
        throw FormatError("unexpected metadata CSV header: '" + header + "'");

    MetadataTable table;
    std::string line;
    while (reader.next(line)) {
        if (line[0] == '#') continue;
        long ln = reader.line_number();
        auto fields = split(line, ',');
        if (fields.size() != cols.size())
            throw ValidationError("expected " + std::to_string(cols.size()) + " fields", ln);
        StockMeta meta;
        meta.stock_id = fields[1];
        meta.sector = fields[2];
        meta.cap_style = fields[3];
        if (!is_valid_sector(meta.sector))
            throw ValidationError("unknown sector '" + meta.sector + "'", ln);
        if (!is_valid_cap_style(meta.cap_style))
            throw ValidationError("unknown cap style '" + meta.cap_style + "'", ln);
        auto close = parse_double(fields[4]);
        if (!close || !(*close > 0)) throw ValidationError("bad prev_close", ln);
        meta.prev_close = *close;
        if (has_ratio && !fields[5].empty()) {
            auto ratio = parse_double(fields[5]);
            if (!ratio || !(*ratio > 0 && *ratio < 1)) throw ValidationError("bad limit_ratio", ln);
            meta.limit_ratio = *ratio;
        }
        meta.down_limit_price = down_limit_price(meta.prev_close, meta.limit_ratio);
        table.insert(fields[0], std::move(meta));
    }
    return table;
}

void write_metadata_csv(std::ostream& out, const MetadataTable& table,
                        const std::string& config_hash) {
    write_artifact_header(out, config_hash);
    out << "date,stock_id,sector,cap_style,prev_close,limit_ratio\n";
    for (const auto& [date, stocks] : table.all())
        for (const auto& [id, m] : stocks)
            out << date << ',' << id << ',' << m.sector << ',' << m.cap_style << ','
                << format_double(m.prev_close, 2) << ',' << format_full(m.limit_ratio) << "\n";
}

}  // namespace illiqnet
