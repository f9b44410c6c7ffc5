#include "illiqnet/illiquidity.hpp"

#include <cmath>
#include <map>

#include "illiqnet/csv.hpp"
#include "illiqnet/errors.hpp"

namespace illiqnet {

double compute_illiquidity(const QuoteSnapshot& s) {
    if (!s.has_ask() || !s.has_bid())
        throw StateError("compute_illiquidity: side empty; classify the state instead");
    double ask_sum = 0, bid_sum = 0;
    for (size_t i = 0; i < s.ask_prices.size(); ++i) ask_sum += s.ask_prices[i] * s.ask_volumes[i];
    for (size_t j = 0; j < s.bid_prices.size(); ++j) bid_sum += s.bid_prices[j] * s.bid_volumes[j];
    double p_mid = (s.ask_prices[0] + s.bid_prices[0]) / 2.0;
    return (ask_sum - bid_sum) / double(kBookLevels) / p_mid * 1e4;
}

LiquidityState classify_state(const QuoteSnapshot& s) {
    if (s.has_ask() && s.has_bid()) return LiquidityState::Quoted;
    if (s.has_ask()) return LiquidityState::NoBid;
    if (s.has_bid()) return LiquidityState::NoAsk;
    return LiquidityState::NoQuote;
}

std::vector<NoBidEpisode> no_bid_episodes(const IlliquiditySeries& series) {
    std::vector<NoBidEpisode> out;
    auto in_episode = [](LiquidityState st) {
        return st == LiquidityState::NoBid || st == LiquidityState::NoQuote;
    };
    int m = 0;
    const int n = int(series.slots.size());
    while (m < n) {
        if (!in_episode(series.slots[size_t(m)].state)) {
            ++m;
            continue;
        }
        NoBidEpisode ep;
        ep.stock_id = series.stock_id;
        ep.date = series.date;
        ep.start_minute = m;
        while (m < n && in_episode(series.slots[size_t(m)].state)) {
            ep.max_ask_volume = std::max(ep.max_ask_volume, series.slots[size_t(m)].ask_volume);
            ++m;
        }
        ep.duration_minutes = m - ep.start_minute;
        out.push_back(std::move(ep));
    }
    return out;
}

double daily_market_illiquidity(std::span<const IlliquiditySeries> series) {
    double total = 0;
    int stocks = 0;
    for (const auto& s : series) {
        double sum = 0;
        int quoted = 0;
        for (const auto& slot : s.slots) {
            if (slot.quoted()) {
                sum += slot.value;
                ++quoted;
            }
        }
        if (quoted > 0) {
            total += sum / double(quoted);
            ++stocks;
        }
    }
    if (stocks == 0)
        throw UndefinedStatError("daily_market_illiquidity: no Quoted slot in any series");
    return total / double(stocks);
}

IlliquiditySeries impute_missing(const IlliquiditySeries& series) {
    IlliquiditySeries out = series;
    const int n = int(out.slots.size());
    // nearest Quoted slot on each side of every position
    std::vector<int> prev(size_t(n), -1), next(size_t(n), -1);
    int last = -1;
    for (int i = 0; i < n; ++i) {
        prev[size_t(i)] = last;
        if (out.slots[size_t(i)].quoted()) last = i;
    }
    last = -1;
    for (int i = n - 1; i >= 0; --i) {
        next[size_t(i)] = last;
        if (out.slots[size_t(i)].quoted()) last = i;
    }
    for (int i = 0; i < n; ++i) {
        MinuteSlot& slot = out.slots[size_t(i)];
        if (slot.state != LiquidityState::Missing) continue;
        int p = prev[size_t(i)], q = next[size_t(i)];
        double v;
        if (p >= 0 && q >= 0) {
            double vp = out.slots[size_t(p)].value, vq = out.slots[size_t(q)].value;
            v = vp + (vq - vp) * double(i - p) / double(q - p);
        } else if (p >= 0) {
            v = out.slots[size_t(p)].value;
        } else if (q >= 0) {
            v = out.slots[size_t(q)].value;
        } else {
            continue;  // no Quoted slot anywhere; leave Missing
        }
        slot.state = LiquidityState::Quoted;
        slot.value = v;
    }
    return out;
}

void write_series_csv(std::ostream& out, std::span<const IlliquiditySeries> series,
                      const std::string& config_hash) {
    write_artifact_header(out, config_hash);
    out << "date,stock_id,minute,state,value\n";
    for (const auto& s : series) {
        for (int m = 0; m < int(s.slots.size()); ++m) {
            const MinuteSlot& slot = s.slots[size_t(m)];
            out << s.date << ',' << s.stock_id << ',' << m << ',' << to_string(slot.state) << ',';
            if (slot.quoted()) out << format_full(slot.value);
            out << "\n";
        }
    }
}

void write_book_csv(std::ostream& out, std::span<const IlliquiditySeries> series,
                    const std::string& config_hash) {
    write_artifact_header(out, config_hash);
    out << "date,stock_id,minute,best_ask,best_bid,ask_volume\n";
    for (const auto& s : series) {
        for (int m = 0; m < int(s.slots.size()); ++m) {
            const MinuteSlot& slot = s.slots[size_t(m)];
            bool has_ask = !std::isnan(slot.best_ask);
            bool has_bid = !std::isnan(slot.best_bid);
            if (!has_ask && !has_bid && slot.ask_volume == 0) continue;
            out << s.date << ',' << s.stock_id << ',' << m << ',';
            if (has_ask) out << format_full(slot.best_ask);
            out << ',';
            if (has_bid) out << format_full(slot.best_bid);
            out << ',' << format_full(slot.ask_volume) << "\n";
        }
    }
}

void read_book_csv(std::istream& in, std::vector<IlliquiditySeries>& series) {
    CsvReader reader(in);
    std::string header;
    read_artifact_header(reader, header, /*require_tag=*/true);
    if (header != "date,stock_id,minute,best_ask,best_bid,ask_volume")
        throw FormatError("unexpected book CSV header: '" + header + "'");

    std::map<std::pair<std::string, std::string>, IlliquiditySeries*> index;
    for (auto& s : series) index[{s.date, s.stock_id}] = &s;

    std::string line;
    while (reader.next(line)) {
        if (line[0] == '#') continue;
        long ln = reader.line_number();
        auto f = split(line, ',');
        if (f.size() != 6) throw ValidationError("expected 6 fields", ln);
        auto it = index.find({f[0], f[1]});
        if (it == index.end()) continue;
        auto minute = parse_long(f[2]);
        if (!minute || *minute < 0 || *minute >= kMinutesPerDay)
            throw ValidationError("bad minute index", ln);
        MinuteSlot& slot = it->second->slots[size_t(*minute)];
        if (!f[3].empty()) slot.best_ask = parse_double(f[3]).value_or(quiet_nan());
        if (!f[4].empty()) slot.best_bid = parse_double(f[4]).value_or(quiet_nan());
        if (!f[5].empty()) slot.ask_volume = parse_double(f[5]).value_or(0.0);
    }
}

std::vector<IlliquiditySeries> read_series_csv(std::istream& in) {
    CsvReader reader(in);
    std::string header;
    read_artifact_header(reader, header, /*require_tag=*/true);
    if (header != "date,stock_id,minute,state,value")
        throw FormatError("unexpected series CSV header: '" + header + "'");

    std::map<std::pair<std::string, std::string>, IlliquiditySeries> acc;
    std::string line;
    while (reader.next(line)) {
        if (line[0] == '#') continue;
        long ln = reader.line_number();
        auto f = split(line, ',');
        if (f.size() != 5) throw ValidationError("expected 5 fields", ln);
        auto minute = parse_long(f[2]);
        if (!minute || *minute < 0 || *minute >= kMinutesPerDay)
            throw ValidationError("bad minute index", ln);
        auto state = liquidity_state_from_string(f[3]);
        if (!state) throw ValidationError("bad state '" + f[3] + "'", ln);
        auto key = std::make_pair(f[0], f[1]);
        auto it = acc.find(key);
        if (it == acc.end())
            it = acc.emplace(key, IlliquiditySeries(f[1], f[0])).first;
        MinuteSlot& slot = it->second.slots[size_t(*minute)];
        slot.state = *state;
        if (*state == LiquidityState::Quoted) {
            auto v = parse_double(f[4]);
            if (!v) throw ValidationError("Quoted slot without value", ln);
            slot.value = *v;
        }
    }
    std::vector<IlliquiditySeries> out;
    out.reserve(acc.size());
    for (auto& [k, s] : acc) out.push_back(std::move(s));
    return out;
}

}  // namespace illiqnet
