#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace illiqnet {

/// A-share continuous session, collective-bid tail excluded: 237 one-minute slots.
inline constexpr int kMinutesPerDay = 237;
inline constexpr int kSecondsPerMinute = 60;
inline constexpr int kSessionSeconds = kMinutesPerDay * kSecondsPerMinute;
inline constexpr int kBookLevels = 10;

/// First-line version comment carried by every CSV artifact.
inline constexpr const char* kFormatTag = "#illiqnet-v1";

inline double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

/// One timestamped order-book state for one stock. Up to 10 levels per side;
/// an empty side encodes no-ask / no-bid. Plain aggregate: parser-level
/// validation lives in market_data, not in the constructor.
struct QuoteSnapshot {
    std::string stock_id;
    int ts = 0;  // seconds since session start
    std::vector<double> ask_prices;   // ascending, [0] = best
    std::vector<double> ask_volumes;  // shares, aligned to ask_prices
    std::vector<double> bid_prices;   // descending, [0] = best
    std::vector<double> bid_volumes;

    bool has_ask() const { return !ask_prices.empty(); }
    bool has_bid() const { return !bid_prices.empty(); }
    double total_ask_volume() const {
        double s = 0;
        for (double v : ask_volumes) s += v;
        return s;
    }
};

enum class LiquidityState : uint8_t { Quoted, NoAsk, NoBid, NoQuote, Missing };

const char* to_string(LiquidityState s);
std::optional<LiquidityState> liquidity_state_from_string(const std::string& s);

/// Severity used when a minute slot holds mixed snapshot states.
int severity_rank(LiquidityState s);

/// Per-stock static metadata for one trading day.
struct StockMeta {
    std::string stock_id;
    std::string sector;
    std::string cap_style;
    double prev_close = 0.0;
    double limit_ratio = 0.10;  // ST stocks trade at 0.05
    double down_limit_price = 0.0;
};

/// down-limit = prev_close * (1 - ratio), rounded half-up to 0.01.
double down_limit_price(double prev_close, double limit_ratio = 0.10);

/// Closed label sets. Sector "Electricity gas water" keeps its canonical
/// comma-free spelling so labels stay CSV-safe.
const std::vector<std::string>& sector_labels();
const std::vector<std::string>& cap_style_labels();
bool is_valid_sector(const std::string& s);
bool is_valid_cap_style(const std::string& s);

/// One aggregated minute of a stock-day.
struct MinuteSlot {
    LiquidityState state = LiquidityState::Missing;
    double value = std::numeric_limits<double>::quiet_NaN();  // Eq-style illiquidity, Quoted only
    // Book context from the slot's last snapshot; NaN / 0 when absent.
    double best_ask = std::numeric_limits<double>::quiet_NaN();
    double best_bid = std::numeric_limits<double>::quiet_NaN();
    double ask_volume = 0.0;  // sum over ask levels of the last snapshot

    bool quoted() const { return state == LiquidityState::Quoted; }
};

/// One stock-day of exactly 237 minute slots.
struct IlliquiditySeries {
    std::string stock_id;
    std::string date;
    std::vector<MinuteSlot> slots;  // size kMinutesPerDay

    IlliquiditySeries() : slots(kMinutesPerDay) {}
    IlliquiditySeries(std::string id, std::string d)
        : stock_id(std::move(id)), date(std::move(d)), slots(kMinutesPerDay) {}
};

/// Maximal run of consecutive NoBid/NoQuote slots.
struct NoBidEpisode {
    std::string stock_id;
    std::string date;
    int start_minute = 0;
    int duration_minutes = 0;
    double max_ask_volume = 0.0;
};

}  // namespace illiqnet
