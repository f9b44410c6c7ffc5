#include "illiqnet/types.hpp"

#include <algorithm>
#include <cmath>

namespace illiqnet {

const char* to_string(LiquidityState s) {
    switch (s) {
        case LiquidityState::Quoted: return "Quoted";
        case LiquidityState::NoAsk: return "NoAsk";
        case LiquidityState::NoBid: return "NoBid";
        case LiquidityState::NoQuote: return "NoQuote";
        case LiquidityState::Missing: return "Missing";
    }
    return "?";
}

std::optional<LiquidityState> liquidity_state_from_string(const std::string& s) {
    if (s == "Quoted") return LiquidityState::Quoted;
    if (s == "NoAsk") return LiquidityState::NoAsk;
    if (s == "NoBid") return LiquidityState::NoBid;
    if (s == "NoQuote") return LiquidityState::NoQuote;
    if (s == "Missing") return LiquidityState::Missing;
    return std::nullopt;
}

int severity_rank(LiquidityState s) {
    switch (s) {
        case LiquidityState::Quoted: return 0;
        case LiquidityState::NoAsk: return 1;
        case LiquidityState::NoBid: return 2;
        case LiquidityState::NoQuote: return 3;
        case LiquidityState::Missing: return -1;  // absence of data, not a quote state
    }
    return -1;
}

double down_limit_price(double prev_close, double limit_ratio) {
    double raw = prev_close * (1.0 - limit_ratio);
    return std::floor(raw * 100.0 + 0.5) / 100.0;
}

const std::vector<std::string>& sector_labels() {
    static const std::vector<std::string> labels = {
        "Agriculture",
        "Communication and cultural",
        "Comprehensive",
        "Construction",
        "Electricity gas water",
        "Extractive",
        "Financial",
        "Information technology",
        "Manufacturing",
        "Real estate",
        "Retailing",
        "Service",
        "Transportation",
    };
    return labels;
}

const std::vector<std::string>& cap_style_labels() {
    static const std::vector<std::string> labels = {
        "Small-cap-growth", "Small-cap-balance", "Small-cap-value",
        "Mid-cap-growth",   "Mid-cap-balance",   "Mid-cap-value",
        "Large-cap-growth", "Large-cap-balance", "Large-cap-value",
    };
    return labels;
}

bool is_valid_sector(const std::string& s) {
    const auto& ls = sector_labels();
    return std::find(ls.begin(), ls.end(), s) != ls.end();
}

bool is_valid_cap_style(const std::string& s) {
    const auto& ls = cap_style_labels();
    return std::find(ls.begin(), ls.end(), s) != ls.end();
}

}  // namespace illiqnet
