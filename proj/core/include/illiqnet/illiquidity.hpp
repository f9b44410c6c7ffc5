#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "illiqnet/types.hpp"

namespace illiqnet {

/// Depth-weighted spread divided by mid price, scaled by 1e4:
///
///     I = ( (1/10) * (sum_i A_i V_i - sum_j B_j V_j) / P_mid ) * 1e4
///
/// with P_mid = (best ask + best bid) / 2. When fewer than 10 levels exist the
/// sums run over the available ones and the 1/10 normalizer is retained, so
/// thin books read as relatively less one-side-weighted. Negative values are
/// possible with skewed volumes and are returned as-is.
/// Throws StateError if either side is empty.
double compute_illiquidity(const QuoteSnapshot& snapshot);

/// NoAsk = ask side empty, bid non-empty; NoBid = the converse; NoQuote = both
/// empty; Quoted otherwise.
LiquidityState classify_state(const QuoteSnapshot& snapshot);

/// Maximal runs of consecutive NoBid/NoQuote slots. Each episode carries the
/// largest per-slot ask volume seen during the run.
std::vector<NoBidEpisode> no_bid_episodes(const IlliquiditySeries& series);

/// Mean over stocks of the per-stock mean over Quoted slots. Stocks without a
/// Quoted slot are excluded; throws UndefinedStatError when none remain.
double daily_market_illiquidity(std::span<const IlliquiditySeries> series);

/// Copy with Missing slots replaced by Quoted slots holding values linearly
/// interpolated between the nearest Quoted neighbours (flat at the edges).
/// Feeds the NMI path only; episode and failure detection always run on the
/// raw series. Missing slots with no Quoted neighbour at all are left as-is.
IlliquiditySeries impute_missing(const IlliquiditySeries& series);

/// Series export rows: `date,stock_id,minute,state,value` (value empty unless
/// Quoted).
void write_series_csv(std::ostream& out, std::span<const IlliquiditySeries> series,
                      const std::string& config_hash = "");
std::vector<IlliquiditySeries> read_series_csv(std::istream& in);

/// Companion artifact with the per-slot book context (best ask/bid, ask
/// volume) that failure detection and episode profiling need but the series
/// export format does not carry. Rows where all three are absent are skipped.
void write_book_csv(std::ostream& out, std::span<const IlliquiditySeries> series,
                    const std::string& config_hash = "");
/// Merges book context into already-loaded series (matched by date+stock).
void read_book_csv(std::istream& in, std::vector<IlliquiditySeries>& series);

}  // namespace illiqnet
