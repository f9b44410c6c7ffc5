#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "illiqnet/types.hpp"

namespace illiqnet {

inline constexpr int kDefaultBins = 16;  // ~ sqrt(237)

/// A stock-day series reduced to symbols in [0, bins).
struct DiscreteSeries {
    std::string stock_id;
    std::vector<uint8_t> symbols;
    int bins = kDefaultBins;
    bool zero_entropy = false;  // constant symbol sequence
};

/// Equal-frequency (quantile) binning of the day's values. Liquidity-loss
/// slots (NoBid/NoAsk/NoQuote, or Missing slots that could not be imputed)
/// map to the top bin: co-occurring loss is exactly the dependency the
/// network must capture. Ties at bin boundaries resolve by first occurrence.
DiscreteSeries discretize(const IlliquiditySeries& series, int bins = kDefaultBins);

/// Plug-in normalized mutual information over empirical joint counts, natural
/// log: NMI = I(X;Y) / sqrt(H(X) H(Y)), clamped to [0,1]. Zero-entropy input
/// gives 0, except two identical series (constant or not) give exactly 1.
double nmi(const DiscreteSeries& x, const DiscreteSeries& y);

/// Symmetric per-day NMI matrix; strict lower triangle stored row-major as
/// 32-bit floats, diagonal implicitly 1.
struct DependencyMatrix {
    std::string date;
    std::vector<std::string> stocks;
    std::vector<float> tri;  // (i,j), i > j, at i*(i-1)/2 + j

    int size() const { return int(stocks.size()); }
    size_t pair_count() const { return tri.size(); }

    float at(int i, int j) const {
        if (i == j) return 1.0f;
        if (i < j) std::swap(i, j);
        return tri[size_t(i) * (size_t(i) - 1) / 2 + size_t(j)];
    }
    void set(int i, int j, float v) {
        if (i < j) std::swap(i, j);
        tri[size_t(i) * (size_t(i) - 1) / 2 + size_t(j)] = v;
    }

    /// Binary format: magic "ILQM", u32 version, u32 n, u32 date (YYYYMMDD),
    /// then the n(n-1)/2 lower-triangle floats. Stock ids travel in a JSON
    /// sidecar, not in this file.
    void write(std::ostream& out) const;
    static DependencyMatrix read(std::istream& in);
};

/// All unordered pairs, data-parallel over rows; output is bit-identical for
/// any worker count because every pair value lands in its own slot.
DependencyMatrix pairwise_nmi(std::span<const DiscreteSeries> series, const std::string& date,
                              int workers = 1);

struct NmiStats {
    double mean = 0.0;
    double stddev = 0.0;  // population
};

/// Mean / population std over the n(n-1)/2 unique off-diagonal entries.
NmiStats nmi_stats(const DependencyMatrix& matrix);

struct ThresholdPick {
    double threshold = 0.0;
    bool fallback = false;  // no >1% GCC drop found; largest single-step drop used
};

/// Sweeps candidate thresholds k*step from 0 upward and returns the smallest
/// one where the GCC loses more than 1% of the node count relative to the
/// previous candidate. Implemented as one descending sweep with an
/// incremental union-find, so the full curve costs O(E alpha) after sorting.
ThresholdPick select_threshold(const DependencyMatrix& matrix, double step = 0.01);

/// GCC node count at each candidate threshold k*step for k in [0, steps];
/// exposed for the threshold plot and the monotonicity property.
std::vector<int> gcc_curve(const DependencyMatrix& matrix, double step, int steps);

struct NetworkEdge {
    int a, b;  // indices into nodes, a < b
    float weight;
};

/// Thresholded per-day graph. Isolated stocks are dropped from `nodes` but
/// stay in `total_stocks` for coverage accounting. Call finalize() after
/// filling nodes/edges by hand; the factories below do it for you.
struct IlliquidityNetwork {
    std::string date;
    double threshold = 0.0;
    std::vector<std::string> nodes;
    std::vector<NetworkEdge> edges;  // a < b, sorted by (a, b)
    int total_stocks = 0;

    /// Builds the id index and sorted adjacency lists.
    void finalize();

    int node_index(const std::string& stock_id) const;  // -1 when absent
    int degree_at(int node) const { return int(adjacency_[size_t(node)].size()); }
    std::vector<int> degrees() const;
    bool has_edge(int a, int b) const;
    const std::vector<int>& neighbors(int node) const { return adjacency_[size_t(node)]; }

private:
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> adjacency_;
};

IlliquidityNetwork build_network(const DependencyMatrix& matrix, double threshold);

struct ComponentSummary {
    int gcc_size = 0;
    int second_size = 0;
    double gcc_ratio = 0.0;  // gcc_size / total stocks that day
};

ComponentSummary component_summary(const IlliquidityNetwork& network);

/// Edge-list export `date,a,b,weight`.
void write_network_csv(std::ostream& out, const IlliquidityNetwork& net,
                       const std::string& config_hash = "");
IlliquidityNetwork read_network_csv(std::istream& in);

}  // namespace illiqnet
