#include "illiqnet/dependency_network.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "illiqnet/csv.hpp"
#include "illiqnet/dates.hpp"
#include "illiqnet/errors.hpp"
#include "illiqnet/parallel.hpp"
#include "illiqnet/union_find.hpp"

namespace illiqnet {

DiscreteSeries discretize(const IlliquiditySeries& series, int bins) {
    if (bins < 2 || bins > 256) throw ValidationError("discretize: bins must be in [2, 256]");
    const int n = int(series.slots.size());
    DiscreteSeries out;
    out.stock_id = series.stock_id;
    out.bins = bins;
    out.symbols.assign(size_t(n), uint8_t(bins - 1));

    // positions that carry a value; everything else (loss states, residual
    // Missing) stays in the top bin
    std::vector<int> valued;
    valued.reserve(size_t(n));
    for (int i = 0; i < n; ++i)
        if (series.slots[size_t(i)].quoted()) valued.push_back(i);

    if (!valued.empty()) {
        bool constant = true;
        double v0 = series.slots[size_t(valued[0])].value;
        for (int i : valued)
            if (series.slots[size_t(i)].value != v0) {
                constant = false;
                break;
            }
        if (constant && valued.size() == size_t(n)) {
            // fully constant day: single symbol, flagged below
            std::fill(out.symbols.begin(), out.symbols.end(), uint8_t(0));
        } else {
            // stable sort by value; rank k of m values lands in bin k*bins/m
            std::vector<int> order(valued);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return series.slots[size_t(a)].value < series.slots[size_t(b)].value;
            });
            const size_t m = order.size();
            for (size_t k = 0; k < m; ++k)
                out.symbols[size_t(order[k])] = uint8_t(k * size_t(bins) / m);
        }
    }

    out.zero_entropy =
        std::all_of(out.symbols.begin(), out.symbols.end(),
                    [&](uint8_t s) { return s == out.symbols[0]; });
    return out;
}

namespace {

/// c -> c * ln(c) for joint/marginal count sizes we see in practice.
class CountLogTable {
public:
    explicit CountLogTable(size_t max_count) : lut_(max_count + 1, 0.0) {
        for (size_t c = 2; c < lut_.size(); ++c) lut_[c] = double(c) * std::log(double(c));
    }
    double operator[](size_t c) const { return lut_[c]; }
    size_t size() const { return lut_.size(); }

private:
    std::vector<double> lut_;
};

/// H = ln(n) - (1/n) * sum_c c*ln(c), natural log.
double entropy_from_counts(std::span<const uint32_t> counts, size_t n, const CountLogTable& lut) {
    double s = 0;
    for (uint32_t c : counts) s += lut[c];
    return std::log(double(n)) - s / double(n);
}

std::vector<uint32_t> marginal_counts(const DiscreteSeries& x) {
    std::vector<uint32_t> counts(size_t(x.bins), 0);
    for (uint8_t s : x.symbols) ++counts[s];
    return counts;
}

/// Scratch space reused across pairs by one worker.
struct PairScratch {
    std::vector<uint32_t> joint;     // bins_x * bins_y cells
    std::vector<uint32_t> touched;   // cells hit by the current pair
};

/// Joint entropy via a touched-cell list so reset cost scales with distinct
/// cells, not table size. Natural log.
double joint_entropy(const DiscreteSeries& x, const DiscreteSeries& y, PairScratch& scratch,
                     const CountLogTable& lut) {
    const size_t n = x.symbols.size();
    const size_t by = size_t(y.bins);
    auto& joint = scratch.joint;
    auto& touched = scratch.touched;
    touched.clear();
    for (size_t i = 0; i < n; ++i) {
        uint32_t cell = uint32_t(x.symbols[i]) * uint32_t(by) + y.symbols[i];
        if (joint[cell]++ == 0) touched.push_back(cell);
    }
    double s = 0;
    for (uint32_t cell : touched) {
        s += lut[joint[cell]];
        joint[cell] = 0;
    }
    return std::log(double(n)) - s / double(n);
}

double nmi_with_scratch(const DiscreteSeries& x, const DiscreteSeries& y, double hx, double hy,
                        PairScratch& scratch, const CountLogTable& lut) {
    if (x.symbols == y.symbols) return 1.0;  // self-NMI exactly 1, constants included
    if (hx <= 0.0 || hy <= 0.0) return 0.0;
    double hxy = joint_entropy(x, y, scratch, lut);
    double v = (hx + hy - hxy) / std::sqrt(hx * hy);
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

}  // namespace

double nmi(const DiscreteSeries& x, const DiscreteSeries& y) {
    if (x.symbols.size() != y.symbols.size())
        throw ValidationError("nmi: length mismatch");
    if (x.symbols.empty()) return 0.0;
    // canonical argument order makes nmi(x,y) == nmi(y,x) bit-exact
    if (y.symbols < x.symbols) return nmi(y, x);
    CountLogTable lut(x.symbols.size());
    PairScratch scratch;
    scratch.joint.assign(size_t(x.bins) * size_t(y.bins), 0);
    double hx = entropy_from_counts(marginal_counts(x), x.symbols.size(), lut);
    double hy = entropy_from_counts(marginal_counts(y), y.symbols.size(), lut);
    return nmi_with_scratch(x, y, hx, hy, scratch, lut);
}

DependencyMatrix pairwise_nmi(std::span<const DiscreteSeries> series, const std::string& date,
                              int workers) {
    const int n = int(series.size());
    if (n < 2) throw ValidationError("pairwise_nmi: need at least 2 series");
    const size_t len = series[0].symbols.size();
    int bins = series[0].bins;
    for (const auto& s : series) {
        if (s.symbols.size() != len) throw ValidationError("pairwise_nmi: ragged series lengths");
        if (s.bins != bins) throw ValidationError("pairwise_nmi: mixed bin counts");
    }

    DependencyMatrix m;
    m.date = date;
    m.stocks.reserve(size_t(n));
    for (const auto& s : series) m.stocks.push_back(s.stock_id);
    m.tri.assign(size_t(n) * (size_t(n) - 1) / 2, 0.0f);

    CountLogTable lut(len);
    std::vector<double> h(size_t(n), 0.0);
    for (int i = 0; i < n; ++i)
        h[size_t(i)] = entropy_from_counts(marginal_counts(series[size_t(i)]), len, lut);

    // one row per work item; each worker keeps its own joint-count scratch
    workers = effective_workers(workers);
    std::atomic<int> next_row{1};
    auto run = [&] {
        PairScratch scratch;
        scratch.joint.assign(size_t(bins) * size_t(bins), 0);
        for (;;) {
            int i = next_row.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            float* row = m.tri.data() + size_t(i) * (size_t(i) - 1) / 2;
            for (int j = 0; j < i; ++j)
                row[j] = float(nmi_with_scratch(series[size_t(i)], series[size_t(j)], h[size_t(i)],
                                                h[size_t(j)], scratch, lut));
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    return m;
}

NmiStats nmi_stats(const DependencyMatrix& matrix) {
    if (matrix.tri.empty()) throw ValidationError("nmi_stats: no pairs");
    double s = 0;
    for (float v : matrix.tri) s += double(v);
    double mean = s / double(matrix.tri.size());
    double var = 0;
    for (float v : matrix.tri) {
        double d = double(v) - mean;
        var += d * d;
    }
    return {mean, std::sqrt(var / double(matrix.tri.size()))};
}

std::vector<int> gcc_curve(const DependencyMatrix& matrix, double step, int steps) {
    const int n = matrix.size();
    // edges sorted by weight descending; sweep thresholds from the top down,
    // adding edges as they enter, so every candidate needs only new unions
    std::vector<uint32_t> order(matrix.tri.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (matrix.tri[a] != matrix.tri[b]) return matrix.tri[a] > matrix.tri[b];
        return a < b;
    });
    auto pair_of = [&](uint32_t k) {
        // invert k = i*(i-1)/2 + j
        size_t i = size_t((1.0 + std::sqrt(1.0 + 8.0 * double(k))) / 2.0);
        while (i * (i - 1) / 2 > k) --i;
        while ((i + 1) * i / 2 <= k) ++i;
        return std::pair<int, int>(int(i), int(k - i * (i - 1) / 2));
    };

    UnionFind uf(n);
    std::vector<int> curve(size_t(steps) + 1, 0);
    size_t e = 0;
    int gcc = n > 0 ? 1 : 0;
    for (int k = steps; k >= 0; --k) {
        double cand = double(k) * step;
        while (e < order.size() && double(matrix.tri[order[e]]) >= cand) {
            auto [i, j] = pair_of(order[e]);
            uf.unite(i, j);
            int s = uf.component_size(i);
            if (s > gcc) gcc = s;
            ++e;
        }
        curve[size_t(k)] = gcc;
    }
    return curve;
}

ThresholdPick select_threshold(const DependencyMatrix& matrix, double step) {
    if (!(step > 0)) throw ValidationError("select_threshold: step must be positive");
    const int n = matrix.size();
    float maxw = 0.0f;
    for (float v : matrix.tri) maxw = std::max(maxw, v);
    // candidates k*step up to the matrix maximum only
    int steps = int(std::floor(double(maxw) / step));
    if (steps < 0) steps = 0;
    std::vector<int> curve = gcc_curve(matrix, step, steps);

    double min_drop = 0.01 * double(n);
    int best_k = -1, best_drop = -1;
    for (int k = 1; k <= steps; ++k) {
        int drop = curve[size_t(k) - 1] - curve[size_t(k)];
        if (double(drop) > min_drop) return {double(k) * step, false};
        if (drop > best_drop) {
            best_drop = drop;
            best_k = k;
        }
    }
    // no candidate sheds more than 1% of nodes before the maximum; fall back
    // to the largest single-step drop and let the caller surface a warning
    if (best_k < 0) return {0.0, true};
    return {double(best_k) * step, true};
}

void IlliquidityNetwork::finalize() {
    index_.clear();
    index_.reserve(nodes.size());
    for (int i = 0; i < int(nodes.size()); ++i) index_[nodes[size_t(i)]] = i;
    adjacency_.assign(nodes.size(), {});
    std::sort(edges.begin(), edges.end(), [](const NetworkEdge& a, const NetworkEdge& b) {
        return a.a != b.a ? a.a < b.a : a.b < b.b;
    });
    for (const auto& e : edges) {
        adjacency_[size_t(e.a)].push_back(e.b);
        adjacency_[size_t(e.b)].push_back(e.a);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

int IlliquidityNetwork::node_index(const std::string& stock_id) const {
    auto it = index_.find(stock_id);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> IlliquidityNetwork::degrees() const {
    std::vector<int> d(nodes.size(), 0);
    for (size_t i = 0; i < adjacency_.size(); ++i) d[i] = int(adjacency_[i].size());
    return d;
}

bool IlliquidityNetwork::has_edge(int a, int b) const {
    if (a < 0 || b < 0 || a >= int(nodes.size()) || b >= int(nodes.size()) || a == b) return false;
    const auto& adj = adjacency_[size_t(a)];
    return std::binary_search(adj.begin(), adj.end(), b);
}

IlliquidityNetwork build_network(const DependencyMatrix& matrix, double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw ValidationError("build_network: threshold outside [0,1]");
    const int n = matrix.size();
    IlliquidityNetwork net;
    net.date = matrix.date;
    net.threshold = threshold;
    net.total_stocks = n;

    std::vector<int> keep_index(size_t(n), -1);
    std::vector<std::pair<int, int>> kept_pairs;
    for (int i = 1; i < n; ++i) {
        const float* row = matrix.tri.data() + size_t(i) * (size_t(i) - 1) / 2;
        for (int j = 0; j < i; ++j) {
            if (double(row[j]) >= threshold) {
                kept_pairs.emplace_back(j, i);
                keep_index[size_t(i)] = 0;
                keep_index[size_t(j)] = 0;
            }
        }
    }
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (keep_index[size_t(i)] == 0) {
            keep_index[size_t(i)] = next++;
            net.nodes.push_back(matrix.stocks[size_t(i)]);
        }
    }
    net.edges.reserve(kept_pairs.size());
    for (auto [j, i] : kept_pairs)
        net.edges.push_back({keep_index[size_t(j)], keep_index[size_t(i)], matrix.at(i, j)});
    net.finalize();
    return net;
}

ComponentSummary component_summary(const IlliquidityNetwork& network) {
    ComponentSummary out;
    const int n = int(network.nodes.size());
    if (n == 0) {
        // no edges survived; every stock is isolated
        out.gcc_size = network.total_stocks > 0 ? 1 : 0;
        out.second_size = network.total_stocks > 1 ? 1 : 0;
        out.gcc_ratio = network.total_stocks > 0 ? 1.0 / double(network.total_stocks) : 0.0;
        return out;
    }
    UnionFind uf(n);
    for (const auto& e : network.edges) uf.unite(e.a, e.b);
    auto [first, second] = uf.top_two_sizes();
    out.gcc_size = first;
    // isolated (dropped) stocks are singletons competing for second place
    if (network.total_stocks > n && second < 1) second = 1;
    out.second_size = second;
    out.gcc_ratio = network.total_stocks > 0 ? double(first) / double(network.total_stocks) : 0.0;
    return out;
}

namespace {
constexpr char kMatrixMagic[4] = {'I', 'L', 'Q', 'M'};
constexpr uint32_t kMatrixVersion = 1;
}  // namespace

void DependencyMatrix::write(std::ostream& out) const {
    out.write(kMatrixMagic, 4);
    uint32_t v = kMatrixVersion, n = uint32_t(stocks.size()), d = date_to_u32(date);
    out.write(reinterpret_cast<const char*>(&v), 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&d), 4);
    out.write(reinterpret_cast<const char*>(tri.data()),
              std::streamsize(tri.size() * sizeof(float)));
}

DependencyMatrix DependencyMatrix::read(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMatrixMagic, 4) != 0)
        throw FormatError("bad matrix magic (expected ILQM)");
    uint32_t v = 0, n = 0, d = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&d), 4);
    if (!in || v != kMatrixVersion) throw FormatError("unsupported matrix version");
    DependencyMatrix m;
    m.date = date_from_u32(d);
    m.stocks.resize(n);  // ids arrive from the sidecar; placeholders here
    for (uint32_t i = 0; i < n; ++i) m.stocks[i] = "S" + std::to_string(i);
    m.tri.resize(size_t(n) * (size_t(n) - 1) / 2);
    in.read(reinterpret_cast<char*>(m.tri.data()), std::streamsize(m.tri.size() * sizeof(float)));
    if (!in) throw FormatError("truncated matrix payload");
    return m;
}

void write_network_csv(std::ostream& out, const IlliquidityNetwork& net,
                       const std::string& config_hash) {
    write_artifact_header(out, config_hash);
    out << "date,a,b,weight\n";
    for (const auto& e : net.edges)
        out << net.date << ',' << net.nodes[size_t(e.a)] << ',' << net.nodes[size_t(e.b)] << ','
            << format_full(double(e.weight)) << "\n";
}

IlliquidityNetwork read_network_csv(std::istream& in) {
    CsvReader reader(in);
    std::string header;
    read_artifact_header(reader, header, /*require_tag=*/true);
    if (header != "date,a,b,weight")
        throw FormatError("unexpected network CSV header: '" + header + "'");
    IlliquidityNetwork net;
    std::unordered_map<std::string, int> ids;
    std::string line;
    while (reader.next(line)) {
        if (line[0] == '#') continue;
        long ln = reader.line_number();
        auto f = split(line, ',');
        if (f.size() != 4) throw ValidationError("expected 4 fields", ln);
        if (net.date.empty()) net.date = f[0];
        auto w = parse_double(f[3]);
        if (!w) throw ValidationError("bad weight", ln);
        auto intern = [&](const std::string& id) {
            auto it = ids.find(id);
            if (it != ids.end()) return it->second;
            int idx = int(net.nodes.size());
            ids.emplace(id, idx);
            net.nodes.push_back(id);
            return idx;
        };
        int a = intern(f[1]), b = intern(f[2]);
        if (a > b) std::swap(a, b);
        net.edges.push_back({a, b, float(*w)});
    }
    net.total_stocks = int(net.nodes.size());  // refined by the JSON sidecar
    net.finalize();
    return net;
}

}  // namespace illiqnet
