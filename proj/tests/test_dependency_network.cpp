#include <doctest.h>

#include <cstring>
#include <sstream>

#include "illiqnet/dependency_network.hpp"
#include "illiqnet/errors.hpp"
#include "illiqnet/rng.hpp"
#include "test_support.hpp"

using namespace illiqnet;
using testsupport::make_discrete;
using testsupport::series_from_values;

TEST_CASE("quantile binning fills bins of size 15 and 14 for 1..237") {
    std::vector<double> values(237);
    for (int i = 0; i < 237; ++i) values[size_t(i)] = double(i + 1);
    auto d = discretize(series_from_values(values), 16);
    CHECK_FALSE(d.zero_entropy);
    std::vector<int> counts(16, 0);
    for (size_t i = 1; i < d.symbols.size(); ++i) CHECK(d.symbols[i] >= d.symbols[i - 1]);
    for (uint8_t s : d.symbols) ++counts[s];
    for (int c : counts) CHECK((c == 14 || c == 15));
}

TEST_CASE("constant series collapses to one flagged symbol") {
    std::vector<double> values(237, 3.14);
    auto d = discretize(series_from_values(values), 16);
    CHECK(d.zero_entropy);
    for (uint8_t s : d.symbols) CHECK(s == 0);
}

TEST_CASE("loss-state slots take the top bin") {
    IlliquiditySeries s("S", "d");
    for (int m = 0; m < kMinutesPerDay; ++m) {
        if (m < 50) {
            s.slots[size_t(m)].state = LiquidityState::NoBid;
        } else {
            s.slots[size_t(m)].state = LiquidityState::Quoted;
            s.slots[size_t(m)].value = double(m);
        }
    }
    auto d = discretize(s, 16);
    for (int m = 0; m < 50; ++m) CHECK(d.symbols[size_t(m)] == 15);
}

TEST_CASE("quantile binning is invariant under strictly monotone transforms") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> values(237), transformed(237);
        for (int i = 0; i < 237; ++i) {
            values[size_t(i)] = rng.normal() * 40;
            double x = values[size_t(i)];
            transformed[size_t(i)] = x * std::fabs(x) + 3 * x;  // strictly increasing
        }
        auto a = discretize(series_from_values(values), 16);
        auto b = discretize(series_from_values(transformed), 16);
        CHECK(a.symbols == b.symbols);
    }
}

TEST_CASE("nmi hand cases") {
    // identical series, non-constant
    auto x = make_discrete({0, 1, 0, 1, 2}, 3);
    CHECK(nmi(x, x) == 1.0);
    // bijective relabeling is still full dependence
    CHECK(nmi(make_discrete({0, 0, 1, 1}, 2), make_discrete({1, 1, 0, 0}, 2)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // the 2x2 uniform joint carries no information
    CHECK(nmi(make_discrete({0, 1, 0, 1}, 2), make_discrete({0, 0, 1, 1}, 2)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // frozen value from the independent joint-count oracle
    CHECK(nmi(make_discrete({0, 0, 1, 1, 2, 2}, 3), make_discrete({0, 0, 1, 1, 1, 1}, 2)) ==
          doctest::Approx(0.761170259722288).epsilon(1e-12));
}

TEST_CASE("zero-entropy rules") {
    auto flat = make_discrete({2, 2, 2, 2}, 3);
    auto other_flat = make_discrete({1, 1, 1, 1}, 3);
    auto varied = make_discrete({0, 1, 2, 0}, 3);
    CHECK(nmi(flat, varied) == 0.0);
    CHECK(nmi(flat, other_flat) == 0.0);  // different constants
    CHECK(nmi(flat, flat) == 1.0);        // identical constants paired with themselves
}

TEST_CASE("nmi is symmetric bit-for-bit and bounded") {
    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<uint8_t> xs(97), ys(97);
        for (auto& v : xs) v = uint8_t(rng.next_below(7));
        for (auto& v : ys) v = uint8_t(rng.next_below(5));
        auto x = make_discrete(xs, 7);
        auto y = make_discrete(ys, 5);
        double a = nmi(x, y), b = nmi(y, x);
        CHECK(a == b);
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
    }
}

TEST_CASE("pairwise matrix is symmetric with unit diagonal") {
    std::vector<DiscreteSeries> three = {
        make_discrete({0, 1, 2, 0, 1, 2}, 3, "A"),
        make_discrete({2, 1, 0, 2, 1, 0}, 3, "B"),
        make_discrete({0, 0, 1, 1, 2, 2}, 3, "C"),
    };
    auto m = pairwise_nmi(three, "2015-01-05", 1);
    CHECK(m.pair_count() == 3);
    CHECK(m.at(0, 0) == 1.0f);
    CHECK(m.at(0, 1) == m.at(1, 0));
    CHECK(m.at(2, 1) == m.at(1, 2));
}

TEST_CASE("pairwise output is bit-identical for any worker count") {
    Rng rng(4);
    std::vector<DiscreteSeries> series;
    for (int i = 0; i < 60; ++i) {
        std::vector<uint8_t> symbols(237);
        for (auto& v : symbols) v = uint8_t(rng.next_below(16));
        series.push_back(make_discrete(std::move(symbols), 16, "S" + std::to_string(i)));
    }
    auto m1 = pairwise_nmi(series, "d", 1);
    auto m3 = pairwise_nmi(series, "d", 3);
    auto m8 = pairwise_nmi(series, "d", 8);
    CHECK(std::memcmp(m1.tri.data(), m3.tri.data(), m1.tri.size() * sizeof(float)) == 0);
    CHECK(std::memcmp(m1.tri.data(), m8.tri.data(), m1.tri.size() * sizeof(float)) == 0);
}

TEST_CASE("nmi_stats hand cases") {
    DependencyMatrix m;
    m.date = "d";
    m.stocks = {"A", "B", "C"};
    m.tri = {0.5f, 0.5f, 0.5f};
    auto s = nmi_stats(m);
    CHECK(s.mean == doctest::Approx(0.5));
    CHECK(s.stddev == doctest::Approx(0.0));

    m.stocks = {"A", "B", "C", "D"};  // 6 pairs, half 0 half 1
    m.tri = {0.f, 1.f, 0.f, 1.f, 0.f, 1.f};
    s = nmi_stats(m);
    CHECK(s.mean == doctest::Approx(0.5));
    CHECK(s.stddev == doctest::Approx(0.5));
}

namespace {

DependencyMatrix clique_matrix(int n, int clique, float background, float strong) {
    DependencyMatrix m;
    m.date = "2015-06-26";
    for (int i = 0; i < n; ++i) m.stocks.push_back("S" + std::to_string(i));
    m.tri.assign(size_t(n) * (n - 1) / 2, background);
    for (int i = 1; i < clique; ++i)
        for (int j = 0; j < i; ++j) m.set(i, j, strong);
    return m;
}

}  // namespace

TEST_CASE("threshold lands just above the background weight") {
    auto m = clique_matrix(40, 8, 0.3f, 0.9f);
    auto pick = select_threshold(m, 0.01);
    CHECK_FALSE(pick.fallback);
    CHECK(pick.threshold > 0.30);
    CHECK(pick.threshold <= 0.32);
    auto net = build_network(m, pick.threshold);
    CHECK(component_summary(net).gcc_size == 8);  // only the clique survives
}

TEST_CASE("uniform matrix takes the fallback path") {
    DependencyMatrix m;
    m.date = "d";
    for (int i = 0; i < 20; ++i) m.stocks.push_back("S" + std::to_string(i));
    m.tri.assign(190, 0.5f);
    auto pick = select_threshold(m, 0.01);
    CHECK(pick.fallback);
}

TEST_CASE("build_network keeps every edge at threshold 0 and none above max") {
    auto m = clique_matrix(10, 4, 0.2f, 0.8f);
    auto complete = build_network(m, 0.0);
    CHECK(complete.edges.size() == 45);
    CHECK(complete.nodes.size() == 10);

    auto empty = build_network(m, 0.95);
    CHECK(empty.edges.empty());
    CHECK(empty.nodes.empty());
    CHECK(empty.total_stocks == 10);
    auto s = component_summary(empty);
    CHECK(s.gcc_size == 1);  // every stock isolated
    CHECK(s.gcc_ratio == doctest::Approx(0.1));
}

TEST_CASE("component summary matches hand-built graphs") {
    // path over all nodes
    IlliquidityNetwork path;
    path.date = "d";
    path.total_stocks = 6;
    for (int i = 0; i < 6; ++i) path.nodes.push_back("S" + std::to_string(i));
    for (int i = 0; i + 1 < 6; ++i) path.edges.push_back({i, i + 1, 0.5f});
    path.finalize();
    auto s = component_summary(path);
    CHECK(s.gcc_ratio == doctest::Approx(1.0));
    CHECK(s.second_size == 0);

    // two equal components
    IlliquidityNetwork halves;
    halves.date = "d";
    halves.total_stocks = 6;
    for (int i = 0; i < 6; ++i) halves.nodes.push_back("S" + std::to_string(i));
    halves.edges = {{0, 1, 1.f}, {1, 2, 1.f}, {3, 4, 1.f}, {4, 5, 1.f}};
    halves.finalize();
    s = component_summary(halves);
    CHECK(s.gcc_ratio == doctest::Approx(0.5));
    CHECK(s.second_size == 3);
}

TEST_CASE("matrix binary format round-trips bit-exactly") {
    Rng rng(55);
    DependencyMatrix m;
    m.date = "2015-06-26";
    for (int i = 0; i < 23; ++i) m.stocks.push_back("S" + std::to_string(i));
    m.tri.resize(23 * 22 / 2);
    for (auto& v : m.tri) v = float(rng.next_double());

    std::ostringstream out(std::ios::binary);
    m.write(out);
    std::istringstream in(out.str());
    auto back = DependencyMatrix::read(in);
    CHECK(back.date == m.date);
    CHECK(back.size() == m.size());
    CHECK(std::memcmp(back.tri.data(), m.tri.data(), m.tri.size() * sizeof(float)) == 0);

    std::istringstream junk("XXXX----");
    CHECK_THROWS_AS(DependencyMatrix::read(junk), FormatError);
}

TEST_CASE("network edge-list csv round-trips") {
    auto m = clique_matrix(12, 5, 0.1f, 0.9f);
    auto net = build_network(m, 0.5);
    std::ostringstream out;
    write_network_csv(out, net, "1234");
    std::istringstream in(out.str());
    auto back = read_network_csv(in);
    CHECK(back.date == net.date);
    CHECK(back.edges.size() == net.edges.size());
    for (const auto& e : net.edges) {
        int a = back.node_index(net.nodes[size_t(e.a)]);
        int b = back.node_index(net.nodes[size_t(e.b)]);
        CHECK(back.has_edge(a, b));
    }
}

TEST_CASE("discretize and pairwise reject bad input") {
    std::vector<double> values(237, 1.0);
    CHECK_THROWS_AS(discretize(series_from_values(values), 1), ValidationError);
    std::vector<DiscreteSeries> ragged = {make_discrete({0, 1}, 2), make_discrete({0, 1, 2}, 3)};
    CHECK_THROWS_AS(pairwise_nmi(ragged, "d", 1), ValidationError);
    std::vector<DiscreteSeries> single = {make_discrete({0, 1}, 2)};
    CHECK_THROWS_AS(pairwise_nmi(single, "d", 1), ValidationError);
}
