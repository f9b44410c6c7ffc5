#include "illiqnet/network_dynamics.hpp"

#include <algorithm>
#include <set>

#include "illiqnet/errors.hpp"

namespace illiqnet {

const char* to_string(Grouping g) {
    return g == Grouping::Sector ? "sector" : "cap_style";
}

LinkEvolution link_evolution(const IlliquidityNetwork& a, const IlliquidityNetwork& b) {
    auto edge_keys = [](const IlliquidityNetwork& net) {
        std::set<std::pair<std::string, std::string>> keys;
        for (const auto& e : net.edges) {
            std::string x = net.nodes[size_t(e.a)], y = net.nodes[size_t(e.b)];
            if (x > y) std::swap(x, y);
            keys.emplace(std::move(x), std::move(y));
        }
        return keys;
    };
    auto ka = edge_keys(a), kb = edge_keys(b);

    LinkEvolution ev;
    ev.date_a = a.date;
    ev.date_b = b.date;
    for (const auto& k : kb)
        if (ka.count(k))
            ++ev.unchanged_links;
        else
            ++ev.new_links;
    ev.removed_links = long(ka.size()) - ev.unchanged_links;
    long denom = ev.unchanged_links + ev.removed_links;
    ev.unchanged_ratio = denom > 0 ? double(ev.unchanged_links) / double(denom) : 0.0;
    return ev;
}

std::vector<GroupScore> group_proportion(const IlliquidityNetwork& network,
                                         const std::map<std::string, StockMeta>& meta,
                                         Grouping grouping) {
    auto label_of = [&](const std::string& id) -> const std::string* {
        auto it = meta.find(id);
        if (it == meta.end()) return nullptr;
        return grouping == Grouping::Sector ? &it->second.sector : &it->second.cap_style;
    };

    const int n = int(network.nodes.size());
    std::vector<const std::string*> labels(size_t(n), nullptr);
    for (int i = 0; i < n; ++i) labels[size_t(i)] = label_of(network.nodes[size_t(i)]);

    std::map<std::string, GroupScore> acc;
    long n_j = 0, N_j = 0;
    for (int i = 0; i < n; ++i) {
        if (!labels[size_t(i)]) continue;
        GroupScore& g = acc[*labels[size_t(i)]];
        g.N_ij += 1;
        g.n_ij += network.degree_at(i);
        N_j += 1;
        n_j += network.degree_at(i);
    }

    std::vector<GroupScore> out;
    out.reserve(acc.size());
    for (auto& [label, g] : acc) {
        g.group = label;
        g.date = network.date;
        g.n_j = n_j;
        g.N_j = N_j;
        if (g.N_ij > 0 && n_j > 0 && N_j > 0) {
            double edge_share = double(g.n_ij) / double(n_j);
            double node_share = double(g.N_ij) / double(N_j);
            g.R = edge_share / node_share;
            out.push_back(g);
        }
    }
    return out;
}

int degree(const IlliquidityNetwork& network, const std::string& stock_id) {
    int idx = network.node_index(stock_id);
    if (idx < 0)
        throw NotInNetworkError("stock " + stock_id + " not in network of " + network.date);
    return network.degree_at(idx);
}

}  // namespace illiqnet
