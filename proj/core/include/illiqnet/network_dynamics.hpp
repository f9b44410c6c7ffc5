#pragma once

#include <map>
#include <string>
#include <vector>

#include "illiqnet/dependency_network.hpp"
#include "illiqnet/types.hpp"

namespace illiqnet {

enum class Grouping { Sector, CapStyle };
const char* to_string(Grouping g);

/// Edge-set comparison between consecutive days, by unordered endpoint pair,
/// weights ignored. unchanged_ratio = unchanged / (unchanged + removed), i.e.
/// the share of the earlier day's links kept.
struct LinkEvolution {
    std::string date_a, date_b;
    long new_links = 0;
    long removed_links = 0;
    long unchanged_links = 0;
    double unchanged_ratio = 0.0;
};

LinkEvolution link_evolution(const IlliquidityNetwork& a, const IlliquidityNetwork& b);

/// Degree-weighted proportion of one group on one day:
///     R = (n_ij / n_j) / (N_ij / N_j)
/// n_ij = group's edge-endpoint occurrences (= sum of member degrees),
/// n_j = 2|E|, N_ij = group nodes present, N_j = nodes present.
struct GroupScore {
    std::string group;
    std::string date;
    double R = 0.0;
    long n_ij = 0, n_j = 0, N_ij = 0, N_j = 0;
};

/// Scores for every group with at least one node in the network. Nodes
/// without metadata are left out of the endpoint and node counts (they are
/// excluded from group analyses only).
std::vector<GroupScore> group_proportion(const IlliquidityNetwork& network,
                                         const std::map<std::string, StockMeta>& meta,
                                         Grouping grouping);

/// Incident-edge count. Throws NotInNetworkError when the stock is absent
/// (including isolated-after-threshold stocks).
int degree(const IlliquidityNetwork& network, const std::string& stock_id);

}  // namespace illiqnet
