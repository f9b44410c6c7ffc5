#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

namespace illiqnet {

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    bool connected(int a, int b) { return find(a) == find(b); }

    int component_size(int x) { return size_[find(x)]; }

    int count() const { return int(parent_.size()); }

    /// Sizes of all components, descending.
    std::vector<int> component_sizes() {
        std::vector<int> out;
        for (int i = 0; i < count(); ++i)
            if (find(i) == i) out.push_back(size_[i]);
        std::sort(out.rbegin(), out.rend());
        return out;
    }

    /// (largest, second largest) component size; 0 when absent.
    std::pair<int, int> top_two_sizes() {
        int first = 0, second = 0;
        for (int i = 0; i < count(); ++i) {
            if (find(i) != i) continue;
            int s = size_[i];
            if (s > first) {
                second = first;
                first = s;
            } else if (s > second) {
                second = s;
            }
        }
        return {first, second};
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

}  // namespace illiqnet
