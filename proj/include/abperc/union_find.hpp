#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace abperc {

/// Disjoint sets with union by size and path halving.
class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0) : parent_(n), size_(n, 1), components_(n) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    std::size_t size() const { return parent_.size(); }
    std::size_t components() const { return components_; }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Returns the new root, or the common root when already joined.
    std::uint32_t unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return a;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --components_;
        return a;
    }

    bool same(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }
    std::uint32_t component_size(std::uint32_t x) { return size_[find(x)]; }

    /// Compact labels 0..k-1 numbered by first appearance.
    std::vector<std::uint32_t> labels() {
        std::vector<std::uint32_t> root_label(parent_.size(), UINT32_MAX);
        std::vector<std::uint32_t> out(parent_.size());
        std::uint32_t next = 0;
        for (std::uint32_t i = 0; i < parent_.size(); ++i) {
            const auto r = find(i);
            if (root_label[r] == UINT32_MAX) root_label[r] = next++;
            out[i] = root_label[r];
        }
        return out;
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::size_t components_;
};

}  // namespace abperc
