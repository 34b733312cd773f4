#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace fairdiv {

// A set of good indices. Stored sorted and de-duplicated, so equality is
// order-independent and iteration order is ascending index.
class GoodSet {
public:
    GoodSet() = default;

    explicit GoodSet(std::vector<int> goods) : goods_(std::move(goods)) {
        std::sort(goods_.begin(), goods_.end());
        goods_.erase(std::unique(goods_.begin(), goods_.end()), goods_.end());
    }

    static GoodSet all(int m) {
        GoodSet s;
        s.goods_.resize(m > 0 ? static_cast<size_t>(m) : 0);
        for (int g = 0; g < m; ++g) s.goods_[static_cast<size_t>(g)] = g;
        return s;
    }

    bool contains(int g) const {
        return std::binary_search(goods_.begin(), goods_.end(), g);
    }

    void insert(int g) {
        auto it = std::lower_bound(goods_.begin(), goods_.end(), g);
        if (it == goods_.end() || *it != g) goods_.insert(it, g);
    }

    void erase(int g) {
        auto it = std::lower_bound(goods_.begin(), goods_.end(), g);
        if (it != goods_.end() && *it == g) goods_.erase(it);
    }

    int size() const { return static_cast<int>(goods_.size()); }
    bool empty() const { return goods_.empty(); }
    const std::vector<int>& items() const { return goods_; }

    GoodSet unioned(const GoodSet& other) const {
        GoodSet out;
        out.goods_.reserve(goods_.size() + other.goods_.size());
        std::set_union(goods_.begin(), goods_.end(), other.goods_.begin(), other.goods_.end(),
                       std::back_inserter(out.goods_));
        return out;
    }

    GoodSet minus(const GoodSet& other) const {
        GoodSet out;
        std::set_difference(goods_.begin(), goods_.end(), other.goods_.begin(), other.goods_.end(),
                            std::back_inserter(out.goods_));
        return out;
    }

    GoodSet intersect(const GoodSet& other) const {
        GoodSet out;
        std::set_intersection(goods_.begin(), goods_.end(), other.goods_.begin(),
                              other.goods_.end(), std::back_inserter(out.goods_));
        return out;
    }

    // Bitmask view for exhaustive small-m loops (requires indices < 64).
    static GoodSet from_mask(std::uint64_t mask) {
        GoodSet s;
        for (int g = 0; mask != 0; ++g, mask >>= 1)
            if (mask & 1u) s.goods_.push_back(g);
        return s;
    }

    bool operator==(const GoodSet&) const = default;

private:
    std::vector<int> goods_;
};

}  // namespace fairdiv
