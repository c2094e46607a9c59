#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "mds/geom.hpp"

namespace mds::detail {

/// Dynamic bitset sized for per-subproblem target counts.
struct Bitmask {
    std::vector<std::uint64_t> w;

    explicit Bitmask(std::size_t bits = 0) : w((bits + 63) / 64, 0) {}

    void set(std::size_t i) { w[i / 64] |= 1ULL << (i % 64); }
    bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1ULL; }

    void operator|=(const Bitmask& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] |= o.w[k];
    }
    bool contains(const Bitmask& o) const {
        for (std::size_t k = 0; k < w.size(); ++k) {
            if ((o.w[k] & ~w[k]) != 0) return false;
        }
        return true;
    }
    bool operator==(const Bitmask&) const = default;
    bool operator<(const Bitmask& o) const { return w < o.w; }

    int count() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }

    /// Bits of `all` not present in this mask.
    int missing_from(const Bitmask& all) const {
        int c = 0;
        for (std::size_t k = 0; k < w.size(); ++k) c += std::popcount(all.w[k] & ~w[k]);
        return c;
    }
};

inline Bitmask full_bitmask(std::size_t bits) {
    Bitmask m(bits);
    for (std::size_t i = 0; i < bits; ++i) m.set(i);
    return m;
}

inline std::vector<Bitmask> coverage_masks(std::span<const Point> points,
                                           std::span<const int> candidates,
                                           std::span<const int> targets) {
    std::vector<Bitmask> masks(candidates.size(), Bitmask(targets.size()));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        for (std::size_t t = 0; t < targets.size(); ++t) {
            if (covers(points[candidates[c]], points[targets[t]])) masks[c].set(t);
        }
    }
    return masks;
}

}  // namespace mds::detail
