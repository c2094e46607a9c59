#pragma once

// Test-only oracle: plain subset enumeration by ascending size over candidate
// index combinations, with direct distance checks. Deliberately independent
// from the library's search engines.

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "mds/geom.hpp"

namespace mds::testing {

inline bool disk_covers(const Point& c, const Point& t) {
    const double dx = c.x - t.x, dy = c.y - t.y;
    return dx * dx + dy * dy <= 1.0;
}

inline bool next_combination(std::vector<int>& pos, int n) {
    const int k = static_cast<int>(pos.size());
    int i = k - 1;
    while (i >= 0 && pos[i] == n - k + i) --i;
    if (i < 0) return false;
    ++pos[i];
    for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
    return true;
}

inline std::optional<std::vector<int>> oracle_min_cover(std::span<const Point> points,
                                                        std::span<const int> targets,
                                                        std::span<const int> candidates,
                                                        int max_size) {
    if (targets.empty()) return std::vector<int>{};
    const int n = static_cast<int>(candidates.size());
    for (int size = 1; size <= max_size && size <= n; ++size) {
        std::vector<int> pos(size);
        for (int i = 0; i < size; ++i) pos[i] = i;
        do {
            bool all_covered = true;
            for (int t : targets) {
                bool hit = false;
                for (int p : pos) {
                    if (disk_covers(points[candidates[p]], points[t])) {
                        hit = true;
                        break;
                    }
                }
                if (!hit) {
                    all_covered = false;
                    break;
                }
            }
            if (all_covered) {
                std::vector<int> out;
                for (int p : pos) out.push_back(candidates[p]);
                return out;
            }
        } while (next_combination(pos, n));
    }
    return std::nullopt;
}

inline int oracle_mds_size(std::span<const Point> points) {
    std::vector<int> all;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) all.push_back(i);
    const auto sol = oracle_min_cover(points, all, all, static_cast<int>(points.size()));
    return sol ? static_cast<int>(sol->size()) : -1;
}

}  // namespace mds::testing
