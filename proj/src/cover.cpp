#include "mds/cover.hpp"

#include "bitmask.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace mds {

namespace {

struct BranchBound {
    std::span<const int> candidates;
    const std::vector<detail::Bitmask>* masks;
    detail::Bitmask all;
    int max_cover = 1;
    std::vector<std::vector<int>> covering;  // per target, candidate positions covering it

    std::vector<int> best;  // candidate positions
    std::vector<int> cur;

    void run() {
        cur.clear();
        dfs(detail::Bitmask(all.w.size() * 64));
    }

    void dfs(detail::Bitmask covered) {
        if (covered.contains(all)) {
            if (cur.size() < best.size()) best = cur;
            return;
        }
        int uncov = 0;
        int pick = -1;
        int pick_options = std::numeric_limits<int>::max();
        for (std::size_t t = 0; t < covering.size(); ++t) {
            if (covered.test(t)) continue;
            ++uncov;
            const int options = static_cast<int>(covering[t].size());
            if (options < pick_options) {
                pick_options = options;
                pick = static_cast<int>(t);
            }
        }
        const int lb = (uncov + max_cover - 1) / max_cover;
        if (cur.size() + static_cast<std::size_t>(lb) >= best.size()) return;
        if (pick < 0 || pick_options == 0) return;  // uncoverable target
        for (int c : covering[pick]) {
            detail::Bitmask next = covered;
            next |= (*masks)[c];
            cur.push_back(c);
            dfs(std::move(next));
            cur.pop_back();
        }
    }
};

}  // namespace

std::vector<int> chi(std::span<const Point> points, std::span<const int> u1,
                     std::span<const int> u2) {
    std::vector<int> out;
    for (int p : u2) {
        for (int q : u1) {
            if (covers(points[p], points[q])) {
                out.push_back(p);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> uncovered(std::span<const Point> points, std::span<const int> centers,
                           std::span<const int> targets) {
    std::vector<int> out;
    for (int t : targets) {
        bool hit = false;
        for (int c : centers) {
            if (covers(points[c], points[t])) {
                hit = true;
                break;
            }
        }
        if (!hit) out.push_back(t);
    }
    return out;
}

std::optional<int> one_disk_completion(std::span<const Point> points,
                                       std::span<const int> candidates,
                                       std::span<const int> targets) {
    for (int c : candidates) {
        bool all = true;
        for (int t : targets) {
            if (!covers(points[c], points[t])) {
                all = false;
                break;
            }
        }
        if (all) return c;
    }
    return std::nullopt;
}

std::optional<std::vector<int>> min_cover_bounded(const CoverInstance& ci, int ub) {
    if (ub < 0) throw std::invalid_argument("min_cover_bounded: negative bound");
    if (ci.targets.empty()) return std::vector<int>{};
    if (ub == 0) return std::nullopt;

    const auto masks = detail::coverage_masks(ci.points, ci.candidates, ci.targets);
    const detail::Bitmask all = detail::full_bitmask(ci.targets.size());
    const int m = static_cast<int>(ci.candidates.size());

    {  // a target no candidate covers makes every subset fail
        detail::Bitmask reachable(ci.targets.size());
        for (const auto& mask : masks) reachable |= mask;
        if (!reachable.contains(all)) return std::nullopt;
    }

    // Size j = subset of j-1 candidates plus a one-disk completion; any j-cover
    // minus one element is reachable this way, so the first hit has minimum size.
    std::vector<int> subset;
    std::vector<int> result;
    auto complete = [&](const detail::Bitmask& covered) -> bool {
        if (covered.contains(all)) {  // should not happen: size j-1 was already rejected
            result = subset;
            return true;
        }
        std::vector<int> residual;
        for (std::size_t t = 0; t < ci.targets.size(); ++t) {
            if (!covered.test(t)) residual.push_back(ci.targets[t]);
        }
        const auto p = one_disk_completion(ci.points, ci.candidates, residual);
        if (!p) return false;
        result = subset;
        result.push_back(*p);
        std::sort(result.begin(), result.end());
        return true;
    };

    for (int j = 1; j <= ub; ++j) {
        const int pick = j - 1;
        // lexicographic enumeration of (j-1)-subsets by candidate position
        std::vector<int> pos(pick);
        std::iota(pos.begin(), pos.end(), 0);
        bool done = pick > m;
        while (!done) {
            subset.clear();
            detail::Bitmask covered(ci.targets.size());
            for (int k = 0; k < pick; ++k) {
                subset.push_back(ci.candidates[pos[k]]);
                covered |= masks[pos[k]];
            }
            if (complete(covered)) return result;
            // advance combination
            int i = pick - 1;
            while (i >= 0 && pos[i] == m - pick + i) --i;
            if (i < 0) {
                done = true;
            } else {
                ++pos[i];
                for (int k = i + 1; k < pick; ++k) pos[k] = pos[k - 1] + 1;
            }
        }
    }
    return std::nullopt;
}

std::vector<int> exact_cover_branch_bound(std::span<const Point> points,
                                          std::span<const int> targets,
                                          std::span<const int> candidates,
                                          std::vector<int> initial) {
    if (targets.empty()) return {};
    const auto masks = detail::coverage_masks(points, candidates, targets);

    BranchBound bb;
    bb.candidates = candidates;
    bb.masks = &masks;
    bb.all = detail::full_bitmask(targets.size());
    bb.covering.resize(targets.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        bb.max_cover = std::max(bb.max_cover, masks[c].count());
        for (std::size_t t = 0; t < targets.size(); ++t) {
            if (masks[c].test(t)) bb.covering[t].push_back(static_cast<int>(c));
        }
    }
    bb.best.assign(initial.size(), -1);  // only the size of the seed matters
    bb.run();

    std::vector<int> out;
    if (bb.best.empty() || bb.best[0] >= 0) {
        for (int c : bb.best) out.push_back(candidates[c]);
        std::sort(out.begin(), out.end());
    } else {
        out = std::move(initial);
        std::sort(out.begin(), out.end());
    }
    return out;
}

bool is_dominating(std::span<const Point> points, std::span<const int> chosen) {
    for (const Point& p : points) {
        bool hit = false;
        for (int c : chosen) {
            if (covers(points[c], p)) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

Solution exact_mds(std::span<const Point> points, const HexGrid& grid, int limit) {
    Solution sol;
    sol.algorithm = "exact";
    sol.params["limit"] = limit;
    if (points.size() > static_cast<std::size_t>(limit)) {
        throw GuardError("exact_mds: instance size " + std::to_string(points.size()) +
                         " exceeds the exact-search limit " + std::to_string(limit));
    }
    if (points.empty()) {
        sol.certified = true;
        sol.guaranteed = true;
        return sol;
    }

    // One point per nonempty cell dominates everything and seeds the bound.
    std::map<CellId, int> cell_pick;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const CellId c = grid.cell_of(points[i]);
        auto [it, inserted] = cell_pick.try_emplace(c, static_cast<int>(i));
        if (!inserted && static_cast<int>(i) < it->second) it->second = static_cast<int>(i);
    }
    std::vector<int> seed;
    for (const auto& [c, i] : cell_pick) seed.push_back(i);

    std::vector<int> all(points.size());
    std::iota(all.begin(), all.end(), 0);
    sol.chosen = exact_cover_branch_bound(points, all, all, std::move(seed));
    sol.certified = is_dominating(points, sol.chosen);
    sol.guaranteed = true;
    return sol;
}

}  // namespace mds
