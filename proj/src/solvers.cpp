#include "mds/solvers.hpp"

#include "bitmask.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace mds {

namespace {

using detail::Bitmask;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::vector<int> sorted_union(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// Deterministic parallel map: fn(i) must only touch its own slot.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                const std::scoped_lock lock(error_mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<int> all_indices(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

/// Smallest-index point per nonempty cell among the given targets. A valid
/// cover of the targets: any point of a cell dominates the whole cell.
std::vector<int> one_per_cell(std::span<const Point> points, const HexGrid& grid,
                              std::span<const int> targets) {
    std::map<CellId, int> pick;
    for (int t : targets) {
        const CellId c = grid.cell_of(points[t]);
        auto [it, inserted] = pick.try_emplace(c, t);
        if (!inserted && t < it->second) it->second = t;
    }
    std::vector<int> out;
    out.reserve(pick.size());
    for (const auto& [c, t] : pick) out.push_back(t);
    return sorted_union(std::move(out));
}

int nonempty_cell_count(std::span<const Point> points, const HexGrid& grid,
                        std::span<const int> targets) {
    std::map<CellId, int> pick;
    for (int t : targets) pick.try_emplace(grid.cell_of(points[t]), t);
    return static_cast<int>(pick.size());
}

Solution finish(const Instance& inst, std::vector<int> chosen, std::string algo,
                nlohmann::ordered_json params, bool guaranteed) {
    Solution sol;
    sol.chosen = sorted_union(std::move(chosen));
    sol.algorithm = std::move(algo);
    sol.params = std::move(params);
    sol.certified = is_dominating(inst.points, sol.chosen);
    sol.guaranteed = guaranteed;
    return sol;
}

nlohmann::ordered_json grid_params(const HexGrid& grid) {
    return nlohmann::ordered_json::array({grid.dx(), grid.dy()});
}

/// Optimal cover of three target groups from one candidate pool, where no
/// disk can cover targets of both side groups (certified separately). Middle
/// covers are enumerated ascending and the sides completed by bounded minimum
/// covers, memoized per residual.
class SplitCover {
public:
    SplitCover(std::span<const Point> points, std::array<std::vector<int>, 3> groups,
               std::vector<int> pool, std::vector<int> seed)
        : points_(points), groups_(std::move(groups)), best_(std::move(seed)) {
        for (int g = 0; g < 3; ++g) {
            cands_[g] = chi(points_, groups_[g], pool);
            masks_[g] = detail::coverage_masks(points_, cands_[g], groups_[g]);
        }
        mid_all_ = detail::full_bitmask(groups_[1].size());
        left_all_ = detail::full_bitmask(groups_[0].size());
        right_all_ = detail::full_bitmask(groups_[2].size());
        // cross-coverage of the side groups by middle candidates, for residuals
        side_from_mid_[0] = detail::coverage_masks(points_, cands_[1], groups_[0]);
        side_from_mid_[1] = detail::coverage_masks(points_, cands_[1], groups_[2]);

        // any single chosen point covers at most this many window targets
        for (int p : pool) {
            int cover = 0;
            for (const auto& group : groups_) {
                for (int t : group) {
                    if (covers(points_[p], points_[t])) ++cover;
                }
            }
            max_unit_cover_ = std::max(max_unit_cover_, cover);
        }

        // drop middle candidates whose coverage triple duplicates an earlier one
        std::map<std::array<Bitmask, 3>, int> seen;
        for (std::size_t i = 0; i < cands_[1].size(); ++i) {
            const std::array<Bitmask, 3> key{side_from_mid_[0][i], masks_[1][i],
                                             side_from_mid_[1][i]};
            if (seen.try_emplace(key, static_cast<int>(i)).second) {
                mid_order_.push_back(static_cast<int>(i));
            }
        }
        suffix_or_.assign(mid_order_.size() + 1, Bitmask(groups_[1].size()));
        for (int k = static_cast<int>(mid_order_.size()) - 1; k >= 0; --k) {
            suffix_or_[k] = suffix_or_[k + 1];
            suffix_or_[k] |= masks_[1][mid_order_[k]];
        }
    }

    std::vector<int> run() {
        std::vector<int> x;
        enumerate(0, x, Bitmask(groups_[1].size()), Bitmask(groups_[0].size()),
                  Bitmask(groups_[2].size()));
        return best_;
    }

private:
    void consider(const std::vector<int>& x, const Bitmask& left_cov, const Bitmask& right_cov) {
        const auto y = side_cover(0, left_cov);
        if (!y) return;
        std::vector<int> total = x;
        total.insert(total.end(), y->begin(), y->end());
        total = sorted_union(std::move(total));
        if (total.size() >= best_.size()) return;  // the right side only adds more
        const auto z = side_cover(1, right_cov);
        if (!z) return;
        total.insert(total.end(), z->begin(), z->end());
        total = sorted_union(std::move(total));
        if (total.size() < best_.size()) best_ = std::move(total);
    }

    bool bound_cut(std::size_t chosen, const Bitmask& mid_cov, const Bitmask& left_cov,
                   const Bitmask& right_cov) const {
        const int unc = mid_cov.missing_from(mid_all_) + left_cov.missing_from(left_all_) +
                        right_cov.missing_from(right_all_);
        const int lb = (unc + max_unit_cover_ - 1) / max_unit_cover_;
        return chosen + static_cast<std::size_t>(lb) >= best_.size();
    }

    void enumerate(int from, std::vector<int>& x, Bitmask mid_cov, Bitmask left_cov,
                   Bitmask right_cov) {
        if (mid_cov.contains(mid_all_)) consider(x, left_cov, right_cov);
        if (x.size() + 1 >= best_.size()) return;  // larger middles cannot win
        for (int k = from; k < static_cast<int>(mid_order_.size()); ++k) {
            const int i = mid_order_[k];
            // a candidate adding no new coverage never belongs to an optimum
            if (mid_cov.contains(masks_[1][i]) && left_cov.contains(side_from_mid_[0][i]) &&
                right_cov.contains(side_from_mid_[1][i])) {
                continue;
            }
            Bitmask m = mid_cov;
            m |= masks_[1][i];
            // skip branches that can no longer cover the middle
            Bitmask reach = m;
            reach |= suffix_or_[k + 1];
            if (!reach.contains(mid_all_)) continue;
            Bitmask l = left_cov;
            l |= side_from_mid_[0][i];
            Bitmask r = right_cov;
            r |= side_from_mid_[1][i];
            if (bound_cut(x.size() + 1, m, l, r)) continue;
            x.push_back(cands_[1][i]);
            enumerate(k + 1, x, std::move(m), std::move(l), std::move(r));
            x.pop_back();
        }
    }

    /// Minimum cover of the uncovered part of side s (0 = left, 1 = right).
    /// May be infeasible when the pool excludes crossing candidates.
    std::optional<std::vector<int>> side_cover(int s, const Bitmask& covered) {
        auto& memo = memo_[s];
        const auto it = memo.find(covered);
        if (it != memo.end()) return it->second;
        const auto& group = groups_[s == 0 ? 0 : 2];
        std::vector<int> residual;
        for (std::size_t t = 0; t < group.size(); ++t) {
            if (!covered.test(t)) residual.push_back(group[t]);
        }
        const int ub = static_cast<int>(residual.size());
        CoverInstance ci{points_, std::move(residual), cands_[s == 0 ? 0 : 2]};
        auto sol = min_cover_bounded(ci, ub);
        memo.emplace(covered, sol);
        return sol;
    }

    std::span<const Point> points_;
    std::array<std::vector<int>, 3> groups_;  // left, middle, right targets
    std::array<std::vector<int>, 3> cands_;
    std::array<std::vector<Bitmask>, 3> masks_;
    std::array<std::vector<Bitmask>, 2> side_from_mid_;
    std::vector<int> mid_order_;  // deduplicated middle candidates, index order
    std::vector<Bitmask> suffix_or_;
    Bitmask mid_all_, left_all_, right_all_;
    int max_unit_cover_ = 1;
    std::vector<int> best_;
    std::array<std::map<Bitmask, std::optional<std::vector<int>>>, 2> memo_;
};

const ValidatedTiling& validated(TileKind kind) {
    static const ValidatedTiling septa = [] {
        const TilingDescriptor d = default_septa();
        return ValidatedTiling{d, validate_tiling(d, HexGrid(), 2)};
    }();
    static const ValidatedTiling super = [] {
        const TilingDescriptor d = default_supercell();
        return ValidatedTiling{d, validate_tiling(d, HexGrid(), 2)};
    }();
    static const ValidatedTiling duper = [] {
        const TilingDescriptor d = default_dupercell();
        return ValidatedTiling{d, validate_tiling(d, HexGrid(), 1)};
    }();
    switch (kind) {
        case TileKind::septa: return septa;
        case TileKind::supercell: return super;
        default: return duper;
    }
}

/// Group point indices by the tile containing them; deterministic tile order.
std::map<TileCoord, std::vector<int>> group_by_tile(std::span<const Point> points,
                                                    const HexGrid& grid,
                                                    const TilingDescriptor& t) {
    std::map<TileCoord, std::vector<int>> groups;
    for (std::size_t i = 0; i < points.size(); ++i) {
        groups[tile_of(grid.cell_of(points[i]), t).tile].push_back(static_cast<int>(i));
    }
    return groups;
}

Solution color_class_driver(const Instance& inst, const HexGrid& grid,
                            const ValidatedTiling& vt, const SolverOptions& opt,
                            std::string algo) {
    const auto groups = group_by_tile(inst.points, grid, vt.descriptor);
    std::vector<const std::pair<const TileCoord, std::vector<int>>*> items;
    items.reserve(groups.size());
    for (const auto& g : groups) items.push_back(&g);

    std::vector<std::vector<int>> results(items.size());
    parallel_for(static_cast<int>(items.size()), opt.threads, [&](int i) {
        const CellId anchor = tile_anchor(items[i]->first, vt.descriptor);
        if (vt.descriptor.kind == TileKind::septa) {
            results[i] = solve_septa(inst.points, grid, vt.descriptor, anchor,
                                     items[i]->second, opt.faithful);
        } else {
            results[i] = solve_supercell(inst.points, grid, vt.descriptor, anchor,
                                         items[i]->second);
        }
    });

    std::vector<int> chosen;
    for (const auto& r : results) chosen.insert(chosen.end(), r.begin(), r.end());

    nlohmann::ordered_json params;
    params["color_count"] = vt.descriptor.color_count;
    if (vt.descriptor.kind == TileKind::septa) params["faithful"] = opt.faithful;
    params["grid_offset"] = grid_params(grid);
    return finish(inst, std::move(chosen), std::move(algo), std::move(params), vt.report.pass);
}

std::vector<int> exact_window_cover(std::span<const Point> points, const HexGrid& grid,
                                    std::span<const int> targets, int exact_limit,
                                    const std::string& window_name) {
    if (targets.empty()) return {};
    std::vector<int> tvec(targets.begin(), targets.end());
    const auto cands = chi(points, tvec, all_indices(points.size()));
    if (static_cast<int>(cands.size()) > exact_limit) {
        throw GuardError("window too dense: " + window_name + " has " +
                         std::to_string(cands.size()) + " candidates (limit " +
                         std::to_string(exact_limit) + ")");
    }
    return exact_cover_branch_bound(points, tvec, cands,
                                    one_per_cell(points, grid, tvec));
}

}  // namespace

const ValidatedTiling& septa_tiling() { return validated(TileKind::septa); }
const ValidatedTiling& supercell_tiling() { return validated(TileKind::supercell); }
const ValidatedTiling& dupercell_tiling() { return validated(TileKind::dupercell); }

std::vector<int> points_in_tile(std::span<const Point> points, const HexGrid& grid,
                                const TilingDescriptor& t, CellId anchor) {
    std::map<CellId, bool> cells;
    for (const CellId& c : tile_cells_at(anchor, t)) cells[c] = true;
    std::vector<int> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (cells.contains(grid.cell_of(points[i]))) out.push_back(static_cast<int>(i));
    }
    return out;
}

Solution cell_baseline(const Instance& inst, const HexGrid& grid) {
    auto chosen = one_per_cell(inst.points, grid, all_indices(inst.points.size()));
    nlohmann::ordered_json params;
    params["grid_offset"] = grid_params(grid);
    return finish(inst, std::move(chosen), "cell-baseline", std::move(params), true);
}

std::vector<int> solve_septa(std::span<const Point> points, const HexGrid& grid,
                             const TilingDescriptor& t, CellId anchor,
                             std::span<const int> targets, bool faithful) {
    if (targets.empty()) return {};
    {
        std::set<CellId> cells;
        for (const CellId& c : tile_cells_at(anchor, t)) cells.insert(c);
        for (int idx : targets) {
            if (!cells.contains(grid.cell_of(points[idx]))) {
                throw std::invalid_argument("solve_septa: target outside the tile");
            }
        }
    }
    std::vector<int> s1(targets.begin(), targets.end());
    const auto s2 = chi(points, s1, all_indices(points.size()));
    const int ub = nonempty_cell_count(points, grid, s1);

    std::vector<int> result;
    if (!faithful) {
        auto sol = min_cover_bounded({points, s1, s2}, ub);
        if (!sol) throw std::logic_error("solve_septa: one-per-cell bound was not reachable");
        result = std::move(*sol);
    } else {
        // Descending sizes from the one-per-cell cover; at size 6 the search
        // runs over 5-subsets plus a one-disk completion.
        result = one_per_cell(points, grid, s1);
        const int m = static_cast<int>(result.size());
        const auto masks = detail::coverage_masks(points, s2, s1);
        const Bitmask all = detail::full_bitmask(s1.size());
        const int mm = static_cast<int>(s2.size());
        for (int i = m - 1; i >= 1; --i) {
            if (i > mm) continue;  // not enough candidates for an i-subset
            std::optional<std::vector<int>> found;
            if (i == 6) {
                // 5-subsets completed by a single extra disk; mm >= i > 5 here
                std::vector<int> pos(5);
                std::iota(pos.begin(), pos.end(), 0);
                while (true) {
                    Bitmask covered(s1.size());
                    std::vector<int> x;
                    for (int k = 0; k < 5; ++k) {
                        covered |= masks[pos[k]];
                        x.push_back(s2[pos[k]]);
                    }
                    std::vector<int> residual;
                    for (std::size_t ti = 0; ti < s1.size(); ++ti) {
                        if (!covered.test(ti)) residual.push_back(s1[ti]);
                    }
                    std::optional<int> p;
                    if (residual.empty()) {
                        for (int c : s2) {
                            if (std::find(x.begin(), x.end(), c) == x.end()) {
                                p = c;
                                break;
                            }
                        }
                    } else {
                        p = one_disk_completion(points, s2, residual);
                    }
                    if (p) {
                        x.push_back(*p);
                        std::sort(x.begin(), x.end());
                        found = std::move(x);
                        break;
                    }
                    int ii = 4;
                    while (ii >= 0 && pos[ii] == mm - 5 + ii) --ii;
                    if (ii < 0) break;
                    ++pos[ii];
                    for (int k = ii + 1; k < 5; ++k) pos[k] = pos[k - 1] + 1;
                }
            } else {
                // plain i-subset search, lexicographic
                std::vector<int> pos(i);
                std::iota(pos.begin(), pos.end(), 0);
                while (true) {
                    Bitmask covered(s1.size());
                    for (int k = 0; k < i; ++k) covered |= masks[pos[k]];
                    if (covered.contains(all)) {
                        std::vector<int> x;
                        for (int k = 0; k < i; ++k) x.push_back(s2[pos[k]]);
                        found = std::move(x);
                        break;
                    }
                    int ii = i - 1;
                    while (ii >= 0 && pos[ii] == mm - i + ii) --ii;
                    if (ii < 0) break;
                    ++pos[ii];
                    for (int k = ii + 1; k < i; ++k) pos[k] = pos[k - 1] + 1;
                }
            }
            if (found) {
                result = std::move(*found);
            } else {
                break;  // no smaller cover can exist
            }
        }
    }

    if (static_cast<int>(result.size()) > ub) {
        throw std::logic_error("solve_septa: per-tile cardinality bound violated");
    }
    return result;
}

std::vector<int> solve_supercell(std::span<const Point> points, const HexGrid& grid,
                                 const TilingDescriptor& t, CellId anchor,
                                 std::span<const int> targets) {
    if (targets.empty()) return {};
    std::map<CellId, int> region_of;
    for (const auto& o : t.offsets) {
        region_of[{anchor.q + o.cell.q, anchor.r + o.cell.r}] = o.region;
    }
    std::array<std::vector<int>, 3> groups;
    for (int idx : targets) {
        const auto it = region_of.find(grid.cell_of(points[idx]));
        if (it == region_of.end()) {
            throw std::invalid_argument("solve_supercell: target outside the tile");
        }
        groups[static_cast<std::size_t>(it->second)].push_back(idx);
    }
    std::vector<int> s1(targets.begin(), targets.end());
    const auto s2 = chi(points, s1, all_indices(points.size()));
    const int ub = nonempty_cell_count(points, grid, s1);

    auto result = SplitCover(points, std::move(groups), s2,
                             one_per_cell(points, grid, s1))
                      .run();
    if (static_cast<int>(result.size()) > ub) {
        throw std::logic_error("solve_supercell: per-tile cardinality bound violated");
    }
    return result;
}

std::vector<int> solve_dupercell(std::span<const Point> points, const HexGrid& grid,
                                 const TilingDescriptor& t, CellId anchor,
                                 std::span<const int> targets, CrossingMode mode) {
    if (targets.empty()) return {};
    const std::int64_t split_q = anchor.q + t.split_columns;  // first column of the right half
    const std::int64_t r0 = anchor.r + t.min_r();
    const std::int64_t r1 = anchor.r + t.max_r();
    const std::int64_t q1 = anchor.q + t.max_q();

    std::array<std::vector<int>, 2> half_targets;
    for (int idx : targets) {
        const CellId c = grid.cell_of(points[idx]);
        half_targets[c.q < split_q ? 0 : 1].push_back(idx);
    }
    std::vector<int> s1(targets.begin(), targets.end());
    const auto s2 = chi(points, s1, all_indices(points.size()));

    // mu: shared boundary chain between the halves, extended vertically
    const MonotoneChain mu = block_right_chain(split_q - 1, r0, r1, grid);

    std::vector<int> crossing, noncross;
    for (int p : s2) {
        (point_chain_distance(points[p], mu, true) <= 1.0 ? crossing : noncross).push_back(p);
    }
    std::array<std::vector<int>, 2> side_cands;
    for (int p : noncross) {
        for (int s = 0; s < 2; ++s) {
            for (int tgt : half_targets[s]) {
                if (covers(points[p], points[tgt])) {
                    side_cands[s].push_back(p);
                    break;
                }
            }
        }
    }

    auto half_masks0 = detail::coverage_masks(points, crossing, half_targets[0]);
    auto half_masks1 = detail::coverage_masks(points, crossing, half_targets[1]);

    // drop crossing candidates whose coverage duplicates an earlier one
    {
        std::map<std::pair<Bitmask, Bitmask>, int> seen;
        std::vector<int> kept;
        std::vector<Bitmask> m0, m1;
        for (std::size_t i = 0; i < crossing.size(); ++i) {
            if (seen.try_emplace({half_masks0[i], half_masks1[i]}, static_cast<int>(i)).second) {
                kept.push_back(crossing[i]);
                m0.push_back(half_masks0[i]);
                m1.push_back(half_masks1[i]);
            }
        }
        crossing = std::move(kept);
        half_masks0 = std::move(m0);
        half_masks1 = std::move(m1);
    }

    // any single chosen point covers at most this many window targets
    int max_unit_cover = 1;
    for (int p : s2) {
        int cover = 0;
        for (int t : s1) {
            if (covers(points[p], points[t])) ++cover;
        }
        max_unit_cover = std::max(max_unit_cover, cover);
    }
    const Bitmask all0 = detail::full_bitmask(half_targets[0].size());
    const Bitmask all1 = detail::full_bitmask(half_targets[1].size());

    std::vector<int> best = one_per_cell(points, grid, s1);

    // Optimal cover of one half's residual targets via the column split; the
    // half's outer columns are a validated independent pair.
    std::array<std::map<Bitmask, std::vector<int>>, 2> memo;
    auto solve_half = [&](int side, const Bitmask& covered) -> const std::vector<int>& {
        auto& m = memo[side];
        const auto it = m.find(covered);
        if (it != m.end()) return it->second;
        std::vector<int> residual;
        for (std::size_t i = 0; i < half_targets[side].size(); ++i) {
            if (!covered.test(i)) residual.push_back(half_targets[side][i]);
        }
        std::vector<int> sol;
        if (!residual.empty()) {
            const std::int64_t c0 = side == 0 ? anchor.q : split_q;
            const std::int64_t c1 = side == 0 ? split_q - 1 : q1;
            std::array<std::vector<int>, 3> groups;
            for (int idx : residual) {
                const CellId c = grid.cell_of(points[idx]);
                groups[c.q == c0 ? 0 : (c.q == c1 ? 2 : 1)].push_back(idx);
            }
            sol = SplitCover(points, std::move(groups), side_cands[side],
                             one_per_cell(points, grid, residual))
                      .run();
        }
        return m.emplace(covered, std::move(sol)).first->second;
    };

    auto consider = [&](const std::vector<int>& x, const Bitmask& cov0, const Bitmask& cov1) {
        const auto& left = solve_half(0, cov0);
        std::vector<int> total = x;
        total.insert(total.end(), left.begin(), left.end());
        total = sorted_union(std::move(total));
        if (total.size() >= best.size()) return;  // the right side only adds more
        const auto& right = solve_half(1, cov1);
        total.insert(total.end(), right.begin(), right.end());
        total = sorted_union(std::move(total));
        if (total.size() < best.size()) best = std::move(total);
    };

    auto bound_cut = [&](std::size_t chosen, const Bitmask& cov0, const Bitmask& cov1) {
        const int unc = cov0.missing_from(all0) + cov1.missing_from(all1);
        const int lb = (unc + max_unit_cover - 1) / max_unit_cover;
        return chosen + static_cast<std::size_t>(lb) >= best.size();
    };

    if (mode == CrossingMode::joint) {
        // all crossing subsets, sizes ascending, pruned by the best total
        std::vector<int> x;
        auto rec = [&](auto&& self, int from, Bitmask cov0, Bitmask cov1) -> void {
            consider(x, cov0, cov1);
            if (x.size() + 1 >= best.size()) return;
            for (int i = from; i < static_cast<int>(crossing.size()); ++i) {
                // a candidate adding no new coverage never belongs to an optimum
                if (cov0.contains(half_masks0[i]) && cov1.contains(half_masks1[i])) continue;
                Bitmask c0 = cov0;
                c0 |= half_masks0[i];
                Bitmask c1 = cov1;
                c1 |= half_masks1[i];
                if (bound_cut(x.size() + 1, c0, c1)) continue;
                x.push_back(crossing[i]);
                self(self, i + 1, std::move(c0), std::move(c1));
                x.pop_back();
            }
        };
        rec(rec, 0, Bitmask(half_targets[0].size()), Bitmask(half_targets[1].size()));
    } else {
        // one subset per side of mu, enumerated jointly by total size
        std::vector<int> q_left, q_right;
        std::vector<std::size_t> pos_left, pos_right;
        for (std::size_t i = 0; i < crossing.size(); ++i) {
            const Point& p = points[crossing[i]];
            if (p.x <= chain_x_at(mu, p.y)) {
                q_left.push_back(crossing[i]);
                pos_left.push_back(i);
            } else {
                q_right.push_back(crossing[i]);
                pos_right.push_back(i);
            }
        }
        std::vector<int> x;
        auto rec2 = [&](auto&& self, bool on_right, std::size_t from, Bitmask cov0,
                        Bitmask cov1) -> void {
            if (!on_right) {
                self(self, true, 0, cov0, cov1);  // close the left subset
            } else {
                consider(x, cov0, cov1);
            }
            if (x.size() + 1 >= best.size()) return;
            const auto& ids = on_right ? q_right : q_left;
            const auto& positions = on_right ? pos_right : pos_left;
            for (std::size_t i = from; i < ids.size(); ++i) {
                const std::size_t pi = positions[i];
                if (cov0.contains(half_masks0[pi]) && cov1.contains(half_masks1[pi])) continue;
                Bitmask c0 = cov0;
                c0 |= half_masks0[pi];
                Bitmask c1 = cov1;
                c1 |= half_masks1[pi];
                if (bound_cut(x.size() + 1, c0, c1)) continue;
                x.push_back(ids[i]);
                self(self, on_right, i + 1, std::move(c0), std::move(c1));
                x.pop_back();
            }
        };
        rec2(rec2, false, 0, Bitmask(half_targets[0].size()), Bitmask(half_targets[1].size()));
    }
    return best;
}

Solution four_factor(const Instance& inst, const HexGrid& grid, const SolverOptions& opt) {
    return color_class_driver(inst, grid, septa_tiling(), opt, "four");
}

Solution three_factor(const Instance& inst, const HexGrid& grid, const SolverOptions& opt) {
    return color_class_driver(inst, grid, supercell_tiling(), opt, "three");
}

ShiftedResult shifted_solve(std::span<const Point> points, const HexGrid& grid,
                            std::span<const int> targets, ShiftConfig cfg,
                            const WindowSolver& solver, int threads) {
    if (cfg.group_size < 1) throw std::invalid_argument("shifted_solve: group_size must be >= 1");
    const std::int64_t ell = cfg.group_size;

    std::map<std::int64_t, std::vector<int>> strips;
    for (int idx : targets) {
        const CellId c = grid.cell_of(points[idx]);
        const std::int64_t coord = cfg.axis == ShiftAxis::horizontal ? c.q : c.r;
        strips[floor_div(coord, kStripCells)].push_back(idx);
    }

    struct Item {
        int shift;
        std::int64_t first_strip;
        std::vector<int> targets;
    };
    std::vector<Item> items;
    for (int t = 0; t < ell; ++t) {
        std::map<std::int64_t, std::vector<int>> windows;
        for (const auto& [s, pts] : strips) {
            auto& w = windows[floor_div(s - t, ell)];
            w.insert(w.end(), pts.begin(), pts.end());
        }
        for (auto& [w, pts] : windows) {
            std::sort(pts.begin(), pts.end());
            items.push_back({t, w * ell + t, std::move(pts)});
        }
    }

    std::vector<std::vector<int>> solved(items.size());
    parallel_for(static_cast<int>(items.size()), threads,
                 [&](int i) { solved[i] = solver(items[i].first_strip, items[i].targets); });

    ShiftedResult result;
    result.per_shift.assign(static_cast<std::size_t>(ell), {});
    for (std::size_t i = 0; i < items.size(); ++i) {
        auto& u = result.per_shift[static_cast<std::size_t>(items[i].shift)];
        u.insert(u.end(), solved[i].begin(), solved[i].end());
    }
    for (auto& u : result.per_shift) u = sorted_union(std::move(u));
    result.best_shift = 0;
    for (int t = 1; t < ell; ++t) {
        if (result.per_shift[static_cast<std::size_t>(t)].size() <
            result.per_shift[static_cast<std::size_t>(result.best_shift)].size()) {
            result.best_shift = t;
        }
    }
    return result;
}

Solution five_half(const Instance& inst, const HexGrid& grid, const SolverOptions& opt) {
    const ValidatedTiling& vt = dupercell_tiling();
    const auto all = all_indices(inst.points.size());

    const WindowSolver band_solver = [&](std::int64_t band_strip,
                                         std::span<const int> band_targets) {
        const std::int64_t band_r0 = band_strip * kStripCells;
        const WindowSolver window_solver = [&, band_r0](std::int64_t first_col_strip,
                                                        std::span<const int> wtargets) {
            const CellId anchor{first_col_strip * kStripCells, band_r0};
            return solve_dupercell(inst.points, grid, vt.descriptor, anchor, wtargets,
                                   opt.crossing);
        };
        return shifted_solve(inst.points, grid, band_targets,
                             {ShiftAxis::horizontal, 4}, window_solver, 1)
            .best();
    };

    const auto outer = shifted_solve(inst.points, grid, all, {ShiftAxis::vertical, 1},
                                     band_solver, opt.threads);

    nlohmann::ordered_json params;
    params["ell_horizontal"] = 4;
    params["ell_vertical"] = 1;
    params["crossing"] = opt.crossing == CrossingMode::joint ? "joint" : "independent";
    params["grid_offset"] = grid_params(grid);
    return finish(inst, outer.best(), "five-half", std::move(params), vt.report.pass);
}

Solution ptas(const Instance& inst, int k, const HexGrid& grid, const SolverOptions& opt) {
    if (k < 1) throw std::invalid_argument("ptas: k must be >= 1");
    const auto all = all_indices(inst.points.size());

    const WindowSolver slab_solver = [&](std::int64_t first_col_strip,
                                         std::span<const int> slab_targets) {
        const std::int64_t c0 = first_col_strip * kStripCells;
        const std::int64_t c1 = c0 + static_cast<std::int64_t>(k) * kStripCells - 1;
        const WindowSolver window_solver = [&, c0, c1](std::int64_t first_row_strip,
                                                       std::span<const int> wtargets) {
            const std::int64_t r0 = first_row_strip * kStripCells;
            const std::int64_t r1 = r0 + static_cast<std::int64_t>(k) * kStripCells - 1;
            const std::string name = "columns [" + std::to_string(c0) + "," +
                                     std::to_string(c1) + "] rows [" + std::to_string(r0) +
                                     "," + std::to_string(r1) + "]";
            return exact_window_cover(inst.points, grid, wtargets, opt.exact_limit, name);
        };
        return shifted_solve(inst.points, grid, slab_targets, {ShiftAxis::vertical, k},
                             window_solver, 1)
            .best();
    };

    const auto outer = shifted_solve(inst.points, grid, all, {ShiftAxis::horizontal, k},
                                     slab_solver, opt.threads);

    nlohmann::ordered_json params;
    params["k"] = k;
    params["exact_limit"] = opt.exact_limit;
    params["grid_offset"] = grid_params(grid);
    return finish(inst, outer.best(), "ptas", std::move(params), true);
}

}  // namespace mds
