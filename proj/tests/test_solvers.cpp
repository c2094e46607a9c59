#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mds/instance.hpp"
#include "mds/rng.hpp"
#include "mds/solvers.hpp"

#include "oracle.hpp"

using namespace mds;

namespace {

Instance make_instance(std::vector<Point> pts) {
    Instance inst;
    inst.name = "inline";
    inst.points = std::move(pts);
    return inst;
}

void check_solution(const Instance& inst, const Solution& sol) {
    REQUIRE(sol.certified);
    REQUIRE(is_dominating(inst.points, sol.chosen));
    REQUIRE(std::is_sorted(sol.chosen.begin(), sol.chosen.end()));
    for (int c : sol.chosen) {
        REQUIRE(c >= 0);
        REQUIRE(c < inst.size());
    }
}

/// Points scattered over one tile's bounding box; targets are the points that
/// actually land in the tile.
Instance tile_instance(const TilingDescriptor& t, CellId anchor, int n, std::uint64_t seed,
                       double margin = 0.6) {
    const HexGrid grid;
    double min_x = 1e9, min_y = 1e9, max_x = -1e9, max_y = -1e9;
    for (const CellId& c : tile_cells_at(anchor, t)) {
        const Point ctr = grid.cell_center(c);
        min_x = std::min(min_x, ctr.x - 0.5);
        max_x = std::max(max_x, ctr.x + 0.5);
        min_y = std::min(min_y, ctr.y - 0.5);
        max_y = std::max(max_y, ctr.y + 0.5);
    }
    SplitMix64 rng(seed);
    Instance inst;
    inst.name = "tile";
    for (int i = 0; i < n; ++i) {
        inst.points.push_back({rng.uniform(min_x - margin, max_x + margin),
                               rng.uniform(min_y - margin, max_y + margin)});
    }
    return inst;
}

std::vector<int> all_idx(const Instance& inst) {
    std::vector<int> v(inst.points.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

TEST_CASE("cell_baseline examples") {
    const HexGrid grid;
    {
        // five points inside one cell
        const Instance inst = make_instance(
            {{0.1, 0.1}, {-0.1, 0.05}, {0.0, -0.15}, {0.2, 0.0}, {-0.2, -0.1}});
        const Solution sol = cell_baseline(inst, grid);
        check_solution(inst, sol);
        CHECK(sol.size() == 1);
    }
    {
        // three cell centers, pairwise at least 3 apart
        const Instance inst = make_instance({{0, 0}, {4.5, 0}, {0, 4.5}});
        CHECK(cell_baseline(inst, grid).size() == 3);
    }
    {
        const Instance inst = make_instance({});
        CHECK(cell_baseline(inst, grid).size() == 0);
    }
}

TEST_CASE("solve_septa: trivial cases") {
    const HexGrid grid;
    const auto& vt = septa_tiling();
    {
        const Instance inst = make_instance({{0.1, 0.1}, {-0.1, 0.05}, {0.0, -0.15}});
        const auto targets = points_in_tile(inst.points, grid, vt.descriptor, {0, 0});
        REQUIRE(targets.size() == 3);
        CHECK(solve_septa(inst.points, grid, vt.descriptor, {0, 0}, targets).size() == 1);
    }
    {
        const Instance inst = make_instance({{50, 50}});
        const auto targets = points_in_tile(inst.points, grid, vt.descriptor, {0, 0});
        CHECK(targets.empty());
        CHECK(solve_septa(inst.points, grid, vt.descriptor, {0, 0}, targets).empty());
    }
}

TEST_CASE("solve_septa matches the exhaustive oracle on local instances") {
    const HexGrid grid;
    const auto& vt = septa_tiling();
    int accepted = 0;
    for (std::uint64_t seed = 1; accepted < 25 && seed < 300; ++seed) {
        const Instance inst = tile_instance(vt.descriptor, {0, 0}, 12, seed);
        const auto targets = points_in_tile(inst.points, grid, vt.descriptor, {0, 0});
        if (targets.empty()) continue;
        const auto cands = chi(inst.points, targets, all_idx(inst));
        if (cands.size() > 14) continue;
        ++accepted;
        const auto got = solve_septa(inst.points, grid, vt.descriptor, {0, 0}, targets);
        const auto want = testing::oracle_min_cover(inst.points, targets, cands, 8);
        REQUIRE(want.has_value());
        REQUIRE(got.size() == want->size());
        REQUIRE(got.size() <= 7);
        REQUIRE(uncovered(inst.points, got, targets).empty());
    }
    CHECK(accepted == 25);
}

TEST_CASE("faithful descending search returns the same sizes") {
    const HexGrid grid;
    const auto& vt = septa_tiling();
    int accepted = 0;
    for (std::uint64_t seed = 1; accepted < 30 && seed < 300; ++seed) {
        const Instance inst = tile_instance(vt.descriptor, {0, 0}, 14, seed);
        const auto targets = points_in_tile(inst.points, grid, vt.descriptor, {0, 0});
        if (targets.empty()) continue;
        ++accepted;
        const auto fast = solve_septa(inst.points, grid, vt.descriptor, {0, 0}, targets, false);
        const auto slow = solve_septa(inst.points, grid, vt.descriptor, {0, 0}, targets, true);
        REQUIRE(fast.size() == slow.size());
        REQUIRE(uncovered(inst.points, slow, targets).empty());
    }
    CHECK(accepted == 30);
}

TEST_CASE("four_factor: trivial cases and ratio bound") {
    const HexGrid grid;
    {
        const Instance inst = make_instance({{1, 1}});
        const Solution sol = four_factor(inst, grid);
        check_solution(inst, sol);
        CHECK(sol.size() == 1);
        CHECK(sol.guaranteed);
    }
    {
        const Instance inst = make_instance({{0.1, 0.1}, {-0.1, 0.05}, {0.0, -0.15}});
        CHECK(four_factor(inst, grid).size() == 1);  // one cell, one tile
    }
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Instance inst = gen_uniform(12, 4, 4, seed);
        const Solution sol = four_factor(inst, grid);
        check_solution(inst, sol);
        const int opt = testing::oracle_mds_size(inst.points);
        REQUIRE(sol.size() <= 4 * opt);
    }
}

TEST_CASE("within one color class the candidate sets of distinct tiles are disjoint") {
    const HexGrid grid;
    for (const auto* vt : {&septa_tiling(), &supercell_tiling()}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const Instance inst = gen_uniform(40, 10, 10, seed);
            const auto all = all_idx(inst);
            // group targets by tile
            std::map<TileCoord, std::vector<int>> tiles;
            for (int i = 0; i < inst.size(); ++i) {
                tiles[tile_of(grid.cell_of(inst.points[i]), vt->descriptor).tile].push_back(i);
            }
            std::map<int, std::vector<int>> class_union;  // color -> chi sets seen
            for (const auto& [tc, targets] : tiles) {
                const int color = tile_color(tc.i, tc.j, vt->descriptor);
                auto cand = chi(inst.points, targets, all);
                auto& seen = class_union[color];
                std::vector<int> overlap;
                std::set_intersection(cand.begin(), cand.end(), seen.begin(), seen.end(),
                                      std::back_inserter(overlap));
                REQUIRE(overlap.empty());
                seen.insert(seen.end(), cand.begin(), cand.end());
                std::sort(seen.begin(), seen.end());
            }
        }
    }
}

TEST_CASE("solve_supercell: trivial cases") {
    const HexGrid grid;
    const auto& vt = supercell_tiling();
    {
        const Instance inst = make_instance({{0.1, 0.1}, {-0.1, 0.05}});
        const auto targets = points_in_tile(inst.points, grid, vt.descriptor, {0, 0});
        REQUIRE(targets.size() == 2);
        CHECK(solve_supercell(inst.points, grid, vt.descriptor, {0, 0}, targets).size() == 1);
    }
    {
        // points only in the left column: equals the bounded minimum cover
        // with an empty middle enumeration
        const Instance inst = make_instance({{0.05, 0.05}, {-0.05, 0.8}, {0.02, 1.7}});
        const auto targets = points_in_tile(inst.points, grid, vt.descriptor, {0, 0});
        REQUIRE(targets.size() == 3);
        const auto got = solve_supercell(inst.points, grid, vt.descriptor, {0, 0}, targets);
        const auto cands = chi(inst.points, targets, all_idx(inst));
        const auto direct = min_cover_bounded({inst.points, targets, cands}, 3);
        REQUIRE(direct.has_value());
        CHECK(got.size() == direct->size());
    }
}

TEST_CASE("solve_supercell matches the exhaustive oracle on local instances") {
    const HexGrid grid;
    const auto& vt = supercell_tiling();
    int accepted = 0;
    for (std::uint64_t seed = 1; accepted < 25 && seed < 400; ++seed) {
        const Instance inst = tile_instance(vt.descriptor, {0, 0}, 12, seed);
        const auto targets = points_in_tile(inst.points, grid, vt.descriptor, {0, 0});
        if (targets.empty()) continue;
        const auto cands = chi(inst.points, targets, all_idx(inst));
        if (cands.size() > 14) continue;
        ++accepted;
        const auto got = solve_supercell(inst.points, grid, vt.descriptor, {0, 0}, targets);
        const auto want = testing::oracle_min_cover(inst.points, targets, cands, 15);
        REQUIRE(want.has_value());
        REQUIRE(got.size() == want->size());
        REQUIRE(got.size() <= 15);
        REQUIRE(uncovered(inst.points, got, targets).empty());
    }
    CHECK(accepted == 25);
}

TEST_CASE("three_factor: trivial cases and ratio bound") {
    const HexGrid grid;
    {
        const Instance inst = make_instance({{1, 1}});
        const Solution sol = three_factor(inst, grid);
        check_solution(inst, sol);
        CHECK(sol.size() == 1);
    }
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Instance inst = gen_uniform(12, 4, 4, seed);
        const Solution sol = three_factor(inst, grid);
        check_solution(inst, sol);
        const int opt = testing::oracle_mds_size(inst.points);
        REQUIRE(sol.size() <= 3 * opt);
    }
}

TEST_CASE("solve_dupercell: trivial cases") {
    const HexGrid grid;
    const auto& vt = dupercell_tiling();
    {
        const Instance inst = make_instance({{50, 50}});
        const auto targets = points_in_tile(inst.points, grid, vt.descriptor, {0, 0});
        CHECK(targets.empty());
        CHECK(solve_dupercell(inst.points, grid, vt.descriptor, {0, 0}, targets).empty());
    }
    {
        // points in the left half, far from the middle chain (x ~ 4.0)
        const Instance inst =
            make_instance({{0.1, 0.1}, {0.7, 0.4}, {1.4, 1.0}, {0.3, 1.6}});
        const auto targets = points_in_tile(inst.points, grid, vt.descriptor, {0, 0});
        REQUIRE(targets.size() == 4);
        const auto got = solve_dupercell(inst.points, grid, vt.descriptor, {0, 0}, targets);
        const auto cands = chi(inst.points, targets, all_idx(inst));
        const auto want = testing::oracle_min_cover(inst.points, targets, cands, 8);
        REQUIRE(want.has_value());
        CHECK(got.size() == want->size());
    }
}

TEST_CASE("solve_dupercell matches the oracle; crossing modes agree") {
    const HexGrid grid;
    const auto& vt = dupercell_tiling();
    int accepted = 0;
    for (std::uint64_t seed = 1; accepted < 20 && seed < 500; ++seed) {
        const Instance inst = tile_instance(vt.descriptor, {0, 0}, 11, seed, 0.4);
        const auto targets = points_in_tile(inst.points, grid, vt.descriptor, {0, 0});
        if (targets.size() < 2) continue;
        const auto cands = chi(inst.points, targets, all_idx(inst));
        if (cands.size() > 13) continue;
        ++accepted;
        const auto joint = solve_dupercell(inst.points, grid, vt.descriptor, {0, 0}, targets,
                                           CrossingMode::joint);
        const auto indep = solve_dupercell(inst.points, grid, vt.descriptor, {0, 0}, targets,
                                           CrossingMode::independent);
        const auto want = testing::oracle_min_cover(inst.points, targets, cands, 12);
        REQUIRE(want.has_value());
        REQUIRE(joint.size() == want->size());
        REQUIRE(indep.size() == want->size());
        REQUIRE(uncovered(inst.points, joint, targets).empty());
    }
    CHECK(accepted == 20);
}

TEST_CASE("shifted_solve: degenerate and single-window cases") {
    const HexGrid grid;
    const Instance inst = make_instance({{0.2, 0.2}, {1.1, 0.4}, {1.9, 0.1}});
    const auto all = all_idx(inst);

    int calls = 0;
    const WindowSolver record_solver = [&](std::int64_t, std::span<const int> targets) {
        ++calls;
        return std::vector<int>(targets.begin(), targets.end());
    };

    // all points fall inside one window at shift 0
    const auto res = shifted_solve(inst.points, grid, all, {ShiftAxis::horizontal, 4},
                                   record_solver);
    CHECK(res.per_shift.size() == 4);
    CHECK(res.best().size() == 3);

    // ell = 1: single shift, plain concatenation of per-strip solutions
    calls = 0;
    const auto res1 = shifted_solve(inst.points, grid, all, {ShiftAxis::horizontal, 1},
                                    record_solver);
    CHECK(res1.per_shift.size() == 1);
    CHECK(res1.best_shift == 0);
    CHECK(res1.best() == all);

    CHECK_THROWS_AS(shifted_solve(inst.points, grid, all, {ShiftAxis::horizontal, 0},
                                  record_solver),
                    std::invalid_argument);
}

TEST_CASE("shifted_solve returns the minimum over shift unions") {
    const HexGrid grid;
    const auto& vt = dupercell_tiling();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        // points confined to one 3-row band, spread over many columns
        SplitMix64 rng(seed);
        Instance inst;
        for (int i = 0; i < 18; ++i) {
            const CellId cell{static_cast<std::int64_t>(rng.next() % 24),
                              static_cast<std::int64_t>(rng.next() % 3)};
            const Point ctr = grid.cell_center(cell);
            Point p;
            do {
                p = {ctr.x + rng.uniform(-0.5, 0.5), ctr.y + rng.uniform(-0.5, 0.5)};
            } while (!grid.point_in_cell(p, cell, 0.0));
            inst.points.push_back(p);
        }
        const auto all = all_idx(inst);
        const WindowSolver solver = [&](std::int64_t first_strip,
                                        std::span<const int> targets) {
            return solve_dupercell(inst.points, grid, vt.descriptor,
                                   {first_strip * kStripCells, 0}, targets);
        };
        const auto res = shifted_solve(inst.points, grid, all, {ShiftAxis::horizontal, 4},
                                       solver);
        std::size_t min_size = res.per_shift[0].size();
        for (const auto& u : res.per_shift) {
            min_size = std::min(min_size, u.size());
            REQUIRE(uncovered(inst.points, u, all).empty());  // every shift union dominates
        }
        REQUIRE(res.best().size() == min_size);
        REQUIRE(res.per_shift[res.best_shift].size() == min_size);
        // ties resolve to the smallest shift index
        for (int t = 0; t < res.best_shift; ++t) {
            REQUIRE(res.per_shift[t].size() > min_size);
        }
    }
}

TEST_CASE("five_half: trivial case and ratio bound") {
    const HexGrid grid;
    {
        const Instance inst = make_instance({{2, 2}});
        const Solution sol = five_half(inst, grid);
        check_solution(inst, sol);
        CHECK(sol.size() == 1);
        CHECK(sol.guaranteed);
    }
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Instance inst = gen_uniform(12, 4, 4, seed);
        const Solution sol = five_half(inst, grid);
        check_solution(inst, sol);
        const int opt = testing::oracle_mds_size(inst.points);
        REQUIRE(sol.size() <= static_cast<int>(std::floor(2.5 * opt)));
    }
}

TEST_CASE("ptas: trivial case, ratio bounds, and the density guard") {
    const HexGrid grid;
    {
        const Instance inst = make_instance({{2, 2}});
        const Solution sol = ptas(inst, 1, grid);
        check_solution(inst, sol);
        CHECK(sol.size() == 1);
    }
    CHECK_THROWS_AS(ptas(make_instance({{0, 0}}), 0, grid), std::invalid_argument);

    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const Instance inst = gen_uniform(10, 4, 4, seed);
        const int opt = testing::oracle_mds_size(inst.points);
        const Solution p1 = ptas(inst, 1, grid);
        const Solution p2 = ptas(inst, 2, grid);
        check_solution(inst, p1);
        check_solution(inst, p2);
        REQUIRE(p1.size() <= 4 * opt);
        REQUIRE(p2.size() <= static_cast<int>(std::floor(2.25 * opt)));
    }

    {
        // a dense window trips the exact-search guard
        const Instance inst = gen_clustered(30, 1, 0.2, 2, 2, 3);
        SolverOptions opt;
        opt.exact_limit = 10;
        CHECK_THROWS_WITH_AS(ptas(inst, 1, grid, opt), doctest::Contains("window too dense"),
                             GuardError);
    }
}

TEST_CASE("identical chosen lists across thread counts") {
    const HexGrid grid;
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        const Instance inst = seed % 2 ? gen_uniform(20, 8, 8, seed)
                                       : gen_clustered(20, 4, 0.6, 8, 8, seed);
        for (int run = 0; run < 3; ++run) {
            SolverOptions t1, t4;
            t1.threads = 1;
            t4.threads = 4;
            t4.exact_limit = t1.exact_limit = 64;
            REQUIRE(four_factor(inst, grid, t1).chosen == four_factor(inst, grid, t4).chosen);
            REQUIRE(three_factor(inst, grid, t1).chosen == three_factor(inst, grid, t4).chosen);
            REQUIRE(five_half(inst, grid, t1).chosen == five_half(inst, grid, t4).chosen);
            REQUIRE(ptas(inst, 2, grid, t1).chosen == ptas(inst, 2, grid, t4).chosen);
        }
    }
}
