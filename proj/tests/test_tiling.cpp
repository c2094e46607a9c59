#include "doctest.h"

#include <numbers>
#include <set>

#include "mds/tiling.hpp"

using namespace mds;

TEST_CASE("septa descriptor structure") {
    const auto t = default_septa();
    CHECK(t.kind == TileKind::septa);
    CHECK(t.offsets.size() == 7);
    CHECK(t.color_count == 4);
    CHECK(t.basis[0][0] == 2);
    CHECK(t.basis[0][1] == 1);
    CHECK(t.basis[1][0] == -1);
    CHECK(t.basis[1][1] == 3);
}

TEST_CASE("septa tile_of examples") {
    const auto t = default_septa();
    const auto p0 = tile_of({0, 0}, t);
    CHECK(p0.tile == TileCoord{0, 0});
    CHECK(t.offsets[p0.offset_index].cell == CellId{0, 0});

    const auto p1 = tile_of({1, 0}, t);
    CHECK(p1.tile == TileCoord{0, 0});
    CHECK(t.offsets[p1.offset_index].cell == CellId{1, 0});

    CHECK(tile_of({2, 1}, t).tile == TileCoord{1, 0});
    CHECK(t.offsets[tile_of({2, 1}, t).offset_index].cell == CellId{0, 0});

    CHECK(tile_of({4, 2}, t).tile == TileCoord{2, 0});
    CHECK(t.offsets[tile_of({4, 2}, t).offset_index].cell == CellId{0, 0});
}

TEST_CASE("septa coloring: rule values, neighbors, opposites") {
    const auto t = default_septa();
    CHECK(tile_color(0, 0, t) == 0);
    CHECK(tile_color(1, 0, t) == tile_color(-1, 0, t));
    CHECK(tile_color(0, 0, t) != tile_color(1, 0, t));

    // the six neighbor tiles use exactly the other three colors; opposite
    // neighbors share a color
    const std::pair<std::int64_t, std::int64_t> nbr[6] = {{1, 0},  {-1, 0}, {0, 1},
                                                          {0, -1}, {1, -1}, {-1, 1}};
    for (std::int64_t i = -3; i <= 3; ++i) {
        for (std::int64_t j = -3; j <= 3; ++j) {
            const int center = tile_color(i, j, t);
            std::set<int> seen;
            for (int k = 0; k < 6; k += 2) {
                const int a = tile_color(i + nbr[k].first, j + nbr[k].second, t);
                const int b = tile_color(i + nbr[k + 1].first, j + nbr[k + 1].second, t);
                CHECK(a == b);
                CHECK(a != center);
                seen.insert(a);
            }
            CHECK(seen.size() == 3);
        }
    }
}

TEST_CASE("partition property on a 40x40 patch for all defaults") {
    for (const auto& t : {default_septa(), default_supercell(), default_dupercell()}) {
        for (std::int64_t q = -20; q < 20; ++q) {
            for (std::int64_t r = -20; r < 20; ++r) {
                const CellId c{q, r};
                const auto pl = tile_of(c, t);
                const CellId anchor = tile_anchor(pl.tile, t);
                REQUIRE(CellId{anchor.q + t.offsets[pl.offset_index].cell.q,
                               anchor.r + t.offsets[pl.offset_index].cell.r} == c);
            }
        }
    }
}

TEST_CASE("supercell descriptor structure and examples") {
    const auto t = default_supercell();
    CHECK(t.offsets.size() == 15);
    CHECK(t.color_count == 3);
    CHECK(t.basis[0][0] == 5);
    CHECK(t.basis[0][1] == 0);
    CHECK(t.basis[1][1] == 3);

    int left = 0, middle = 0, right = 0;
    for (const auto& o : t.offsets) {
        if (o.region == 0) ++left;
        if (o.region == 1) ++middle;
        if (o.region == 2) ++right;
    }
    CHECK(left == 3);
    CHECK(middle == 9);  // matches the middle enumeration bound
    CHECK(right == 3);
    CHECK(t.region_bounds == std::vector<int>{3, 9, 3});

    const auto pl = tile_of({7, 1}, t);
    CHECK(pl.tile == TileCoord{1, 0});
    CHECK(t.offsets[pl.offset_index].cell == CellId{2, 1});
    CHECK(tile_of({5, 0}, t).tile != tile_of({4, 0}, t).tile);
}

TEST_CASE("dupercell descriptor structure") {
    const auto t = default_dupercell();
    // widened from the 30-cell nominal: one full 4-strip shifting window
    CHECK(t.offsets.size() == 36);
    CHECK(t.split_columns == 6);
    std::set<CellId> left, right;
    for (const auto& o : t.offsets) {
        (o.region == 0 ? left : right).insert(o.cell);
    }
    CHECK(left.size() == right.size());
    for (const CellId& c : left) CHECK_FALSE(right.contains(c));

    const HexGrid grid;
    const auto mu = block_right_chain(t.split_columns - 1, 0, 2, grid);
    CHECK(mu.is_monotone());
}

TEST_CASE("default tilings pass validation with the measured separations") {
    const HexGrid grid;

    const auto septa = validate_tiling(default_septa(), grid, 2);
    CHECK(septa.pass);
    CHECK(septa.same_color_min == doctest::Approx(2.0).epsilon(1e-9));
    const auto* interior = septa.find("same_color_interior");
    REQUIRE(interior != nullptr);
    CHECK(interior->measured > 2.0);

    const auto super = validate_tiling(default_supercell(), grid, 2);
    CHECK(super.pass);
    CHECK(super.same_color_min == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(super.region_separation_min == doctest::Approx(2.0).epsilon(1e-9));

    const auto duper = validate_tiling(default_dupercell(), grid, 1);
    CHECK(duper.pass);
    CHECK(duper.chain_left_right == doctest::Approx(9.0138781887).epsilon(1e-9));
    CHECK(duper.chain_left_right > 8.0);
    CHECK(duper.chain_top_bottom == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(duper.find("half_side_separation")->measured ==
          doctest::Approx(2.7838821814).epsilon(1e-9));
}

TEST_CASE("single-colored septa partition fails validation") {
    auto t = default_septa();
    t.color_count = 1;
    t.color_period_i = 1;
    t.color_period_j = 1;
    t.color_table = {0};
    const auto report = validate_tiling(t, HexGrid(), 2, false);
    CHECK_FALSE(report.pass);
    CHECK(report.same_color_min == 0.0);  // same-colored neighbors touch
}

TEST_CASE("separations are invariant under grid offsets") {
    const auto t = default_septa();
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const HexGrid grid = HexGrid::with_offset(i * 0.071, j * 0.083);
            const auto report = validate_tiling(t, grid, 2, false);
            REQUIRE(report.pass);
            REQUIRE(report.same_color_min == doctest::Approx(2.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("descriptor JSON round trip") {
    for (const auto& t : {default_septa(), default_supercell(), default_dupercell()}) {
        const auto j = t.to_json();
        const auto back = TilingDescriptor::from_json(nlohmann::json::parse(j.dump()));
        CHECK(back.kind == t.kind);
        CHECK(back.basis == t.basis);
        CHECK(back.offsets.size() == t.offsets.size());
        for (std::size_t k = 0; k < t.offsets.size(); ++k) {
            CHECK(back.offsets[k].cell == t.offsets[k].cell);
            CHECK(back.offsets[k].region == t.offsets[k].region);
        }
        CHECK(back.color_table == t.color_table);
        CHECK(back.split_columns == t.split_columns);
        // behavioral equality
        CHECK(validate_tiling(back, HexGrid(), 1, false).pass);
    }
}

TEST_CASE("block boundary chains are monotone and strip chains are 2 apart") {
    const HexGrid grid;
    CHECK(block_left_chain(0, 0, 2, grid).is_monotone());
    CHECK(block_right_chain(4, 0, 2, grid).is_monotone());
    CHECK(block_bottom_chain(0, 9, 0, grid).is_monotone());
    CHECK(block_top_chain(0, 9, 2, grid).is_monotone());

    // consecutive vertical strip boundaries (3 columns apart) are exactly one
    // disk diameter apart
    const auto c0 = block_left_chain(0, -6, 8, grid);
    const auto c1 = block_left_chain(3, -6, 8, grid);
    CHECK(chain_distance(c0, c1) == doctest::Approx(2.0).epsilon(1e-12));
}
