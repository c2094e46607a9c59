#include "mds/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mds/rng.hpp"

namespace mds {

namespace {

std::int64_t emod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

constexpr double kSepRequired = 2.0;
constexpr double kSepTol = 1e-9;
constexpr double kInteriorMargin = 1e-6;
constexpr int kInteriorSamples = 10000;

TilingDescriptor make_block_descriptor(TileKind kind, std::int64_t cols, std::int64_t stagger) {
    TilingDescriptor t;
    t.kind = kind;
    t.basis = {{{cols, 0}, {stagger, 3}}};
    for (std::int64_t q = 0; q < cols; ++q) {
        for (std::int64_t r = 0; r < 3; ++r) {
            t.offsets.push_back({{q, r}, 0});
        }
    }
    return t;
}

void assign_supercell_regions(TilingDescriptor& t, std::int64_t cols) {
    for (auto& o : t.offsets) {
        o.region = o.cell.q == 0 ? 0 : (o.cell.q == cols - 1 ? 2 : 1);
    }
    t.region_names = {"left", "middle", "right"};
    t.region_bounds = {3, static_cast<int>(3 * (cols - 2)), 3};
}

void set_affine_color(TilingDescriptor& t, int a, int b, int mod) {
    t.color_count = mod;
    t.color_period_i = mod;
    t.color_period_j = mod;
    t.color_table.assign(static_cast<std::size_t>(mod) * mod, 0);
    for (int i = 0; i < mod; ++i) {
        for (int j = 0; j < mod; ++j) {
            t.color_table[static_cast<std::size_t>(i) * mod + j] = (a * i + b * j) % mod;
        }
    }
}

std::vector<CellId> region_cells(const TilingDescriptor& t, TileCoord tile, int region) {
    const CellId anchor = tile_anchor(tile, t);
    std::vector<CellId> out;
    for (const auto& o : t.offsets) {
        if (o.region == region) out.push_back({anchor.q + o.cell.q, anchor.r + o.cell.r});
    }
    return out;
}

/// Min closed distance between same-colored tile pairs on the patch; does not
/// sample interiors. Used both by validate_tiling and the coloring search.
double same_color_min_separation(const TilingDescriptor& t, const HexGrid& grid,
                                 int patch_radius,
                                 std::vector<std::pair<TileCoord, TileCoord>>* critical) {
    std::vector<TileCoord> tiles;
    for (std::int64_t i = -patch_radius; i <= patch_radius; ++i) {
        for (std::int64_t j = -patch_radius; j <= patch_radius; ++j) {
            tiles.push_back({i, j});
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < tiles.size(); ++a) {
        const auto cells_a = tile_cells(tiles[a], t);
        for (std::size_t b = a + 1; b < tiles.size(); ++b) {
            if (tile_color(tiles[a].i, tiles[a].j, t) != tile_color(tiles[b].i, tiles[b].j, t)) {
                continue;
            }
            const auto cells_b = tile_cells(tiles[b], t);
            const double d = region_separation(cells_a, cells_b, grid);
            if (critical && d < kSepRequired + 0.05) {
                critical->push_back({tiles[a], tiles[b]});
            }
            best = std::min(best, d);
        }
    }
    return best;
}

/// Minimum over sampled interior points of region A (margin from A's outline)
/// of the distance to region B's closed boundary.
double sampled_interior_distance(std::span<const CellId> cells_a, std::span<const CellId> cells_b,
                                 const HexGrid& grid, SplitMix64& rng) {
    const auto outline_a = region_outline(cells_a, grid);
    const auto outline_b = region_outline(cells_b, grid);
    double best = std::numeric_limits<double>::infinity();
    int accepted = 0;
    int attempts = 0;
    const int max_attempts = kInteriorSamples * 20;
    while (accepted < kInteriorSamples && attempts < max_attempts) {
        ++attempts;
        const CellId c = cells_a[rng.next() % cells_a.size()];
        const Point ctr = grid.cell_center(c);
        const Point p{ctr.x + rng.uniform(-0.5, 0.5),
                      ctr.y + rng.uniform(-std::numbers::sqrt3 / 4, std::numbers::sqrt3 / 4)};
        if (!grid.point_in_cell(p, c, 0.0)) continue;
        if (point_region_distance(p, outline_a) <= kInteriorMargin) continue;
        ++accepted;
        best = std::min(best, point_region_distance(p, outline_b));
    }
    return best;
}

MonotoneChain chain_from_vertex_walk(const HexGrid& grid, MonotoneChain::Axis axis,
                                     std::span<const std::pair<CellId, int>> steps) {
    MonotoneChain chain;
    chain.axis = axis;
    for (const auto& [cell, vertex] : steps) {
        chain.vertices.push_back(grid.cell_vertices(cell)[vertex]);
    }
    return chain;
}

}  // namespace

std::string tile_kind_name(TileKind kind) {
    switch (kind) {
        case TileKind::septa: return "septa";
        case TileKind::supercell: return "supercell";
        case TileKind::dupercell: return "dupercell";
    }
    return "unknown";
}

std::optional<TileKind> tile_kind_from_name(const std::string& name) {
    if (name == "septa") return TileKind::septa;
    if (name == "supercell") return TileKind::supercell;
    if (name == "dupercell") return TileKind::dupercell;
    return std::nullopt;
}

std::int64_t TilingDescriptor::min_q() const {
    std::int64_t m = offsets.front().cell.q;
    for (const auto& o : offsets) m = std::min(m, o.cell.q);
    return m;
}
std::int64_t TilingDescriptor::max_q() const {
    std::int64_t m = offsets.front().cell.q;
    for (const auto& o : offsets) m = std::max(m, o.cell.q);
    return m;
}
std::int64_t TilingDescriptor::min_r() const {
    std::int64_t m = offsets.front().cell.r;
    for (const auto& o : offsets) m = std::min(m, o.cell.r);
    return m;
}
std::int64_t TilingDescriptor::max_r() const {
    std::int64_t m = offsets.front().cell.r;
    for (const auto& o : offsets) m = std::max(m, o.cell.r);
    return m;
}

TilePlacement tile_of(CellId c, const TilingDescriptor& t) {
    const auto aq = t.basis[0][0], ar = t.basis[0][1];
    const auto bq = t.basis[1][0], br = t.basis[1][1];
    const std::int64_t det = aq * br - ar * bq;
    if (det == 0) throw std::invalid_argument("tile_of: singular basis");
    std::optional<TilePlacement> found;
    for (std::size_t k = 0; k < t.offsets.size(); ++k) {
        const std::int64_t vq = c.q - t.offsets[k].cell.q;
        const std::int64_t vr = c.r - t.offsets[k].cell.r;
        //  v = i*A + j*B  =>  i = (v.q*br - v.r*bq)/det, j = (aq*v.r - ar*v.q)/det
        const std::int64_t in = vq * br - vr * bq;
        const std::int64_t jn = aq * vr - ar * vq;
        if (in % det != 0 || jn % det != 0) continue;
        if (found) throw std::invalid_argument("tile_of: offsets are not a coset system");
        found = TilePlacement{{in / det, jn / det}, static_cast<int>(k)};
    }
    if (!found) throw std::invalid_argument("tile_of: cell not covered by any offset");
    return *found;
}

CellId tile_anchor(TileCoord tile, const TilingDescriptor& t) {
    return {tile.i * t.basis[0][0] + tile.j * t.basis[1][0],
            tile.i * t.basis[0][1] + tile.j * t.basis[1][1]};
}

std::vector<CellId> tile_cells(TileCoord tile, const TilingDescriptor& t) {
    return tile_cells_at(tile_anchor(tile, t), t);
}

std::vector<CellId> tile_cells_at(CellId anchor, const TilingDescriptor& t) {
    std::vector<CellId> out;
    out.reserve(t.offsets.size());
    for (const auto& o : t.offsets) {
        out.push_back({anchor.q + o.cell.q, anchor.r + o.cell.r});
    }
    return out;
}

int tile_color(std::int64_t i, std::int64_t j, const TilingDescriptor& t) {
    const auto pi = emod(i, t.color_period_i);
    const auto pj = emod(j, t.color_period_j);
    return t.color_table[static_cast<std::size_t>(pi) * t.color_period_j + pj];
}

TilingDescriptor default_septa() {
    TilingDescriptor t;
    t.kind = TileKind::septa;
    t.basis = {{{2, 1}, {-1, 3}}};  // index-7 sublattice
    const CellId flower[7] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
    for (const CellId& c : flower) t.offsets.push_back({c, 0});
    t.region_names = {"tile"};
    t.region_bounds = {7};
    // 4-coloring on tile parity; opposite neighbor tiles share a color.
    t.color_count = 4;
    t.color_period_i = 2;
    t.color_period_j = 2;
    t.color_table = {0, 1, 2, 3};  // color(i, j) = 2*(i mod 2) + (j mod 2)
    return t;
}

TilingDescriptor default_supercell() {
    static const TilingDescriptor cached = [] {
        const HexGrid grid;
        // Deterministic search: row staggers then affine rules, first passing
        // closed-separation candidate wins.
        for (std::int64_t stagger = 0; stagger <= 4; ++stagger) {
            for (int a = 0; a <= 2; ++a) {
                for (int b = 0; b <= 2; ++b) {
                    if (a == 0 && b == 0) continue;
                    TilingDescriptor t = make_block_descriptor(TileKind::supercell, 5, stagger);
                    assign_supercell_regions(t, 5);
                    set_affine_color(t, a, b, 3);
                    const double sep = same_color_min_separation(t, grid, 2, nullptr);
                    if (sep >= kSepRequired - kSepTol) return t;
                }
            }
        }
        // No 3-coloring passed: 4-color fallback on the unstaggered lattice.
        TilingDescriptor t = make_block_descriptor(TileKind::supercell, 5, 0);
        assign_supercell_regions(t, 5);
        t.color_count = 4;
        t.color_period_i = 2;
        t.color_period_j = 2;
        t.color_table = {0, 1, 2, 3};
        return t;
    }();
    return cached;
}

TilingDescriptor default_dupercell() {
    static const TilingDescriptor cached = [] {
        const HexGrid grid;
        // One tile spans a whole shifting window, so the width grows in whole
        // 3-column strips until the left-right chain distance exceeds 8
        // (the 10-column two-super-cell nominal measures ~7.37).
        for (std::int64_t cols = 3; cols <= 30; cols += 3) {
            const auto left = block_left_chain(0, 0, 2, grid);
            const auto right = block_right_chain(cols - 1, 0, 2, grid);
            if (chain_distance(left, right) <= 8.0) continue;
            TilingDescriptor t = make_block_descriptor(TileKind::dupercell, cols, 0);
            t.split_columns = static_cast<int>(cols / 2);
            for (auto& o : t.offsets) o.region = o.cell.q < t.split_columns ? 0 : 1;
            t.region_names = {"left_half", "right_half"};
            t.region_bounds = {static_cast<int>(3 * t.split_columns),
                               static_cast<int>(3 * (cols - t.split_columns))};
            t.color_count = 1;
            t.color_period_i = 1;
            t.color_period_j = 1;
            t.color_table = {0};
            return t;
        }
        throw std::logic_error("default_dupercell: no width up to 30 columns satisfies the chain bound");
    }();
    return cached;
}

MonotoneChain block_left_chain(std::int64_t q, std::int64_t r0, std::int64_t r1,
                               const HexGrid& grid) {
    std::vector<std::pair<CellId, int>> steps;
    for (std::int64_t r = r0; r <= r1; ++r) {
        if (r == r0) steps.push_back({{q, r}, 4});
        steps.push_back({{q, r}, 3});
        steps.push_back({{q, r}, 2});  // equals vertex 4 of the cell above
    }
    return chain_from_vertex_walk(grid, MonotoneChain::Axis::y, steps);
}

MonotoneChain block_right_chain(std::int64_t q, std::int64_t r0, std::int64_t r1,
                                const HexGrid& grid) {
    std::vector<std::pair<CellId, int>> steps;
    for (std::int64_t r = r0; r <= r1; ++r) {
        if (r == r0) steps.push_back({{q, r}, 5});
        steps.push_back({{q, r}, 0});
        steps.push_back({{q, r}, 1});
    }
    return chain_from_vertex_walk(grid, MonotoneChain::Axis::y, steps);
}

MonotoneChain block_bottom_chain(std::int64_t q0, std::int64_t q1, std::int64_t r,
                                 const HexGrid& grid) {
    std::vector<std::pair<CellId, int>> steps;
    for (std::int64_t q = q0; q <= q1; ++q) {
        if (q == q0) steps.push_back({{q, r}, 4});
        steps.push_back({{q, r}, 5});
        steps.push_back({{q, r}, 0});  // equals vertex 4 of the next column's cell
    }
    return chain_from_vertex_walk(grid, MonotoneChain::Axis::x, steps);
}

MonotoneChain block_top_chain(std::int64_t q0, std::int64_t q1, std::int64_t r,
                              const HexGrid& grid) {
    std::vector<std::pair<CellId, int>> steps;
    for (std::int64_t q = q0; q <= q1; ++q) {
        if (q == q0) steps.push_back({{q, r}, 3});
        steps.push_back({{q, r}, 2});
        steps.push_back({{q, r}, 1});
    }
    return chain_from_vertex_walk(grid, MonotoneChain::Axis::x, steps);
}

const SeparationCheck* SeparationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

SeparationReport validate_tiling(const TilingDescriptor& t, const HexGrid& grid,
                                 int patch_radius, bool sample_interiors) {
    SeparationReport report;
    SplitMix64 rng(0x5eed5eedULL);

    // Partition property: every cell of a 40x40 patch maps to exactly one
    // (tile, offset) and tile expansion returns it.
    {
        SeparationCheck check{"partition", 1.0, 1.0, true, "exact on a 40x40 cell patch"};
        try {
            for (std::int64_t q = -20; q < 20 && check.pass; ++q) {
                for (std::int64_t r = -20; r < 20; ++r) {
                    const CellId c{q, r};
                    const TilePlacement pl = tile_of(c, t);
                    const CellId anchor = tile_anchor(pl.tile, t);
                    const CellId back{anchor.q + t.offsets[pl.offset_index].cell.q,
                                      anchor.r + t.offsets[pl.offset_index].cell.r};
                    if (back != c) {
                        check.pass = false;
                        check.measured = 0.0;
                        check.note = "tile expansion does not invert tile_of";
                        break;
                    }
                }
            }
        } catch (const std::invalid_argument& e) {
            check.pass = false;
            check.measured = 0.0;
            check.note = e.what();
        }
        report.checks.push_back(check);
    }

    // Same-colored tiles must be >= 2 apart (closed); interiors strictly > 2.
    // Dupercell tiles are separated by the shifting strategy, not a coloring.
    if (t.kind != TileKind::dupercell) {
        std::vector<std::pair<TileCoord, TileCoord>> critical;
        const double sep = same_color_min_separation(t, grid, patch_radius, &critical);
        report.same_color_min = sep;
        report.checks.push_back({"same_color_separation", sep, kSepRequired,
                                 sep >= kSepRequired - kSepTol,
                                 "min closed distance between same-colored tiles"});
        if (sample_interiors && sep >= kSepRequired - kSepTol) {
            double interior = std::numeric_limits<double>::infinity();
            const std::size_t limit = std::min<std::size_t>(critical.size(), 4);
            for (std::size_t k = 0; k < limit; ++k) {
                const auto cells_a = tile_cells(critical[k].first, t);
                const auto cells_b = tile_cells(critical[k].second, t);
                interior = std::min(interior, sampled_interior_distance(cells_a, cells_b, grid, rng));
                interior = std::min(interior, sampled_interior_distance(cells_b, cells_a, grid, rng));
            }
            report.checks.push_back({"same_color_interior", interior, kSepRequired,
                                     interior > kSepRequired,
                                     "sampled interior points, margin 1e-6"});
        }
    }

    // Side regions of one tile must be >= 2 apart so their covers are independent.
    if (t.kind == TileKind::supercell) {
        const auto left = region_cells(t, {0, 0}, 0);
        const auto right = region_cells(t, {0, 0}, 2);
        const double sep = region_separation(left, right, grid);
        report.region_separation_min = sep;
        report.checks.push_back({"side_region_separation", sep, kSepRequired,
                                 sep >= kSepRequired - kSepTol,
                                 "left column vs right column of one tile"});
        if (sample_interiors && sep >= kSepRequired - kSepTol) {
            double interior = sampled_interior_distance(left, right, grid, rng);
            interior = std::min(interior, sampled_interior_distance(right, left, grid, rng));
            report.checks.push_back({"side_region_interior", interior, kSepRequired,
                                     interior > kSepRequired,
                                     "sampled interior points, margin 1e-6"});
        }
    }

    if (t.kind == TileKind::dupercell) {
        const auto q0 = t.min_q(), q1 = t.max_q(), r0 = t.min_r(), r1 = t.max_r();
        const auto left = block_left_chain(q0, r0, r1, grid);
        const auto right = block_right_chain(q1, r0, r1, grid);
        const auto bottom = block_bottom_chain(q0, q1, r0, grid);
        const auto top = block_top_chain(q0, q1, r1, grid);
        report.chain_left_right = chain_distance(left, right);
        report.chain_top_bottom = chain_distance(bottom, top);
        report.checks.push_back({"chain_left_right", report.chain_left_right, 8.0,
                                 report.chain_left_right > 8.0,
                                 "window must span 4 strips of diameter-separated chains"});
        report.checks.push_back({"chain_top_bottom", report.chain_top_bottom, kSepRequired,
                                 report.chain_top_bottom >= kSepRequired - kSepTol,
                                 "band chains must be at least one disk diameter apart"});
        const bool monotone = left.is_monotone() && right.is_monotone() &&
                              bottom.is_monotone() && top.is_monotone();
        report.checks.push_back({"chain_monotone", monotone ? 1.0 : 0.0, 1.0, monotone,
                                 "boundary chains monotone along their axes"});

        // Each half is solved by the split search, which needs its outer
        // columns to be independent.
        const std::int64_t split = q0 + t.split_columns;
        std::vector<CellId> a, b;
        for (std::int64_t r = r0; r <= r1; ++r) {
            a.push_back({q0, r});
            b.push_back({split - 1, r});
        }
        const double half_sep = region_separation(a, b, grid);
        report.region_separation_min = half_sep;
        report.checks.push_back({"half_side_separation", half_sep, kSepRequired,
                                 half_sep >= kSepRequired - kSepTol,
                                 "outer columns of one half"});
    }

    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const SeparationCheck& c) { return c.pass; });
    return report;
}

nlohmann::ordered_json TilingDescriptor::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = tile_kind_name(kind);
    j["basis"] = {{basis[0][0], basis[0][1]}, {basis[1][0], basis[1][1]}};
    auto& offs = j["offsets"] = nlohmann::ordered_json::array();
    for (const auto& o : offsets) {
        offs.push_back({{"q", o.cell.q}, {"r", o.cell.r}, {"region", o.region}});
    }
    j["region_names"] = region_names;
    j["region_bounds"] = region_bounds;
    j["color_count"] = color_count;
    j["color_period"] = {color_period_i, color_period_j};
    j["color_table"] = color_table;
    j["split_columns"] = split_columns;
    return j;
}

TilingDescriptor TilingDescriptor::from_json(const nlohmann::json& j) {
    TilingDescriptor t;
    const auto kind = tile_kind_from_name(j.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("descriptor: unknown kind");
    t.kind = *kind;
    t.basis[0][0] = j.at("basis").at(0).at(0).get<std::int64_t>();
    t.basis[0][1] = j.at("basis").at(0).at(1).get<std::int64_t>();
    t.basis[1][0] = j.at("basis").at(1).at(0).get<std::int64_t>();
    t.basis[1][1] = j.at("basis").at(1).at(1).get<std::int64_t>();
    for (const auto& o : j.at("offsets")) {
        t.offsets.push_back({{o.at("q").get<std::int64_t>(), o.at("r").get<std::int64_t>()},
                             o.at("region").get<int>()});
    }
    if (t.offsets.empty()) throw std::invalid_argument("descriptor: no offsets");
    t.region_names = j.at("region_names").get<std::vector<std::string>>();
    t.region_bounds = j.at("region_bounds").get<std::vector<int>>();
    t.color_count = j.at("color_count").get<int>();
    t.color_period_i = j.at("color_period").at(0).get<int>();
    t.color_period_j = j.at("color_period").at(1).get<int>();
    t.color_table = j.at("color_table").get<std::vector<int>>();
    t.split_columns = j.value("split_columns", 0);
    if (t.color_table.size() !=
        static_cast<std::size_t>(t.color_period_i) * t.color_period_j) {
        throw std::invalid_argument("descriptor: color table size mismatch");
    }
    return t;
}

nlohmann::ordered_json SeparationReport::to_json() const {
    nlohmann::ordered_json j;
    j["pass"] = pass;
    auto& arr = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"measured", c.measured},
                       {"required", c.required},
                       {"pass", c.pass},
                       {"note", c.note}});
    }
    return j;
}

}  // namespace mds
