#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mds/geom.hpp"

#include "json.hpp"

namespace mds {

enum class TileKind { septa, supercell, dupercell };

std::string tile_kind_name(TileKind kind);
std::optional<TileKind> tile_kind_from_name(const std::string& name);

/// Data-driven tile definition: a sublattice basis (axial vectors), the cell
/// offsets composing one tile with a region label each, and a periodic color
/// rule on tile coordinates. Tilings are data, not code: any descriptor that
/// passes validate_tiling gives the same driver guarantees.
struct TilingDescriptor {
    struct Offset {
        CellId cell;
        int region = 0;
    };

    TileKind kind = TileKind::septa;
    std::array<std::array<std::int64_t, 2>, 2> basis{};  // columns A, B in axial coords
    std::vector<Offset> offsets;
    std::vector<std::string> region_names;
    std::vector<int> region_bounds;  // cell count per region; caps per-region cover sizes

    int color_count = 1;
    int color_period_i = 1;
    int color_period_j = 1;
    std::vector<int> color_table;  // row-major [period_i][period_j]

    int split_columns = 0;  // dupercell: columns per half

    std::int64_t min_q() const;
    std::int64_t max_q() const;
    std::int64_t min_r() const;
    std::int64_t max_r() const;

    nlohmann::ordered_json to_json() const;
    static TilingDescriptor from_json(const nlohmann::json& j);
};

struct TileCoord {
    std::int64_t i = 0;
    std::int64_t j = 0;
    auto operator<=>(const TileCoord&) const = default;
};

struct TilePlacement {
    TileCoord tile;
    int offset_index = 0;
};

/// Unique (tile, offset) containing a cell. Throws std::invalid_argument if the
/// descriptor's offsets are not a coset-representative system (partition violated).
TilePlacement tile_of(CellId c, const TilingDescriptor& t);

CellId tile_anchor(TileCoord tile, const TilingDescriptor& t);
std::vector<CellId> tile_cells(TileCoord tile, const TilingDescriptor& t);
std::vector<CellId> tile_cells_at(CellId anchor, const TilingDescriptor& t);

int tile_color(std::int64_t i, std::int64_t j, const TilingDescriptor& t);

/// Septa-hexagon: 7 cells (center plus its six neighbors) on an index-7
/// sublattice, 4-colored so that opposite neighbor tiles share a color.
TilingDescriptor default_septa();

/// Super-cell: a 5-column x 3-row block split into left column / middle
/// block / right column regions. The 3-coloring (row stagger + affine rule)
/// is chosen by a deterministic search over candidates, keeping the first one
/// whose separation checks pass; falls back to 4 colors if none does.
TilingDescriptor default_supercell();

/// Duper-cell: two side-by-side half blocks spanning one shifting window
/// (4 strips of 3 columns). The width starts from the two-super-cell nominal
/// and widens in whole strips until the left-right chain distance exceeds 8.
TilingDescriptor default_dupercell();

/// Boundary chains of a rectangular (in axial coordinates) block of cells.
MonotoneChain block_left_chain(std::int64_t q, std::int64_t r0, std::int64_t r1,
                               const HexGrid& grid);
MonotoneChain block_right_chain(std::int64_t q, std::int64_t r0, std::int64_t r1,
                                const HexGrid& grid);
MonotoneChain block_bottom_chain(std::int64_t q0, std::int64_t q1, std::int64_t r,
                                 const HexGrid& grid);
MonotoneChain block_top_chain(std::int64_t q0, std::int64_t q1, std::int64_t r,
                              const HexGrid& grid);

struct SeparationCheck {
    std::string name;
    double measured = 0.0;
    double required = 0.0;
    bool pass = false;
    std::string note;
};

/// Measured evidence for the separation properties the approximation proofs
/// rely on. All distances are exact region_separation / chain_distance outputs.
struct SeparationReport {
    bool pass = false;
    std::vector<SeparationCheck> checks;
    double same_color_min = 0.0;       // min closed distance, same-colored tile pairs
    double region_separation_min = 0.0;  // side-region pair within one tile
    double chain_left_right = 0.0;     // dupercell only
    double chain_top_bottom = 0.0;     // dupercell only

    const SeparationCheck* find(const std::string& name) const;
    nlohmann::ordered_json to_json() const;
};

/// Certifies a descriptor on a patch of (2*patch_radius+1)^2 tiles:
/// partition property, same-colored tile separation >= 2 (closed, with
/// interior samples strictly > 2), side-region separation for supercells,
/// and boundary chain distances for dupercells.
SeparationReport validate_tiling(const TilingDescriptor& t, const HexGrid& grid,
                                 int patch_radius = 2, bool sample_interiors = true);

}  // namespace mds
