#pragma once

#include <functional>
#include <span>

#include "mds/cover.hpp"
#include "mds/instance.hpp"
#include "mds/tiling.hpp"

namespace mds {

/// A driver's separation validation failed; guarantees cannot be claimed.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shifting direction: horizontal windows advance along x over vertical
/// strips of columns; vertical windows advance along y over row bands.
enum class ShiftAxis { horizontal, vertical };

/// How crossing-disk subsets are drawn when splitting a window at its middle
/// chain: one pool (default) or one subset per side (differential testing).
enum class CrossingMode { joint, independent };

struct SolverOptions {
    int threads = 1;
    bool faithful = false;               // literal descending search per tile
    CrossingMode crossing = CrossingMode::joint;
    int exact_limit = 24;                // candidate guard for exact window searches
};

/// Cells per strip: the smallest column/row group whose boundary chains are
/// at least one disk diameter (2) apart.
inline constexpr int kStripCells = 3;

struct ValidatedTiling {
    TilingDescriptor descriptor;
    SeparationReport report;
};

/// Default descriptors with their validation reports, computed once.
const ValidatedTiling& septa_tiling();
const ValidatedTiling& supercell_tiling();
const ValidatedTiling& dupercell_tiling();

/// Indices of the instance points lying in the tile anchored at `anchor`.
std::vector<int> points_in_tile(std::span<const Point> points, const HexGrid& grid,
                                const TilingDescriptor& t, CellId anchor);

/// One point (smallest index) per nonempty cell; always a dominating set
/// because a cell's diameter is exactly the disk radius budget.
Solution cell_baseline(const Instance& inst, const HexGrid& grid);

/// Optimal cover of the tile's points using candidates drawn from the whole
/// set: bounded search over subset sizes with one-disk completion. The
/// faithful variant reproduces the descending-size loop with its size-6
/// completion special case; both return minimum covers.
std::vector<int> solve_septa(std::span<const Point> points, const HexGrid& grid,
                             const TilingDescriptor& t, CellId anchor,
                             std::span<const int> targets, bool faithful = false);

/// Optimal cover of a super-cell tile: enumerate middle-region covers, then
/// complete the side columns independently (their candidate sets cannot share
/// a disk when the side separation check holds).
std::vector<int> solve_supercell(std::span<const Point> points, const HexGrid& grid,
                                 const TilingDescriptor& t, CellId anchor,
                                 std::span<const int> targets);

/// Optimal cover of a duper-cell window: enumerate subsets of disks crossing
/// the middle chain, then solve the two halves independently.
std::vector<int> solve_dupercell(std::span<const Point> points, const HexGrid& grid,
                                 const TilingDescriptor& t, CellId anchor,
                                 std::span<const int> targets,
                                 CrossingMode mode = CrossingMode::joint);

/// Per-tile optimal solves over every nonempty tile of the septa partition;
/// the 4-coloring separation makes each color class's union optimal, giving
/// factor 4.
Solution four_factor(const Instance& inst, const HexGrid& grid, const SolverOptions& = {});

/// Same driver over the super-cell partition and its validated coloring.
Solution three_factor(const Instance& inst, const HexGrid& grid, const SolverOptions& = {});

struct ShiftConfig {
    ShiftAxis axis = ShiftAxis::horizontal;
    int group_size = 1;  // strips per window (the shifting parameter)
};

/// Solves one window given its first strip index and the point indices inside.
using WindowSolver =
    std::function<std::vector<int>(std::int64_t first_strip, std::span<const int> targets)>;

struct ShiftedResult {
    std::vector<std::vector<int>> per_shift;  // union of window solutions per shift
    int best_shift = 0;

    const std::vector<int>& best() const { return per_shift[best_shift]; }
};

/// Shifting strategy: for each shift offset, group strips into windows of
/// group_size, solve windows independently, take the union; returns all per-
/// shift unions and the index of the smallest (ties to the smallest shift).
ShiftedResult shifted_solve(std::span<const Point> points, const HexGrid& grid,
                            std::span<const int> targets, ShiftConfig cfg,
                            const WindowSolver& solver, int threads = 1);

/// Row bands (no vertical shifting) composed with horizontal shifting over
/// 4-strip windows solved exactly per duper-cell: factor (1+1/4)(1+1/1) = 5/2.
Solution five_half(const Instance& inst, const HexGrid& grid, const SolverOptions& = {});

/// Double shifting with k-strip windows per axis and an exact search per
/// window: factor (1+1/k)^2. Throws GuardError when a window's candidate
/// count exceeds the exact-search limit.
Solution ptas(const Instance& inst, int k, const HexGrid& grid, const SolverOptions& = {});

}  // namespace mds
