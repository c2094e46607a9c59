#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace mds {

// All disks have radius exactly 1; coordinates are in disk-radius units.

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double dist_sq(const Point& p, const Point& q) {
    const double dx = p.x - q.x, dy = p.y - q.y;
    return dx * dx + dy * dy;
}

double dist(const Point& p, const Point& q);

/// Closed unit disk: exact <= on the squared distance, no epsilon inflation.
inline bool covers(const Point& center, const Point& target) {
    return dist_sq(center, target) <= 1.0;
}

/// Axial address of a hexagonal cell. Cell center in Cartesian coordinates is
/// (0.75*q + dx, (sqrt(3)/2)*(r + q/2) + dy); adjacent centers are sqrt(3)/2 apart.
struct CellId {
    std::int64_t q = 0;
    std::int64_t r = 0;
    auto operator<=>(const CellId&) const = default;
};

struct CellIdHash {
    std::size_t operator()(const CellId& c) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(c.q) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(c.r) + 0x517cc1b727220a95ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

inline constexpr double kCellSide = 0.5;   // hexagon side; cell diameter is exactly 1
inline constexpr double kColPitch = 0.75;  // horizontal distance between adjacent columns
double row_pitch();                        // sqrt(3)/2, vertical distance within a column

/// Flat-top hexagonal grid of side-1/2 cells. The offset translates the whole
/// lattice and is normalized into one fundamental domain at construction.
class HexGrid {
public:
    HexGrid() = default;
    static HexGrid with_offset(double dx, double dy);

    double dx() const { return dx_; }
    double dy() const { return dy_; }

    Point cell_center(CellId c) const;

    /// Cell whose center is nearest to p; ties broken by lexicographically
    /// smallest (q, r). The induced regions are exactly the hexagonal cells,
    /// with a deterministic assignment for boundary points.
    CellId cell_of(Point p) const;

    /// Six vertices at distance 1/2 from the center, angles 0, 60, ..., 300 degrees.
    std::array<Point, 6> cell_vertices(CellId c) const;

    /// Closed-hexagon membership test with absolute tolerance eps.
    bool point_in_cell(Point p, CellId c, double eps = 1e-9) const;

private:
    double dx_ = 0.0;
    double dy_ = 0.0;
};

struct Segment {
    Point a;
    Point b;
};

double point_segment_distance(Point p, const Segment& s);
double segment_distance(const Segment& s, const Segment& t);

/// Neighbor offset across edge k of a cell, where edge k joins vertices k and k+1.
CellId edge_neighbor(CellId c, int edge);

/// Boundary of the closed union of cells: every cell edge whose neighbor is
/// not part of the region. Membership is decided on integer cell ids, so
/// shared edges are identified exactly.
std::vector<Segment> region_outline(std::span<const CellId> cells, const HexGrid& grid);

/// Exact minimum distance between the closed unions of two cell sets
/// (0 if they share a cell or touch). Throws std::invalid_argument on empty input.
double region_separation(std::span<const CellId> a, std::span<const CellId> b,
                         const HexGrid& grid);

double point_region_distance(Point p, std::span<const Segment> outline);

/// Polyline whose vertex projections onto the stated axis are nondecreasing
/// (any perpendicular to the axis meets the chain at most once).
struct MonotoneChain {
    enum class Axis { x, y };
    Axis axis = Axis::y;
    std::vector<Point> vertices;

    bool is_monotone() const;
};

double chain_distance(const MonotoneChain& a, const MonotoneChain& b);

/// x-coordinate of a y-monotone chain at height y; ends are extended by
/// vertical rays. Used to classify points as left/right of a chain.
double chain_x_at(const MonotoneChain& chain, double y);

double point_chain_distance(Point p, const MonotoneChain& chain, bool extend_vertically);

}  // namespace mds
