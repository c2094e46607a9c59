#include "mds/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace mds {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

// Vertex offsets from a cell center, angles 0, 60, ..., 300 degrees.
constexpr std::array<Point, 6> kVertexOffset = {{
    {0.5, 0.0},
    {0.25, kSqrt3 / 4.0},
    {-0.25, kSqrt3 / 4.0},
    {-0.5, 0.0},
    {-0.25, -kSqrt3 / 4.0},
    {0.25, -kSqrt3 / 4.0},
}};

// Neighbor across edge k (edge k joins vertices k and k+1).
constexpr std::array<std::array<std::int64_t, 2>, 6> kEdgeNeighbor = {{
    {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1},
}};

double cross(Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

double dist(const Point& p, const Point& q) { return std::sqrt(dist_sq(p, q)); }

double row_pitch() { return kSqrt3 / 2.0; }

HexGrid HexGrid::with_offset(double dx, double dy) {
    // Reduce (dx, dy) modulo the center lattice spanned by (0.75, sqrt3/4) and (0, sqrt3/2).
    const double row = kSqrt3 / 2.0;
    double a = dx / kColPitch;
    double b = (dy - a * (row / 2.0)) / row;
    a -= std::floor(a);
    b -= std::floor(b);
    HexGrid g;
    g.dx_ = a * kColPitch;
    g.dy_ = a * (row / 2.0) + b * row;
    return g;
}

Point HexGrid::cell_center(CellId c) const {
    const double q = static_cast<double>(c.q);
    const double r = static_cast<double>(c.r);
    return {kColPitch * q + dx_, (kSqrt3 / 2.0) * (r + q / 2.0) + dy_};
}

CellId HexGrid::cell_of(Point p) const {
    const double lx = p.x - dx_;
    const double ly = p.y - dy_;
    const double qf = lx / kColPitch;
    const double rf = ly / (kSqrt3 / 2.0) - qf / 2.0;
    const auto q0 = static_cast<std::int64_t>(std::llround(qf));
    const auto r0 = static_cast<std::int64_t>(std::llround(rf));

    CellId best{q0 - 2, r0 - 2};
    double best_d2 = dist_sq(p, cell_center(best));
    for (std::int64_t dq = -2; dq <= 2; ++dq) {
        for (std::int64_t dr = -2; dr <= 2; ++dr) {
            const CellId c{q0 + dq, r0 + dr};
            const double d2 = dist_sq(p, cell_center(c));
            if (d2 < best_d2 || (d2 == best_d2 && c < best)) {
                best = c;
                best_d2 = d2;
            }
        }
    }
    return best;
}

std::array<Point, 6> HexGrid::cell_vertices(CellId c) const {
    const Point ctr = cell_center(c);
    std::array<Point, 6> out;
    for (int k = 0; k < 6; ++k) {
        out[k] = {ctr.x + kVertexOffset[k].x, ctr.y + kVertexOffset[k].y};
    }
    return out;
}

bool HexGrid::point_in_cell(Point p, CellId c, double eps) const {
    // Intersection of three slabs with normals at 30, 90 and 150 degrees,
    // each of half-width apothem = sqrt3/4.
    const Point ctr = cell_center(c);
    const double ux = p.x - ctr.x, uy = p.y - ctr.y;
    const double apo = kSqrt3 / 4.0 + eps;
    const double n1 = std::abs(uy);                                  // 90 deg
    const double n2 = std::abs(ux * (kSqrt3 / 2.0) + uy * 0.5);      // 30 deg
    const double n3 = std::abs(-ux * (kSqrt3 / 2.0) + uy * 0.5);     // 150 deg
    return n1 <= apo && n2 <= apo && n3 <= apo;
}

double point_segment_distance(Point p, const Segment& s) {
    const double vx = s.b.x - s.a.x, vy = s.b.y - s.a.y;
    const double len2 = vx * vx + vy * vy;
    if (len2 == 0.0) return dist(p, s.a);
    double t = ((p.x - s.a.x) * vx + (p.y - s.a.y) * vy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const Point proj{s.a.x + t * vx, s.a.y + t * vy};
    return dist(p, proj);
}

double segment_distance(const Segment& s, const Segment& t) {
    const double o1 = cross(s.a, s.b, t.a);
    const double o2 = cross(s.a, s.b, t.b);
    const double o3 = cross(t.a, t.b, s.a);
    const double o4 = cross(t.a, t.b, s.b);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return 0.0;
    return std::min(std::min(point_segment_distance(s.a, t), point_segment_distance(s.b, t)),
                    std::min(point_segment_distance(t.a, s), point_segment_distance(t.b, s)));
}

CellId edge_neighbor(CellId c, int edge) {
    return {c.q + kEdgeNeighbor[edge][0], c.r + kEdgeNeighbor[edge][1]};
}

std::vector<Segment> region_outline(std::span<const CellId> cells, const HexGrid& grid) {
    std::unordered_set<CellId, CellIdHash> in(cells.begin(), cells.end());
    std::vector<Segment> out;
    for (const CellId& c : cells) {
        const auto vs = grid.cell_vertices(c);
        for (int k = 0; k < 6; ++k) {
            if (!in.contains(edge_neighbor(c, k))) {
                out.push_back({vs[k], vs[(k + 1) % 6]});
            }
        }
    }
    return out;
}

double region_separation(std::span<const CellId> a, std::span<const CellId> b,
                         const HexGrid& grid) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("region_separation: empty cell set");
    }
    std::unordered_set<CellId, CellIdHash> in_a(a.begin(), a.end());
    for (const CellId& c : b) {
        if (in_a.contains(c)) return 0.0;
    }
    const auto oa = region_outline(a, grid);
    const auto ob = region_outline(b, grid);
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& sa : oa) {
        for (const Segment& sb : ob) {
            best = std::min(best, segment_distance(sa, sb));
            if (best == 0.0) return 0.0;
        }
    }
    return best;
}

double point_region_distance(Point p, std::span<const Segment> outline) {
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& s : outline) {
        best = std::min(best, point_segment_distance(p, s));
    }
    return best;
}

bool MonotoneChain::is_monotone() const {
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const double prev = axis == Axis::y ? vertices[i - 1].y : vertices[i - 1].x;
        const double cur = axis == Axis::y ? vertices[i].y : vertices[i].x;
        if (cur < prev) return false;
    }
    return true;
}

double chain_distance(const MonotoneChain& a, const MonotoneChain& b) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < a.vertices.size(); ++i) {
        const Segment sa{a.vertices[i], a.vertices[i + 1]};
        for (std::size_t j = 0; j + 1 < b.vertices.size(); ++j) {
            best = std::min(best, segment_distance(sa, {b.vertices[j], b.vertices[j + 1]}));
        }
    }
    return best;
}

double chain_x_at(const MonotoneChain& chain, double y) {
    const auto& v = chain.vertices;
    if (v.empty()) throw std::invalid_argument("chain_x_at: empty chain");
    if (y <= v.front().y) return v.front().x;
    if (y >= v.back().y) return v.back().x;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (y >= v[i].y && y <= v[i + 1].y) {
            const double dy = v[i + 1].y - v[i].y;
            if (dy == 0.0) return std::min(v[i].x, v[i + 1].x);
            const double t = (y - v[i].y) / dy;
            return v[i].x + t * (v[i + 1].x - v[i].x);
        }
    }
    return v.back().x;
}

double point_chain_distance(Point p, const MonotoneChain& chain, bool extend_vertically) {
    const auto& v = chain.vertices;
    if (v.empty()) throw std::invalid_argument("point_chain_distance: empty chain");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        best = std::min(best, point_segment_distance(p, {v[i], v[i + 1]}));
    }
    if (extend_vertically) {
        // Vertical rays continuing the chain below its first and above its last vertex.
        if (p.y <= v.front().y) best = std::min(best, std::abs(p.x - v.front().x));
        if (p.y >= v.back().y) best = std::min(best, std::abs(p.x - v.back().x));
    }
    return best;
}

}  // namespace mds
