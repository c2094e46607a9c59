#include "mds/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace mds {

namespace {

const char* kClassFill[8] = {"#c6dbef", "#fdd0a2", "#c7e9c0", "#dadaeb",
                             "#fee0d2", "#d9d9d9", "#fff7bc", "#e5f5e0"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

std::string render_svg(const Instance& inst, const Solution* solution,
                       const TilingDescriptor* tiling, const HexGrid& grid) {
    double min_x = 0.0, min_y = 0.0;
    double max_x = inst.width > 0 ? inst.width : 1.0;
    double max_y = inst.height > 0 ? inst.height : 1.0;
    for (const Point& p : inst.points) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    const double margin = 1.5;
    min_x -= margin;
    min_y -= margin;
    max_x += margin;
    max_y += margin;

    const double scale = 60.0;
    const double w = (max_x - min_x) * scale;
    const double h = (max_y - min_y) * scale;
    auto X = [&](double x) { return (x - min_x) * scale; };
    auto Y = [&](double y) { return h - (y - min_y) * scale; };  // y up

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(w) +
           "\" height=\"" + fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // cells covering the viewport; the row index drifts with the column
    const double row = std::numbers::sqrt3 / 2.0;
    const auto q0 = static_cast<std::int64_t>(std::floor((min_x - grid.dx()) / kColPitch)) - 1;
    const auto q1 = static_cast<std::int64_t>(std::ceil((max_x - grid.dx()) / kColPitch)) + 1;

    out += "<g stroke=\"#9aa5b1\" stroke-width=\"0.8\">\n";
    for (std::int64_t q = q0; q <= q1; ++q) {
        const double qh = static_cast<double>(q) / 2.0;
        const auto rl =
            static_cast<std::int64_t>(std::floor((min_y - grid.dy()) / row - qh)) - 1;
        const auto rh =
            static_cast<std::int64_t>(std::ceil((max_y - grid.dy()) / row - qh)) + 1;
        for (std::int64_t r = rl; r <= rh; ++r) {
            const Point c = grid.cell_center({q, r});
            if (c.x < min_x - 1 || c.x > max_x + 1 || c.y < min_y - 1 || c.y > max_y + 1) {
                continue;
            }
            std::string fill = "none";
            if (tiling) {
                const auto pl = tile_of({q, r}, *tiling);
                const int color = tile_color(pl.tile.i, pl.tile.j, *tiling);
                fill = kClassFill[color % 8];
            }
            const auto vs = grid.cell_vertices({q, r});
            out += "<polygon fill=\"" + fill + "\" points=\"";
            for (int k = 0; k < 6; ++k) {
                if (k) out += " ";
                out += fmt(X(vs[k].x)) + "," + fmt(Y(vs[k].y));
            }
            out += "\"/>\n";
        }
    }
    out += "</g>\n";

    if (solution) {
        out += "<g fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.2\">\n";
        for (int idx : solution->chosen) {
            const Point& p = inst.points[idx];
            out += "<circle cx=\"" + fmt(X(p.x)) + "\" cy=\"" + fmt(Y(p.y)) + "\" r=\"" +
                   fmt(scale) + "\"/>\n";
        }
        out += "</g>\n";
    }

    out += "<g fill=\"#1b1b1b\">\n";
    for (const Point& p : inst.points) {
        out += "<circle cx=\"" + fmt(X(p.x)) + "\" cy=\"" + fmt(Y(p.y)) +
               "\" r=\"2.5\"/>\n";
    }
    out += "</g>\n";

    if (solution) {
        out += "<g fill=\"#d62728\">\n";
        for (int idx : solution->chosen) {
            const Point& p = inst.points[idx];
            out += "<circle cx=\"" + fmt(X(p.x)) + "\" cy=\"" + fmt(Y(p.y)) +
                   "\" r=\"4\"/>\n";
        }
        out += "</g>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace mds
