#include "mds/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mds/rng.hpp"

namespace mds {

namespace {

bool parse_double(std::string_view s, double& out) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, out);
    return res.ec == std::errc() && res.ptr == end;
}

Instance parse_csv(const std::string& text, const std::string& name) {
    Instance inst;
    inst.name = name;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string_view sv(line);
        while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front()))) sv.remove_prefix(1);
        while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back()))) sv.remove_suffix(1);
        if (sv.empty()) continue;
        const auto comma = sv.find(',');
        double x = 0.0, y = 0.0;
        if (comma == std::string_view::npos || !parse_double(sv.substr(0, comma), x) ||
            !parse_double(sv.substr(comma + 1), y)) {
            throw ParseError(name + ": line " + std::to_string(line_no) +
                             ": expected 'x,y'");
        }
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw ParseError(name + ": line " + std::to_string(line_no) +
                             ": non-finite coordinate");
        }
        inst.points.push_back({x, y});
    }
    return inst;
}

Instance parse_envelope(const std::string& text, const std::string& name) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(name + ": invalid JSON: " + e.what());
    }
    Instance inst;
    inst.name = j.value("name", name);
    if (j.contains("generator")) inst.provenance["generator"] = j["generator"];
    if (j.contains("seed")) inst.provenance["seed"] = j["seed"];
    if (j.contains("params")) inst.provenance["params"] = j["params"];
    if (j.contains("width")) inst.width = j["width"].get<double>();
    if (j.contains("height")) inst.height = j["height"].get<double>();
    for (const auto& p : j.at("points")) {
        const double x = p.at(0).get<double>();
        const double y = p.at(1).get<double>();
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw ParseError(name + ": non-finite coordinate in points");
        }
        inst.points.push_back({x, y});
    }
    return inst;
}

double gaussian(SplitMix64& rng) {
    // Box-Muller; u1 in (0,1] so the log is finite.
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

Instance parse_instance(const std::string& text, const std::string& name) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '{') return parse_envelope(text, name);
        break;
    }
    return parse_csv(text, name);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), path);
}

std::string instance_to_csv(const Instance& inst) {
    std::string out;
    if (!inst.name.empty()) out += "# " + inst.name + "\n";
    char line[80];
    for (const Point& p : inst.points) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", p.x, p.y);
        out += line;
    }
    return out;
}

nlohmann::ordered_json instance_to_json(const Instance& inst) {
    nlohmann::ordered_json j;
    j["name"] = inst.name;
    if (inst.provenance.contains("generator")) j["generator"] = inst.provenance["generator"];
    if (inst.provenance.contains("seed")) j["seed"] = inst.provenance["seed"];
    if (inst.provenance.contains("params")) j["params"] = inst.provenance["params"];
    j["width"] = inst.width;
    j["height"] = inst.height;
    auto& pts = j["points"] = nlohmann::ordered_json::array();
    for (const Point& p : inst.points) pts.push_back({p.x, p.y});
    return j;
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write instance file: " + path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        out << instance_to_json(inst).dump(2) << "\n";
    } else {
        out << instance_to_csv(inst);
    }
}

Instance gen_uniform(int n, double width, double height, std::uint64_t seed) {
    if (n < 0 || width <= 0.0 || height <= 0.0) {
        throw std::invalid_argument("gen_uniform: need n >= 0 and a positive box");
    }
    Instance inst;
    inst.name = "uniform-n" + std::to_string(n) + "-s" + std::to_string(seed);
    inst.width = width;
    inst.height = height;
    inst.provenance["generator"] = "uniform";
    inst.provenance["seed"] = seed;
    inst.provenance["params"] = {{"n", n}, {"width", width}, {"height", height}};
    SplitMix64 rng(seed);
    inst.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = rng.uniform(0.0, width);
        const double y = rng.uniform(0.0, height);
        inst.points.push_back({x, y});
    }
    return inst;
}

Instance gen_clustered(int n, int clusters, double spread, double width, double height,
                       std::uint64_t seed) {
    if (n < 0 || clusters < 1 || spread <= 0.0 || width <= 0.0 || height <= 0.0) {
        throw std::invalid_argument("gen_clustered: invalid parameters");
    }
    Instance inst;
    inst.name = "clustered-n" + std::to_string(n) + "-s" + std::to_string(seed);
    inst.width = width;
    inst.height = height;
    inst.provenance["generator"] = "clustered";
    inst.provenance["seed"] = seed;
    inst.provenance["params"] = {
        {"n", n}, {"clusters", clusters}, {"spread", spread}, {"width", width}, {"height", height}};
    SplitMix64 rng(seed);
    std::vector<Point> centers;
    centers.reserve(static_cast<std::size_t>(clusters));
    for (int c = 0; c < clusters; ++c) {
        const double x = rng.uniform(0.0, width);
        const double y = rng.uniform(0.0, height);
        centers.push_back({x, y});
    }
    for (int i = 0; i < n; ++i) {
        const Point& c = centers[static_cast<std::size_t>(i % clusters)];
        const double gx = gaussian(rng);
        const double gy = gaussian(rng);
        inst.points.push_back({std::clamp(c.x + spread * gx, 0.0, width),
                               std::clamp(c.y + spread * gy, 0.0, height)});
    }
    return inst;
}

}  // namespace mds
