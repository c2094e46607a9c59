#pragma once

#include <string>
#include <vector>

#include "mds/geom.hpp"

#include "json.hpp"

namespace mds {

/// Input parse failure; message carries the offending line number.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point set inside a rectangular region. Point order is significant:
/// index-based tie-breaks make every solver deterministic.
struct Instance {
    std::string name;
    std::vector<Point> points;
    double width = 0.0;   // declared box; 0 means derived from the points
    double height = 0.0;
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object();

    int size() const { return static_cast<int>(points.size()); }
};

/// Text format: one "x,y" pair per line, '#' comments and blank lines ignored.
/// A leading '{' switches to the JSON envelope
/// {name, generator, seed, params, points:[[x,y],...]}.
Instance load_instance(const std::string& path);
Instance parse_instance(const std::string& text, const std::string& name);

/// CSV with 17 significant digits (lossless round trip); a .json extension
/// writes the JSON envelope instead.
void save_instance(const Instance& inst, const std::string& path);
std::string instance_to_csv(const Instance& inst);
nlohmann::ordered_json instance_to_json(const Instance& inst);

/// n points i.i.d. uniform in [0,width] x [0,height]; splitmix64 stream,
/// x drawn before y for each point.
Instance gen_uniform(int n, double width, double height, std::uint64_t seed);

/// Cluster centers uniform in the box, points Gaussian (Box-Muller) around
/// centers assigned round-robin, clipped to the box.
Instance gen_clustered(int n, int clusters, double spread, double width, double height,
                       std::uint64_t seed);

}  // namespace mds
