#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mds/geom.hpp"

#include "json.hpp"

namespace mds {

/// Refusal to run an exact search past its configured size limit.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A covering subproblem over a shared backing point list: cover every target
/// with unit disks centered at candidate points.
struct CoverInstance {
    std::span<const Point> points;
    std::vector<int> targets;
    std::vector<int> candidates;
};

/// A certified result: chosen indices into the backing point list, sorted.
struct Solution {
    std::vector<int> chosen;
    std::string algorithm;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    bool certified = false;   // every instance point within distance 1 of a chosen point
    bool guaranteed = false;  // the driver's separation validation passed

    int size() const { return static_cast<int>(chosen.size()); }
};

/// Points of u2 whose unit disk covers at least one point of u1. Sorted.
std::vector<int> chi(std::span<const Point> points, std::span<const int> u1,
                     std::span<const int> u2);

/// Targets at distance > 1 from every center; uncovered({}, T) = T.
std::vector<int> uncovered(std::span<const Point> points, std::span<const int> centers,
                           std::span<const int> targets);

/// First candidate in index order whose farthest target is within distance 1.
std::optional<int> one_disk_completion(std::span<const Point> points,
                                       std::span<const int> candidates,
                                       std::span<const int> targets);

/// Minimum-cardinality cover of the targets by candidate disks, if one of size
/// <= ub exists. Deterministic search order: sizes ascending; for size j,
/// (j-1)-subsets in lexicographic index order, each completed by
/// one_disk_completion; the first hit is returned.
std::optional<std::vector<int>> min_cover_bounded(const CoverInstance& ci, int ub);

/// Exact minimum cover by branch and bound over uncovered targets, starting
/// from a known feasible solution (the bound). Shared by exact_mds and the
/// per-window exact search.
std::vector<int> exact_cover_branch_bound(std::span<const Point> points,
                                          std::span<const int> targets,
                                          std::span<const int> candidates,
                                          std::vector<int> initial);

bool is_dominating(std::span<const Point> points, std::span<const int> chosen);

/// Ground-truth minimum dominating set (centers from the point set itself).
/// Refuses instances above the size limit; branch and bound seeded with the
/// one-point-per-nonempty-cell cover.
Solution exact_mds(std::span<const Point> points, const HexGrid& grid, int limit = 24);

}  // namespace mds
