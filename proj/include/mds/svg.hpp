#pragma once

#include <optional>
#include <string>

#include "mds/cover.hpp"
#include "mds/instance.hpp"
#include "mds/tiling.hpp"

namespace mds {

/// SVG 1.1 diagram of the instance: hex grid over the bounding box, optional
/// tile tinting by color class, points as dots, chosen centers with their
/// unit disks. Pure function of its inputs; output bytes are stable.
std::string render_svg(const Instance& inst, const Solution* solution,
                       const TilingDescriptor* tiling, const HexGrid& grid);

}  // namespace mds
