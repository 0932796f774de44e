#pragma once

#include <span>
#include <string>

#include "polytess/geometry.hpp"

namespace polytess {

/// 1000 x 1000 SVG of the window B_R: the lines clipped to the disk, the
/// window circle, and the given triangles filled.
std::string render_svg(std::span<const Line> lines,
                       std::span<const ConvexPolygon> triangles, double radius);

}  // namespace polytess
