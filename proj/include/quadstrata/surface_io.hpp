#pragma once

#include "quadstrata/json_io.hpp"
#include "quadstrata/surface.hpp"
#include "quadstrata/verify.hpp"

#include <string>

namespace quadstrata {

Json to_json(const FlatSurface& surface);
FlatSurface surface_from_json(const Json& j);

Json to_json(const LocalInvariants& inv);

// Presentation-only SVG rendering: each cell's boundary polygon with edge
// labels, one color per gluing pair. Never part of any contract.
std::string surface_to_svg(const FlatSurface& surface, unsigned seed = 0);

}  // namespace quadstrata
