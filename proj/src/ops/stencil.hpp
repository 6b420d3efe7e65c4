#pragma once

#include <string>

#include "ops/wavefield.hpp"

namespace geomom::ops {

// Central finite differences of the grid's order along one active coordinate;
// periodic axes wrap, bounded axes switch to one-sided stencils of the same
// order at the edges.
WaveField partial_derivative(const WaveField& field, const std::string& coord);
WaveField partial_derivative(const WaveField& field, int axis);

} // namespace geomom::ops
