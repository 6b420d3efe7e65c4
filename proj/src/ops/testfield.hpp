#pragma once

#include <cstdint>

#include "ops/wavefield.hpp"

namespace geomom::ops {

// Deterministic smooth complex fields for operator checks, built as a tensor
// product of per-axis factors: a truncated Fourier series (modes <= 5, seeded
// coefficients) on periodic axes, and a C-infinity compact bump times a seeded
// low-order polynomial on bounded axes. Bounded-axis factors vanish with all
// derivatives at the edges, so hermiticity defects carry no boundary term.
enum class TestFieldKind {
  periodic_fourier, // requires all axes periodic
  bump,             // requires all axes bounded
  product,          // axis-driven mix (the general case)
};

WaveField make_test_field(const GridSpec& grid, std::uint64_t seed, TestFieldKind kind);

} // namespace geomom::ops
