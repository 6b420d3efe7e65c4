#pragma once

#include <complex>
#include <vector>

#include "ops/grid.hpp"

namespace geomom::ops {

using cplx = std::complex<double>;

// Complex samples over a grid's tensor-product nodes. Immutable by
// convention: operators return new fields.
class WaveField {
public:
  WaveField(GridSpec grid, std::vector<cplx> values);
  static WaveField zeros(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

private:
  GridSpec grid_;
  std::vector<cplx> values_;
};

// One complex array per Cartesian axis of the embedding space.
struct CartesianVectorField {
  GridSpec grid;
  std::vector<std::vector<cplx>> components; // size = chart dim

  explicit CartesianVectorField(const GridSpec& g)
      : grid(g),
        components(static_cast<std::size_t>(g.chart_dim()),
                   std::vector<cplx>(g.node_count(), cplx{0.0, 0.0})) {}
};

enum class Measure { full_sqrt_g, surface_sqrt_h };

// Quadrature weights w_j = measure(x_j) * prod(axis weight): trapezoidal on
// non-periodic axes, uniform on periodic ones. full_sqrt_g requires all chart
// coordinates active; surface_sqrt_h takes sqrt(det) of the metric block over
// the active coordinates.
class QuadratureWeights {
public:
  QuadratureWeights(const dsl::ChartDef& chart, const GridSpec& grid, Measure measure);
  // from a precomputed pointwise measure (one symbol sweep shared by a roster)
  QuadratureWeights(const GridSpec& grid, const std::vector<double>& measure_at_nodes);
  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& weights() const { return w_; }

private:
  GridSpec grid_;
  std::vector<double> w_;
};

cplx inner_product(const WaveField& a, const WaveField& b, const QuadratureWeights& q);
cplx inner_product(const WaveField& a, const WaveField& b, const dsl::ChartDef& chart,
                   Measure measure);
double field_norm(const WaveField& a, const QuadratureWeights& q);

} // namespace geomom::ops
