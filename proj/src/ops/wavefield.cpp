#include "ops/wavefield.hpp"

#include <cmath>

#include "ad/embedding.hpp"
#include "geo/metric.hpp"
#include "support/error.hpp"

namespace geomom::ops {

WaveField::WaveField(GridSpec grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.node_count())
    throw GridError("field has " + std::to_string(values_.size()) + " values for " +
                    std::to_string(grid_.node_count()) + " nodes");
  for (const cplx& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("wavefield contains a non-finite value");
}

WaveField WaveField::zeros(const GridSpec& grid) {
  return WaveField(grid, std::vector<cplx>(grid.node_count(), cplx{0.0, 0.0}));
}

QuadratureWeights::QuadratureWeights(const dsl::ChartDef& chart, const GridSpec& grid,
                                     Measure measure)
    : grid_(grid), w_(grid.node_count(), 0.0) {
  if (measure == Measure::full_sqrt_g && grid.axis_count() != chart.dim())
    throw GridError("full-measure quadrature needs all chart coordinates active");
  if (measure == Measure::surface_sqrt_h && grid.axis_count() != chart.dim() - 1)
    throw GridError("surface-measure quadrature needs exactly one pinned coordinate");

  double pt[kMaxDim];
  for (std::size_t flat = 0; flat < grid.node_count(); ++flat) {
    grid_.point_at(flat, pt);
    auto jet = ad::chart_point(chart, std::span<const double>(pt, static_cast<std::size_t>(
                                                                      chart.dim())));
    double m;
    if (measure == Measure::full_sqrt_g) {
      m = std::fabs(det(jet.jac));
    } else {
      auto md = geo::metric_from(jet);
      const int N = grid_.axis_count();
      MatD h = MatD::zero(N, N);
      for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q)
          h.at(p, q) = md.g.at(grid_.axis(p).coord_index, grid_.axis(q).coord_index);
      m = std::sqrt(det(h));
    }
    double cell = 1.0;
    for (int k = 0; k < grid_.axis_count(); ++k) {
      const GridAxis& ax = grid_.axis(k);
      double wk = ax.step();
      if (!ax.periodic) {
        const int j = grid_.axis_position(flat, k);
        if (j == 0 || j == ax.count - 1) wk *= 0.5;
      }
      cell *= wk;
    }
    w_[flat] = m * cell;
  }
}

QuadratureWeights::QuadratureWeights(const GridSpec& grid,
                                     const std::vector<double>& measure_at_nodes)
    : grid_(grid), w_(grid.node_count(), 0.0) {
  if (measure_at_nodes.size() != grid.node_count())
    throw GridError("measure array does not match the grid");
  for (std::size_t flat = 0; flat < w_.size(); ++flat) {
    double cell = 1.0;
    for (int k = 0; k < grid_.axis_count(); ++k) {
      const GridAxis& ax = grid_.axis(k);
      double wk = ax.step();
      if (!ax.periodic) {
        const int j = grid_.axis_position(flat, k);
        if (j == 0 || j == ax.count - 1) wk *= 0.5;
      }
      cell *= wk;
    }
    w_[flat] = measure_at_nodes[flat] * cell;
  }
}

cplx inner_product(const WaveField& a, const WaveField& b, const QuadratureWeights& q) {
  if (!a.grid().conforms(b.grid()) || !a.grid().conforms(q.grid()))
    throw GridError("inner product over mismatched grids");
  cplx s{0.0, 0.0};
  const auto& av = a.values();
  const auto& bv = b.values();
  const auto& w = q.weights();
  for (std::size_t i = 0; i < av.size(); ++i) s += std::conj(av[i]) * bv[i] * w[i];
  return s;
}

cplx inner_product(const WaveField& a, const WaveField& b, const dsl::ChartDef& chart,
                   Measure measure) {
  return inner_product(a, b, QuadratureWeights(chart, a.grid(), measure));
}

double field_norm(const WaveField& a, const QuadratureWeights& q) {
  return std::sqrt(std::max(0.0, inner_product(a, a, q).real()));
}

} // namespace geomom::ops
