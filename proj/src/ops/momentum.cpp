#include "ops/momentum.hpp"

#include <cmath>

#include "ad/embedding.hpp"
#include "geo/slice.hpp"
#include "support/error.hpp"

namespace geomom::ops {

namespace {

constexpr cplx kMinusI{0.0, -1.0};

template <class Fn>
void sweep_nodes(const dsl::ChartDef& chart, const GridSpec& grid, Fn&& fn) {
  double pt[kMaxDim];
  const std::size_t dim = static_cast<std::size_t>(chart.dim());
  for (std::size_t flat = 0; flat < grid.node_count(); ++flat) {
    grid.point_at(flat, pt);
    fn(flat, ad::chart_point(chart, std::span<const double>(pt, dim)));
  }
}

} // namespace

HBar::HBar(double v) : value(v) {
  if (!(v > 0.0)) throw InvalidArgument("hbar must be strictly positive");
}

GridSymbols compute_grid_symbols(const dsl::ChartDef& chart, const GridSpec& grid,
                                 unsigned parts, int normal_coord) {
  const int d = chart.dim();
  const std::size_t nodes = grid.node_count();
  GridSymbols sym;
  if (parts & kSymbolSqrtG) sym.sqrt_g.assign(nodes, 0.0);
  if (parts & kSymbolCanonical)
    sym.canonical.assign(static_cast<std::size_t>(d), std::vector<double>(nodes, 0.0));
  if (parts & kSymbolJinv) sym.jinv.assign(static_cast<std::size_t>(d * d) * nodes, 0.0);
  if (parts & kSymbolSlice) {
    if (normal_coord < 0 || normal_coord >= d)
      throw InvalidArgument("slice symbols need a valid normal coordinate");
    sym.normal = normal_coord;
    sym.n.assign(static_cast<std::size_t>(d) * nodes, 0.0);
    sym.inv_sqrt_g00.assign(nodes, 0.0);
    sym.msum.assign(nodes, 0.0);
    sym.rdual.assign(static_cast<std::size_t>((d - 1) * d) * nodes, 0.0);
    sym.mvec.assign(static_cast<std::size_t>(d) * nodes, 0.0);
    sym.sqrt_h.assign(nodes, 0.0);
  }
  sweep_nodes(chart, grid, [&](std::size_t flat, const ad::EmbeddingJet& jet) {
    if (parts & (kSymbolSqrtG | kSymbolCanonical | kSymbolSlice)) {
      auto m = geo::metric_from(jet);
      if (parts & kSymbolSqrtG) sym.sqrt_g[flat] = m.sqrt_g;
      if (parts & kSymbolCanonical)
        for (int c = 0; c < d; ++c)
          sym.canonical[static_cast<std::size_t>(c)][flat] =
              0.5 * geo::log_sqrt_g_derivative(jet, m, c);
      if (parts & kSymbolSlice) {
        geo::SliceGeometry sg = geo::slice_geometry_from(jet, m, normal_coord);
        for (int i = 0; i < d; ++i) {
          sym.n[static_cast<std::size_t>(i) * nodes + flat] = sg.n[i];
          sym.mvec[static_cast<std::size_t>(i) * nodes + flat] = sg.M_vec[i];
        }
        sym.inv_sqrt_g00[flat] = sg.inv_sqrt_g00;
        sym.msum[flat] = sg.M_sum;
        sym.sqrt_h[flat] = sg.sqrt_h;
        for (int p = 0; p < sg.surface_dim; ++p)
          for (int i = 0; i < d; ++i)
            sym.rdual[static_cast<std::size_t>(p * d + i) * nodes + flat] = sg.r_dual.at(p, i);
        sym.max_abs_msum = std::max(sym.max_abs_msum, std::fabs(sg.M_sum));
      }
    }
    if (parts & kSymbolJinv) {
      MatD jinv = invert(jet.jac);
      for (int a = 0; a < d; ++a)
        for (int i = 0; i < d; ++i)
          sym.jinv[static_cast<std::size_t>(a * d + i) * nodes + flat] = jinv.at(a, i);
    }
  });
  return sym;
}

CanonicalMomentumOp::CanonicalMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid,
                                         const std::string& coord, HBar hbar,
                                         bool drop_hermitizing_term)
    : grid_(grid), hbar_(hbar.value), naive_(drop_hermitizing_term),
      coef_(grid.node_count(), 0.0) {
  axis_ = grid.axis_of(coord);
  if (axis_ < 0)
    throw InvalidArgument("canonical momentum needs coordinate '" + coord +
                          "' active on the grid");
  const int c = chart.coord_index(coord);
  sweep_nodes(chart, grid_, [&](std::size_t flat, const ad::EmbeddingJet& jet) {
    auto m = geo::metric_from(jet);
    coef_[flat] = 0.5 * geo::log_sqrt_g_derivative(jet, m, c);
  });
}

CanonicalMomentumOp::CanonicalMomentumOp(const GridSpec& grid, int axis, HBar hbar,
                                         std::vector<double> coef, bool drop_hermitizing_term)
    : grid_(grid), axis_(axis), hbar_(hbar.value), naive_(drop_hermitizing_term),
      coef_(std::move(coef)) {
  if (axis_ < 0 || axis_ >= grid_.axis_count() || coef_.size() != grid_.node_count())
    throw InvalidArgument("mismatched canonical momentum symbols");
}

WaveField CanonicalMomentumOp::apply(const WaveField& psi) const {
  if (!psi.grid().conforms(grid_)) throw GridError("field grid does not match the operator");
  WaveField dpsi = partial_derivative(psi, axis_);
  std::vector<cplx> out(std::move(dpsi.values()));
  const auto& in = psi.values();
  const cplx scale = kMinusI * hbar_;
  if (naive_) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= scale;
  } else {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = scale * (out[j] + coef_[j] * in[j]);
  }
  return WaveField(grid_, std::move(out));
}

FullMomentumOp::FullMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid, HBar hbar)
    : grid_(grid), dim_(chart.dim()), hbar_(hbar.value) {
  if (grid.axis_count() != dim_)
    throw GridError("full momentum needs all chart coordinates active");
  const std::size_t nodes = grid.node_count();
  jinv_.assign(static_cast<std::size_t>(dim_ * dim_) * nodes, 0.0);
  sweep_nodes(chart, grid_, [&](std::size_t flat, const ad::EmbeddingJet& jet) {
    MatD jinv = invert(jet.jac);
    for (int a = 0; a < dim_; ++a)
      for (int i = 0; i < dim_; ++i)
        jinv_[static_cast<std::size_t>(a * dim_ + i) * nodes + flat] = jinv.at(a, i);
  });
}

FullMomentumOp::FullMomentumOp(const GridSpec& grid, int dim, HBar hbar,
                               std::vector<double> jinv)
    : grid_(grid), dim_(dim), hbar_(hbar.value), jinv_(std::move(jinv)) {
  if (grid.axis_count() != dim_ ||
      jinv_.size() != static_cast<std::size_t>(dim_ * dim_) * grid.node_count())
    throw InvalidArgument("mismatched full momentum symbols");
}

CartesianVectorField FullMomentumOp::apply(const WaveField& psi) const {
  if (!psi.grid().conforms(grid_)) throw GridError("field grid does not match the operator");
  CartesianVectorField out(grid_);
  const std::size_t nodes = grid_.node_count();
  for (int a = 0; a < dim_; ++a) {
    WaveField dpsi = partial_derivative(psi, a); // axis order == coordinate order (all active)
    const auto& dv = dpsi.values();
    for (int i = 0; i < dim_; ++i) {
      const double* coef = &jinv_[static_cast<std::size_t>(a * dim_ + i) * nodes];
      auto& comp = out.components[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < nodes; ++j) comp[j] += coef[j] * dv[j];
    }
  }
  const cplx scale = kMinusI * hbar_;
  for (auto& comp : out.components)
    for (auto& v : comp) v *= scale;
  return out;
}

GeometricMomentumOp::GeometricMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid,
                                         const std::string& normal_coord, HBar hbar,
                                         bool drop_curvature_term)
    : grid_(grid), dim_(chart.dim()), surface_dim_(chart.dim() - 1), hbar_(hbar.value),
      naive_(drop_curvature_term) {
  const int c = chart.coord_index(normal_coord);
  if (c < 0)
    throw InvalidArgument("chart '" + chart.name() + "' has no coordinate '" + normal_coord +
                          "'");
  for (const auto& coord : chart.coords()) {
    if (chart.coord_index(coord.name) == c) continue;
    const int axis = grid.axis_of(coord.name);
    if (axis < 0)
      throw GridError("geometric momentum needs surface coordinate '" + coord.name +
                      "' active on the grid");
    surface_axes_.push_back(axis);
  }
  const std::size_t nodes = grid.node_count();
  rdual_.assign(static_cast<std::size_t>(surface_dim_ * dim_) * nodes, 0.0);
  mvec_.assign(static_cast<std::size_t>(dim_) * nodes, 0.0);
  sweep_nodes(chart, grid_, [&](std::size_t flat, const ad::EmbeddingJet& jet) {
    geo::SliceGeometry sg = geo::slice_geometry_from(jet, geo::metric_from(jet), c);
    for (int p = 0; p < surface_dim_; ++p)
      for (int i = 0; i < dim_; ++i)
        rdual_[static_cast<std::size_t>(p * dim_ + i) * nodes + flat] = sg.r_dual.at(p, i);
    for (int i = 0; i < dim_; ++i)
      mvec_[static_cast<std::size_t>(i) * nodes + flat] = sg.M_vec[i];
    max_abs_msum_ = std::max(max_abs_msum_, std::fabs(sg.M_sum));
  });
}

GeometricMomentumOp::GeometricMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid,
                                         int normal_coord, HBar hbar, const GridSymbols& symbols,
                                         bool drop_curvature_term)
    : grid_(grid), dim_(chart.dim()), surface_dim_(chart.dim() - 1), hbar_(hbar.value),
      naive_(drop_curvature_term), rdual_(symbols.rdual), mvec_(symbols.mvec),
      max_abs_msum_(symbols.max_abs_msum) {
  if (symbols.normal != normal_coord || rdual_.empty())
    throw InvalidArgument("mismatched geometric momentum symbols");
  for (int c = 0; c < dim_; ++c) {
    if (c == normal_coord) continue;
    const int axis = grid.axis_of(chart.coords()[static_cast<std::size_t>(c)].name);
    if (axis < 0)
      throw GridError("geometric momentum needs surface coordinate '" +
                      chart.coords()[static_cast<std::size_t>(c)].name + "' active on the grid");
    surface_axes_.push_back(axis);
  }
}

CartesianVectorField GeometricMomentumOp::apply(const WaveField& psi) const {
  if (!psi.grid().conforms(grid_)) throw GridError("field grid does not match the operator");
  CartesianVectorField out(grid_);
  const std::size_t nodes = grid_.node_count();
  for (int p = 0; p < surface_dim_; ++p) {
    WaveField dpsi = partial_derivative(psi, surface_axes_[static_cast<std::size_t>(p)]);
    const auto& dv = dpsi.values();
    for (int i = 0; i < dim_; ++i) {
      const double* coef = &rdual_[static_cast<std::size_t>(p * dim_ + i) * nodes];
      auto& comp = out.components[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < nodes; ++j) comp[j] += coef[j] * dv[j];
    }
  }
  const auto& in = psi.values();
  const cplx scale = kMinusI * hbar_;
  for (int i = 0; i < dim_; ++i) {
    auto& comp = out.components[static_cast<std::size_t>(i)];
    const double* mv = &mvec_[static_cast<std::size_t>(i) * nodes];
    if (naive_) {
      for (std::size_t j = 0; j < nodes; ++j) comp[j] *= scale;
    } else {
      for (std::size_t j = 0; j < nodes; ++j) comp[j] = scale * (comp[j] + 0.5 * mv[j] * in[j]);
    }
  }
  return out;
}

NormalMomentumOp::NormalMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid,
                                   const std::string& normal_coord, HBar hbar)
    : grid_(grid), dim_(chart.dim()), hbar_(hbar.value) {
  const int c = chart.coord_index(normal_coord);
  if (c < 0)
    throw InvalidArgument("chart '" + chart.name() + "' has no coordinate '" + normal_coord +
                          "'");
  normal_axis_ = grid.axis_of(normal_coord);
  if (normal_axis_ < 0)
    throw GridError("normal momentum needs coordinate '" + normal_coord +
                    "' active on the grid");
  const std::size_t nodes = grid.node_count();
  normal_.assign(static_cast<std::size_t>(dim_) * nodes, 0.0);
  inv_sqrt_g00_.assign(nodes, 0.0);
  msum_.assign(nodes, 0.0);
  sweep_nodes(chart, grid_, [&](std::size_t flat, const ad::EmbeddingJet& jet) {
    geo::SliceGeometry sg = geo::slice_geometry_from(jet, geo::metric_from(jet), c);
    for (int i = 0; i < dim_; ++i)
      normal_[static_cast<std::size_t>(i) * nodes + flat] = sg.n[i];
    inv_sqrt_g00_[flat] = sg.inv_sqrt_g00;
    msum_[flat] = sg.M_sum;
  });
}

NormalMomentumOp::NormalMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid,
                                   int normal_coord, HBar hbar, const GridSymbols& symbols)
    : grid_(grid), dim_(chart.dim()), hbar_(hbar.value), normal_(symbols.n),
      inv_sqrt_g00_(symbols.inv_sqrt_g00), msum_(symbols.msum) {
  if (symbols.normal != normal_coord || normal_.empty())
    throw InvalidArgument("mismatched normal momentum symbols");
  normal_axis_ = grid.axis_of(chart.coords()[static_cast<std::size_t>(normal_coord)].name);
  if (normal_axis_ < 0)
    throw GridError("normal momentum needs the normal coordinate active on the grid");
}

CartesianVectorField NormalMomentumOp::apply(const WaveField& psi) const {
  if (!psi.grid().conforms(grid_)) throw GridError("field grid does not match the operator");
  WaveField dpsi = partial_derivative(psi, normal_axis_);
  const auto& dv = dpsi.values();
  const auto& in = psi.values();
  CartesianVectorField out(grid_);
  const std::size_t nodes = grid_.node_count();
  const cplx scale = kMinusI * hbar_;
  for (std::size_t j = 0; j < nodes; ++j) {
    const cplx scalar = scale * (inv_sqrt_g00_[j] * dv[j] - 0.5 * msum_[j] * in[j]);
    for (int i = 0; i < dim_; ++i)
      out.components[static_cast<std::size_t>(i)][j] =
          normal_[static_cast<std::size_t>(i) * nodes + j] * scalar;
  }
  return out;
}

} // namespace geomom::ops
