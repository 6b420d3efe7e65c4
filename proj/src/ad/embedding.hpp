#pragma once

#include <span>

#include "ad/jet2.hpp"
#include "dsl/chart.hpp"
#include "support/linalg.hpp"

namespace geomom::ad {

// Position, Jacobian and second derivatives of the embedding map at one
// chart point. hess(i, a, b) = d^2 x_i / dxi^a dxi^b, symmetric in (a, b)
// as stored (packed upper triangle).
struct EmbeddingJet {
  int dim = 0;
  VecD x;
  MatD jac; // jac.at(i, a) = d x_i / d xi^a
  std::array<std::array<double, kMaxDim*(kMaxDim + 1) / 2>, kMaxDim> hess{};

  double hess_at(int i, int a, int b) const {
    if (a > b) std::swap(a, b);
    return hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(Jet2::tri(a, b, dim))];
  }
};

// Evaluates every embed expression over Jet2 with unit seeds on the chart
// coordinates (parameters enter as constants). Throws SingularChartPoint when
// |det J| <= 1e-12 * prod(column norms), the scale-invariant rank test; that
// catches coordinate degeneracies such as r = 0 or sin(theta) = 0.
EmbeddingJet chart_point(const dsl::ChartDef& chart, std::span<const double> point);

// Plain-double evaluation of the embedding (used by finite-difference
// oracles and grid plumbing; no derivative data, no singularity screen).
VecD embed_position(const dsl::ChartDef& chart, std::span<const double> point);

// DomainError if any component falls outside its declared coordinate domain.
void require_in_domain(const dsl::ChartDef& chart, std::span<const double> point);

} // namespace geomom::ad
