#include "ad/embedding.hpp"

#include <cmath>
#include <string>

namespace geomom::ad {

namespace {

std::string point_string(const dsl::ChartDef& chart, std::span<const double> point) {
  std::string s = "(";
  for (int i = 0; i < chart.dim(); ++i) {
    if (i) s += ", ";
    s += chart.coords()[static_cast<std::size_t>(i)].name + "=" +
         std::to_string(point[static_cast<std::size_t>(i)]);
  }
  return s + ")";
}

template <class S, class Seed>
void eval_embeds(const dsl::ChartDef& chart, const Seed& seed, S* out) {
  const int d = chart.dim();
  const int p = static_cast<int>(chart.params().size());
  std::array<S, 2 * kMaxDim> env;
  for (int i = 0; i < d; ++i) env[static_cast<std::size_t>(i)] = seed(i);
  for (int j = 0; j < p; ++j)
    env[static_cast<std::size_t>(d + j)] = S(chart.params()[static_cast<std::size_t>(j)].value);
  auto lookup = [&](const dsl::Expr& n) -> S {
    if (n.slot < 0)
      throw Error(ErrorCode::internal, "unresolved name '" + n.name + "' in chart expression");
    return env[static_cast<std::size_t>(n.slot)];
  };
  for (int i = 0; i < d; ++i)
    out[i] = dsl::eval_expr<S>(*chart.embeds()[static_cast<std::size_t>(i)], lookup);
}

// evaluates with jets whose inline capacity matches the chart dimension, so
// grid sweeps do not copy unused array tail around
template <int M>
EmbeddingJet chart_point_impl(const dsl::ChartDef& chart, std::span<const double> point) {
  const int d = chart.dim();
  std::array<JetBase<M>, kMaxDim> comp;
  eval_embeds<JetBase<M>>(
      chart,
      [&](int i) { return JetBase<M>::variable(point[static_cast<std::size_t>(i)], i, d); },
      comp.data());

  EmbeddingJet out;
  out.dim = d;
  out.x.n = d;
  out.jac = MatD::zero(d, d);
  const int tri = d * (d + 1) / 2;
  for (int i = 0; i < d; ++i) {
    out.x[i] = comp[static_cast<std::size_t>(i)].val;
    for (int a = 0; a < d; ++a) out.jac.at(i, a) = comp[static_cast<std::size_t>(i)].grad[a];
    for (int t = 0; t < tri; ++t)
      out.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] =
          comp[static_cast<std::size_t>(i)].hess[static_cast<std::size_t>(t)];
  }
  return out;
}

} // namespace

EmbeddingJet chart_point(const dsl::ChartDef& chart, std::span<const double> point) {
  EmbeddingJet out;
  switch (chart.dim()) {
    case 2: out = chart_point_impl<2>(chart, point); break;
    case 3: out = chart_point_impl<3>(chart, point); break;
    case 4: out = chart_point_impl<4>(chart, point); break;
    default: out = chart_point_impl<kMaxDim>(chart, point); break;
  }
  double col_scale = 1.0;
  for (int a = 0; a < out.dim; ++a) col_scale *= norm(column(out.jac, a));
  if (std::fabs(det(out.jac)) <= 1e-12 * col_scale)
    throw SingularChartPoint("chart '" + chart.name() + "' is singular at " +
                             point_string(chart, point));
  return out;
}

VecD embed_position(const dsl::ChartDef& chart, std::span<const double> point) {
  std::array<double, kMaxDim> comp;
  eval_embeds<double>(
      chart, [&](int i) { return point[static_cast<std::size_t>(i)]; }, comp.data());
  VecD x;
  x.n = chart.dim();
  for (int i = 0; i < x.n; ++i) x[i] = comp[static_cast<std::size_t>(i)];
  return x;
}

void require_in_domain(const dsl::ChartDef& chart, std::span<const double> point) {
  for (int i = 0; i < chart.dim(); ++i) {
    if (!chart.contains(i, point[static_cast<std::size_t>(i)]))
      throw DomainError("coordinate '" + chart.coords()[static_cast<std::size_t>(i)].name +
                        "' = " + std::to_string(point[static_cast<std::size_t>(i)]) +
                        " is outside its declared domain");
  }
}

} // namespace geomom::ad
