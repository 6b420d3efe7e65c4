#include "geo/slice.hpp"

#include <cmath>

#include "support/prng.hpp"

namespace geomom::geo {

SliceGeometry slice_geometry_from(const ad::EmbeddingJet& jet, const MetricData& m,
                                  int normal_coord) {
  const int d = jet.dim;
  const int c = normal_coord;
  if (d < 2) throw InvalidArgument("slice geometry needs chart dimension >= 2");

  SliceGeometry out;
  out.dim = d;
  out.surface_dim = d - 1;
  out.normal_coord = c;
  int mu = 0;
  for (int a = 0; a < d; ++a)
    if (a != c) out.surface_coords[static_cast<std::size_t>(mu++)] = a;

  for (int k = 0; k < out.surface_dim; ++k) {
    const int a = out.surface_coords[static_cast<std::size_t>(k)];
    const double rel = std::fabs(m.g.at(c, a)) / std::sqrt(m.g.at(c, c) * m.g.at(a, a));
    if (!(rel < kOrthogonalityTol))
      throw NotOrthogonalSlice("coordinate " + std::to_string(c) +
                               " is not metric-orthogonal to the slice (|g_0mu| rel = " +
                               std::to_string(rel) + ")");
  }

  out.g00 = m.g.at(c, c);
  const double sqrt_g00 = std::sqrt(out.g00);
  out.inv_sqrt_g00 = 1.0 / sqrt_g00;
  out.n.n = d;
  for (int i = 0; i < d; ++i) out.n[i] = jet.jac.at(i, c) * out.inv_sqrt_g00;

  const int N = out.surface_dim;
  out.r_mu = MatD::zero(d, N);
  out.h = MatD::zero(N, N);
  out.b = MatD::zero(N, N);
  for (int p = 0; p < N; ++p) {
    const int a = out.surface_coords[static_cast<std::size_t>(p)];
    for (int i = 0; i < d; ++i) out.r_mu.at(i, p) = jet.jac.at(i, a);
    for (int q = 0; q < N; ++q) {
      const int bq = out.surface_coords[static_cast<std::size_t>(q)];
      out.h.at(p, q) = m.g.at(a, bq);
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += out.n[i] * jet.hess_at(i, a, bq);
      out.b.at(p, q) = s;
    }
  }
  out.h_inv = invert(out.h);
  out.sqrt_h = std::sqrt(det(out.h));
  out.shape = matmul(out.h_inv, out.b);
  out.M_sum = 0.0;
  for (int p = 0; p < N; ++p) out.M_sum += out.shape.at(p, p);
  out.M_avg = out.M_sum / N;
  out.M_vec.n = d;
  for (int i = 0; i < d; ++i) out.M_vec[i] = out.M_sum * out.n[i];

  out.r_dual = MatD::zero(N, d);
  for (int p = 0; p < N; ++p)
    for (int i = 0; i < d; ++i) {
      double s = 0.0;
      for (int q = 0; q < N; ++q) s += out.h_inv.at(p, q) * out.r_mu.at(i, q);
      out.r_dual.at(p, i) = s;
    }
  return out;
}

SliceGeometry slice_geometry(const dsl::ChartDef& chart, std::span<const double> point,
                             int normal_coord) {
  auto jet = ad::chart_point(chart, point);
  return slice_geometry_from(jet, metric_from(jet), normal_coord);
}

SliceGeometry slice_geometry(const dsl::ChartDef& chart, std::span<const double> point,
                             const std::string& normal_coord) {
  const int idx = chart.coord_index(normal_coord);
  if (idx < 0)
    throw InvalidArgument("chart '" + chart.name() + "' has no coordinate '" + normal_coord +
                          "'");
  return slice_geometry(chart, point, idx);
}

namespace {

// (d_c g)_{ab} = H[:,c,a] . J_b + J_a . H[:,c,b]
MatD metric_derivative(const ad::EmbeddingJet& jet, int c) {
  const int d = jet.dim;
  MatD dg = MatD::zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      double s = 0.0;
      for (int i = 0; i < d; ++i)
        s += jet.hess_at(i, c, a) * jet.jac.at(i, b) + jet.jac.at(i, a) * jet.hess_at(i, c, b);
      dg.at(a, b) = s;
      dg.at(b, a) = s;
    }
  return dg;
}

} // namespace

double log_sqrt_g_derivative(const ad::EmbeddingJet& jet, const MetricData& m, int coord) {
  const int d = jet.dim;
  const MatD dg = metric_derivative(jet, coord);
  double tr = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) tr += m.g_inv.at(a, b) * dg.at(b, a);
  return 0.5 * tr;
}

double normal_log_derivative_from(const ad::EmbeddingJet& jet, const MetricData& m,
                                  int normal_coord) {
  return log_sqrt_g_derivative(jet, m, normal_coord) /
         std::sqrt(m.g.at(normal_coord, normal_coord));
}

double normal_log_derivative(const dsl::ChartDef& chart, std::span<const double> point,
                             int normal_coord) {
  auto jet = ad::chart_point(chart, point);
  auto m = metric_from(jet);
  // same admissibility screen as slice_geometry
  slice_geometry_from(jet, m, normal_coord);
  return normal_log_derivative_from(jet, m, normal_coord);
}

double weingarten_contraction_from(const ad::EmbeddingJet& jet, const MetricData& m,
                                   int normal_coord) {
  SliceGeometry sg = slice_geometry_from(jet, m, normal_coord);
  const int d = jet.dim;
  const int c = normal_coord;
  const double g00 = m.g.at(c, c);
  const double sqrt_g00 = std::sqrt(g00);
  double total = 0.0;
  for (int p = 0; p < sg.surface_dim; ++p) {
    const int a = sg.surface_coords[static_cast<std::size_t>(p)];
    // d_a g00 = 2 J_c . H[:,c,a]
    double da_g00 = 0.0;
    for (int i = 0; i < d; ++i) da_g00 += 2.0 * jet.jac.at(i, c) * jet.hess_at(i, c, a);
    const double da_sqrt_g00 = 0.5 * da_g00 / sqrt_g00;
    for (int i = 0; i < d; ++i) {
      const double dn_i =
          jet.hess_at(i, a, c) / sqrt_g00 - jet.jac.at(i, c) * da_sqrt_g00 / g00;
      total += sg.r_dual.at(p, i) * dn_i;
    }
  }
  return total;
}

double weingarten_contraction(const dsl::ChartDef& chart, std::span<const double> point,
                              int normal_coord) {
  auto jet = ad::chart_point(chart, point);
  return weingarten_contraction_from(jet, metric_from(jet), normal_coord);
}

const char* slice_class_name(SliceClass c) {
  switch (c) {
    case SliceClass::gaussian_normal: return "gaussian_normal";
    case SliceClass::orthogonal_only: return "orthogonal_only";
    case SliceClass::general: return "general";
  }
  return "?";
}

GaussianNormalReport validate_gaussian_normal(const dsl::ChartDef& chart, int normal_coord,
                                              const std::vector<VecD>& sample_points) {
  GaussianNormalReport rep;
  const int c = normal_coord;
  for (const VecD& pt : sample_points) {
    auto jet = ad::chart_point(chart, std::span<const double>(pt.v.data(), pt.n));
    auto m = metric_from(jet);
    for (int a = 0; a < jet.dim; ++a) {
      if (a == c) continue;
      const double rel = std::fabs(m.g.at(c, a)) / std::sqrt(m.g.at(c, c) * m.g.at(a, a));
      rep.max_offdiag = std::max(rep.max_offdiag, rel);
    }
    const MatD dg = metric_derivative(jet, c);
    rep.max_d0_g00 = std::max(rep.max_d0_g00, std::fabs(dg.at(c, c)) / m.g.at(c, c));
  }
  if (rep.max_offdiag < 1e-10 && rep.max_d0_g00 < 1e-10)
    rep.verdict = SliceClass::gaussian_normal;
  else if (rep.max_offdiag < 1e-10)
    rep.verdict = SliceClass::orthogonal_only;
  else
    rep.verdict = SliceClass::general;
  return rep;
}

std::vector<VecD> sample_regular_points(const dsl::ChartDef& chart, std::uint64_t seed,
                                        int count) {
  Prng rng = Prng(seed).fork("sample_points").fork(chart.name());
  const int d = chart.dim();
  std::vector<VecD> out;
  out.reserve(static_cast<std::size_t>(count));
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 100 * count)
      throw Error(ErrorCode::internal,
                  "could not draw regular sample points on chart '" + chart.name() + "'");
    VecD pt;
    pt.n = d;
    for (int i = 0; i < d; ++i) {
      double lo, hi;
      chart.sampling_window(i, lo, hi);
      pt[i] = rng.next_in(lo, hi);
    }
    try {
      ad::chart_point(chart, std::span<const double>(pt.v.data(), pt.n));
    } catch (const SingularChartPoint&) {
      continue;
    }
    out.push_back(pt);
  }
  return out;
}

} // namespace geomom::geo
