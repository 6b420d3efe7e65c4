#include "geo/metric.hpp"

#include <cmath>

namespace geomom::geo {

MetricData metric_from(const ad::EmbeddingJet& jet) {
  const int d = jet.dim;
  MetricData out;
  out.dim = d;
  out.g = MatD::zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += jet.jac.at(i, a) * jet.jac.at(i, b);
      out.g.at(a, b) = s;
      out.g.at(b, a) = s;
    }
  out.g_inv = invert(out.g);
  out.sqrt_g = std::fabs(det(jet.jac)); // sqrt(det g) = |det J|

  out.has_lame = true;
  for (int a = 0; a < d && out.has_lame; ++a)
    for (int b = a + 1; b < d; ++b) {
      if (std::fabs(out.g.at(a, b)) >=
          1e-10 * std::sqrt(out.g.at(a, a) * out.g.at(b, b))) {
        out.has_lame = false;
        break;
      }
    }
  if (out.has_lame) {
    out.lame.n = d;
    for (int a = 0; a < d; ++a) out.lame[a] = std::sqrt(out.g.at(a, a));
  }
  return out;
}

MetricData metric(const dsl::ChartDef& chart, std::span<const double> point) {
  return metric_from(ad::chart_point(chart, point));
}

} // namespace geomom::geo
