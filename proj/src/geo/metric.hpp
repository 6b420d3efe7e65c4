#pragma once

#include <span>

#include "ad/embedding.hpp"
#include "dsl/chart.hpp"
#include "support/linalg.hpp"

namespace geomom::geo {

struct MetricData {
  int dim = 0;
  MatD g;       // g_ab = d_a x . d_b x
  MatD g_inv;
  double sqrt_g = 0.0;
  bool has_lame = false; // metric diagonal within 1e-10 (relative)
  VecD lame;             // lame[a] = sqrt(g_aa), only when has_lame
};

MetricData metric(const dsl::ChartDef& chart, std::span<const double> point);
MetricData metric_from(const ad::EmbeddingJet& jet);

} // namespace geomom::geo
