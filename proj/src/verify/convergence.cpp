#include "verify/convergence.hpp"

#include <cmath>

#include "support/error.hpp"

namespace geomom::verify {

ConvergenceEstimate estimate_convergence_order(
    std::span<const std::pair<double, double>> ladder) {
  if (ladder.size() < 2) throw InvalidArgument("degenerate ladder: need at least 2 points");
  std::vector<double> lh, lr;
  ConvergenceEstimate est;
  est.at_floor = true;
  for (const auto& [h, r] : ladder) {
    if (!(h > 0.0)) throw InvalidArgument("degenerate ladder: non-positive step");
    lh.push_back(std::log(h));
    lr.push_back(std::log(std::max(r, 1e-300)));
    if (r > kResidualFloor) est.at_floor = false;
  }
  for (std::size_t i = 1; i < lh.size(); ++i)
    if (lh[i] == lh[i - 1]) throw InvalidArgument("degenerate ladder: repeated step");

  double mh = 0.0, mr = 0.0;
  for (std::size_t i = 0; i < lh.size(); ++i) {
    mh += lh[i];
    mr += lr[i];
  }
  mh /= static_cast<double>(lh.size());
  mr /= static_cast<double>(lh.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < lh.size(); ++i) {
    num += (lh[i] - mh) * (lr[i] - mr);
    den += (lh[i] - mh) * (lh[i] - mh);
  }
  est.order = num / den;
  for (std::size_t i = 1; i < lh.size(); ++i)
    est.segment_slopes.push_back((lr[i] - lr[i - 1]) / (lh[i] - lh[i - 1]));
  return est;
}

} // namespace geomom::verify
