#pragma once

#include <optional>
#include <string>
#include <vector>

#include "support/json_writer.hpp"
#include "verify/convergence.hpp"

namespace geomom::verify {

struct ResidualEntry {
  std::string grid; // ladder grid label, or a symbolic label like "points:100"
  double value = 0.0;
};

// One identity check quantified: residuals over a grid ladder (or point
// sample), the fitted convergence order where discretization is involved, the
// pinned tolerance, and the verdict. pass holds iff the final residual meets
// the tolerance and, when an order requirement applies, the slope sits inside
// the declared band (a ladder at the rounding floor waives the slope).
struct VerificationReport {
  std::string check;
  std::string chart;
  std::vector<std::pair<std::string, Json>> config; // echoed run parameters
  std::vector<ResidualEntry> residuals;
  std::optional<double> convergence_order;
  std::vector<double> segment_slopes; // human/CSV detail; not in the JSON schema
  bool at_floor = false;
  double tolerance = 0.0;
  bool pass = false;

  double final_residual() const { return residuals.empty() ? 0.0 : residuals.back().value; }
  Json to_json() const;
};

// Applies the standard verdict rule.
void settle_verdict(VerificationReport& rep, std::optional<double> required_order,
                    double order_band);

Json reports_to_json(const std::vector<VerificationReport>& reports);

} // namespace geomom::verify
