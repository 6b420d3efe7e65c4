#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsl/chart.hpp"
#include "verify/report.hpp"

namespace geomom::verify {

// Pinned tolerances. Symbol-level checks ride on AD-exact quantities and get
// 1e-10; field-level checks are finite-difference limited and carry an order
// requirement alongside the residual bound.
inline constexpr double kSymbolTol = 1e-10;
inline constexpr double kHermiticityTol = 1e-6;
inline constexpr double kDecompFieldTol = 1e-6;
inline constexpr double kOrthFieldTol = 1e-5;
inline constexpr double kOrderBand = 0.75;

struct CheckConfig {
  std::uint64_t seed = 42;
  int fd_order = 4;
  double hbar = 1.0;
  std::vector<int> ladder = {32, 64, 128};          // full-dimensional grids
  std::vector<int> surface_ladder = {64, 128, 256}; // surface grids (one dim lower)
  // per-axis node counts (chart declaration order) for the finest level; when
  // set, ladders are built by halving these twice (never below 8 nodes)
  std::vector<int> grid;
  std::map<std::string, double> pins;              // pinned-coordinate overrides
  std::optional<std::string> normal;               // slicing override
  std::optional<std::string> coord;                // canonical-momentum coordinate
  bool negative_control = false;
  // echoed verbatim into report configs when set (off by default so identical
  // runs yield identical bytes)
  std::optional<std::string> timestamp;
};

enum class HermOp { canonical, canonical_naive, full, geometric };

// Inner-product defect |<psi|Op phi> - <Op psi|phi>| normalized by
// ||psi|| ||phi|| ||Op||_est, worst over three seeded field pairs (and over
// Cartesian components for vector operators), on the configured grid ladder.
// `arg` names the coordinate (canonical) or the slicing normal (geometric).
VerificationReport check_hermiticity(const dsl::ChartDef& chart, HermOp op,
                                     const std::string& arg, const CheckConfig& cfg);

// (a) symbol level: rows {n/sqrt(g00); r^mu} against J^{-1} on seeded points;
// (b) field level: ||P psi - (n P_0 psi + Pi psi)|| / ||P psi|| on the ladder.
VerificationReport check_decomposition_symbol(const dsl::ChartDef& chart,
                                              const std::string& normal,
                                              const CheckConfig& cfg);
VerificationReport check_decomposition_field(const dsl::ChartDef& chart,
                                             const std::string& normal, const CheckConfig& cfg);

// n.r^mu = 0 and r^mu.d_mu n + M_sum = 0 at seeded points; anticommutator
// field check ||(n.Pi + Pi.n) psi|| on the surface ladder.
VerificationReport check_orthogonality_symbol(const dsl::ChartDef& chart,
                                              const std::string& normal,
                                              const CheckConfig& cfg);
VerificationReport check_orthogonality_field(const dsl::ChartDef& chart,
                                             const std::string& normal, const CheckConfig& cfg);

// Catalog slices against stored closed forms (M_avg n), 50 seeded points.
VerificationReport check_curvature_closed_form(const dsl::ChartDef& chart, int normal_coord,
                                               const CheckConfig& cfg);
bool has_closed_form(const dsl::ChartDef& chart, int normal_coord);

// d0 ln sqrt(g) + M_sum = 0 (on slices whose g00 is xi^0-independent) and the
// Weingarten identity, 100 seeded points.
VerificationReport check_curvature_identities(const dsl::ChartDef& chart, int normal_coord,
                                              const CheckConfig& cfg);

// Gaussian-normal metric validation residuals for one slicing.
VerificationReport check_gn_metric(const dsl::ChartDef& chart, const std::string& normal,
                                   const CheckConfig& cfg);

// Dispatch by selector: hermiticity | decomposition | orthogonality |
// curvature | gn-metric | all.
std::vector<VerificationReport> run_checks(const dsl::ChartDef& chart,
                                           const std::string& selector,
                                           const CheckConfig& cfg);

} // namespace geomom::verify
