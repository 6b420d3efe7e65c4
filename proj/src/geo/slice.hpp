#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geo/metric.hpp"

namespace geomom::geo {

// Pointwise geometry of the level surface xi^0 = const through one point.
// Sign conventions, anchored on the sphere slice of the spherical chart with
// outward normal (n along +d_0 x): b_mn = n . d_m d_n x, so the unit sphere
// has M_sum = -2 and M_vec = -2 e_r.
struct SliceGeometry {
  int dim = 0;          // D
  int surface_dim = 0;  // N = D - 1
  int normal_coord = 0; // chart index of xi^0
  std::array<int, kMaxDim> surface_coords{}; // chart indices of xi^mu, declaration order

  VecD n;                // unit normal
  double g00 = 0.0;      // g along the normal coordinate
  double inv_sqrt_g00 = 0.0;
  MatD r_mu;             // D x N, column mu = d_mu x
  MatD r_dual;           // N x D, row mu = r^mu (h^{mu nu} r_nu)
  MatD h;                // induced metric
  MatD h_inv;
  double sqrt_h = 0.0;
  MatD b;                // second fundamental form
  MatD shape;            // h^{-1} b; eigenvalues are principal curvatures
  double M_sum = 0.0;    // trace of shape (sum-of-principal-curvatures convention)
  double M_avg = 0.0;    // M_sum / N
  VecD M_vec;            // M_sum * n
};

// Relative tolerance under which g_{0 mu} must vanish for the slice to be
// admissible (AD symbols are exact to rounding, so only rounding noise passes).
inline constexpr double kOrthogonalityTol = 1e-10;

SliceGeometry slice_geometry(const dsl::ChartDef& chart, std::span<const double> point,
                             int normal_coord);
SliceGeometry slice_geometry(const dsl::ChartDef& chart, std::span<const double> point,
                             const std::string& normal_coord);
SliceGeometry slice_geometry_from(const ad::EmbeddingJet& jet, const MetricData& m,
                                  int normal_coord);

// d_c ln sqrt(g) = 1/2 tr(g^{-1} d_c g), assembled from the embedding jet
// (Jacobi's formula; second derivatives from AD, nothing discretized). This is
// the hermitizing coefficient of the canonical momentum conjugate to xi^c.
double log_sqrt_g_derivative(const ad::EmbeddingJet& jet, const MetricData& m, int coord);

// (1/sqrt(g00)) d_0 ln sqrt(g). Equals -M_sum at every regular point of an
// admissible slice whose g00 does not vary along xi^0.
double normal_log_derivative(const dsl::ChartDef& chart, std::span<const double> point,
                             int normal_coord);
double normal_log_derivative_from(const ad::EmbeddingJet& jet, const MetricData& m,
                                  int normal_coord);

// sum_mu r^mu . d_mu n, differentiating through the normalized normal.
// Independent route to -M_sum (does not touch the surface block of the
// second fundamental form).
double weingarten_contraction(const dsl::ChartDef& chart, std::span<const double> point,
                              int normal_coord);
double weingarten_contraction_from(const ad::EmbeddingJet& jet, const MetricData& m,
                                   int normal_coord);

enum class SliceClass { gaussian_normal, orthogonal_only, general };
const char* slice_class_name(SliceClass c);

struct GaussianNormalReport {
  double max_offdiag = 0.0;  // max_mu |g_{0 mu}| / sqrt(g_00 g_mumu)
  double max_d0_g00 = 0.0;   // max |d_0 g_00| / g_00
  SliceClass verdict = SliceClass::general;
};

GaussianNormalReport validate_gaussian_normal(const dsl::ChartDef& chart, int normal_coord,
                                              const std::vector<VecD>& sample_points);

// Deterministic sample points drawn from the chart's per-coordinate sampling
// windows; draws that land on singular points are skipped and redrawn.
std::vector<VecD> sample_regular_points(const dsl::ChartDef& chart, std::uint64_t seed,
                                        int count);

} // namespace geomom::geo
