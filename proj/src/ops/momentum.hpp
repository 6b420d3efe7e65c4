#pragma once

#include <string>

#include "ops/stencil.hpp"
#include "ops/wavefield.hpp"

namespace geomom::ops {

struct HBar {
  double value = 1.0;
  HBar() = default;
  explicit HBar(double v);
};

// Pointwise symbol fields for one grid, computed in a single AD sweep. Check
// rosters use this to build several operators (and quadrature weights) over
// the same grid without re-walking the nodes. slice symbols are filled only
// when a normal coordinate is requested.
struct GridSymbols {
  std::vector<double> sqrt_g;                   // per node
  std::vector<std::vector<double>> canonical;   // [coord][node]: 1/2 d_c ln sqrt(g)
  std::vector<double> jinv;                     // [(a*dim + i)*nodes + node]
  int normal = -1;                              // chart coordinate index, -1 = none
  std::vector<double> n;                        // [i*nodes + node]
  std::vector<double> inv_sqrt_g00;             // [node]
  std::vector<double> msum;                     // [node]
  std::vector<double> rdual;                    // [(p*dim + i)*nodes + node]
  std::vector<double> mvec;                     // [i*nodes + node]
  std::vector<double> sqrt_h;                   // [node], induced measure of the slice
  double max_abs_msum = 0.0;
};

// what compute_grid_symbols fills
enum GridSymbolParts : unsigned {
  kSymbolSqrtG = 1u << 0,
  kSymbolCanonical = 1u << 1,
  kSymbolJinv = 1u << 2,
  kSymbolSlice = 1u << 3,
};

GridSymbols compute_grid_symbols(const dsl::ChartDef& chart, const GridSpec& grid,
                                 unsigned parts, int normal_coord = -1);

// The momentum operators are grid-bound objects: construction runs one AD
// sweep over the nodes and freezes the multiplicative symbol fields (exact to
// rounding); apply() only discretizes the derivative terms. Refining the grid
// therefore changes derivative-term error and nothing else.

// P_xi = -i hbar (d_xi + 1/2 d_xi ln sqrt(g)). With drop_hermitizing_term the
// operator degrades to -i hbar d_xi (the negative control: not hermitian
// under the sqrt(g) measure).
class CanonicalMomentumOp {
public:
  CanonicalMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid, const std::string& coord,
                      HBar hbar, bool drop_hermitizing_term = false);
  CanonicalMomentumOp(const GridSpec& grid, int axis, HBar hbar, std::vector<double> coef,
                      bool drop_hermitizing_term = false);
  WaveField apply(const WaveField& psi) const;
  const std::vector<double>& coefficient() const { return coef_; } // 1/2 d_xi ln sqrt(g)

private:
  GridSpec grid_;
  int axis_;
  double hbar_;
  bool naive_;
  std::vector<double> coef_;
};

// (P psi)_i = -i hbar sum_alpha (J^{-1})[alpha][i] d_alpha psi: the flat
// Cartesian momentum expressed through the chart. Needs every chart
// coordinate active.
class FullMomentumOp {
public:
  FullMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid, HBar hbar);
  FullMomentumOp(const GridSpec& grid, int dim, HBar hbar, std::vector<double> jinv);
  CartesianVectorField apply(const WaveField& psi) const;

private:
  GridSpec grid_;
  int dim_;
  double hbar_;
  std::vector<double> jinv_; // [(alpha*dim + i) * nodes + node]
};

// Geometric momentum Pi = -i hbar (r^mu d_mu + M_vec/2). The natural habitat
// is the surface grid (normal pinned); it also applies on a full grid, where
// only the surface coordinates are differentiated (the decomposition checks
// use that extension). drop_curvature_term is the negative control.
class GeometricMomentumOp {
public:
  GeometricMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid,
                      const std::string& normal_coord, HBar hbar,
                      bool drop_curvature_term = false);
  GeometricMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid, int normal_coord,
                      HBar hbar, const GridSymbols& symbols, bool drop_curvature_term = false);
  CartesianVectorField apply(const WaveField& psi) const;
  double max_abs_mean_curvature() const { return max_abs_msum_; }

private:
  GridSpec grid_;
  int dim_;
  int surface_dim_;
  double hbar_;
  bool naive_;
  std::vector<int> surface_axes_;   // grid axis per surface coordinate
  std::vector<double> rdual_;       // [(p*dim + i) * nodes + node]
  std::vector<double> mvec_;        // [i * nodes + node]
  double max_abs_msum_ = 0.0;
};

// Normal part of the decomposition: psi -> n (-i hbar)((1/sqrt(g00)) d_0 psi
// - (M_sum/2) psi), on a full grid with the normal coordinate active.
class NormalMomentumOp {
public:
  NormalMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid,
                   const std::string& normal_coord, HBar hbar);
  NormalMomentumOp(const dsl::ChartDef& chart, const GridSpec& grid, int normal_coord,
                   HBar hbar, const GridSymbols& symbols);
  CartesianVectorField apply(const WaveField& psi) const;

private:
  GridSpec grid_;
  int dim_;
  int normal_axis_;
  double hbar_;
  std::vector<double> normal_;       // [i * nodes + node]
  std::vector<double> inv_sqrt_g00_; // [node]
  std::vector<double> msum_;         // [node]
};

} // namespace geomom::ops
