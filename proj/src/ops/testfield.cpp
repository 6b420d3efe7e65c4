#include "ops/testfield.hpp"

#include <cmath>

#include "support/error.hpp"
#include "support/prng.hpp"

namespace geomom::ops {

namespace {

constexpr int kMaxMode = 5;
constexpr int kPolyDegree = 3;

struct AxisFactor {
  bool periodic;
  double lo, hi;
  cplx fourier[2 * kMaxMode + 1]; // coefficient of e^{i m u}, m = -5..5
  cplx poly[kPolyDegree + 1];

  cplx eval(double x) const {
    if (periodic) {
      const double u = 2.0 * M_PI * (x - lo) / (hi - lo);
      cplx s{0.0, 0.0};
      for (int m = -kMaxMode; m <= kMaxMode; ++m)
        s += fourier[m + kMaxMode] * std::polar(1.0, m * u);
      return s;
    }
    const double t = (x - lo) / (hi - lo);
    if (t <= 0.0 || t >= 1.0) return {0.0, 0.0};
    const double bump = std::exp(4.0 - 1.0 / (t * (1.0 - t))); // peak 1 at t = 1/2
    cplx p{0.0, 0.0};
    double tk = 1.0;
    for (int k = 0; k <= kPolyDegree; ++k, tk *= t) p += poly[k] * tk;
    return bump * p;
  }
};

AxisFactor make_factor(const GridAxis& ax, Prng rng) {
  AxisFactor f;
  f.periodic = ax.periodic;
  f.lo = ax.lo;
  f.hi = ax.hi;
  if (ax.periodic) {
    for (int m = -kMaxMode; m <= kMaxMode; ++m) {
      const double re = rng.next_in(-1.0, 1.0);
      const double im = rng.next_in(-1.0, 1.0);
      f.fourier[m + kMaxMode] = cplx{re, im} / (1.0 + double(m) * double(m));
    }
  } else {
    for (int k = 0; k <= kPolyDegree; ++k) {
      const double re = rng.next_in(-1.0, 1.0);
      const double im = rng.next_in(-1.0, 1.0);
      f.poly[k] = cplx{re, im} / double(k + 1);
    }
    f.poly[0] += 1.5; // keep the factor away from zero
  }
  return f;
}

} // namespace

WaveField make_test_field(const GridSpec& grid, std::uint64_t seed, TestFieldKind kind) {
  for (int k = 0; k < grid.axis_count(); ++k) {
    if (kind == TestFieldKind::periodic_fourier && !grid.axis(k).periodic)
      throw InvalidArgument("periodic_fourier test field on a non-periodic axis '" +
                            grid.axis(k).coord + "'");
    if (kind == TestFieldKind::bump && grid.axis(k).periodic)
      throw InvalidArgument("bump test field on a periodic axis '" + grid.axis(k).coord + "'");
  }

  Prng root = Prng(seed).fork("testfield");
  std::vector<AxisFactor> factors;
  factors.reserve(static_cast<std::size_t>(grid.axis_count()));
  for (int k = 0; k < grid.axis_count(); ++k)
    factors.push_back(make_factor(grid.axis(k), root.fork(grid.axis(k).coord)));

  // per-axis factor values at the axis nodes, then a product over axes
  std::vector<std::vector<cplx>> tables(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const GridAxis& ax = grid.axis(static_cast<int>(k));
    tables[k].resize(static_cast<std::size_t>(ax.count));
    for (int j = 0; j < ax.count; ++j) tables[k][static_cast<std::size_t>(j)] = factors[k].eval(ax.node(j));
  }

  std::vector<cplx> values(grid.node_count());
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    cplx v{1.0, 0.0};
    for (int k = 0; k < grid.axis_count(); ++k)
      v *= tables[static_cast<std::size_t>(k)][static_cast<std::size_t>(grid.axis_position(flat, k))];
    values[flat] = v;
  }
  return WaveField(grid, std::move(values));
}

} // namespace geomom::ops
