#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include "ad/embedding.hpp"
#include "dsl/chart.hpp"
#include "ops/grid.hpp"
#include "ops/momentum.hpp"
#include "ops/stencil.hpp"
#include "ops/testfield.hpp"
#include "ops/wavefield.hpp"

using namespace geomom;
using namespace geomom::ops;

namespace {

const dsl::ChartDef& sphere() { return dsl::catalog::get("spherical"); }

WaveField sample(const GridSpec& g, const std::function<cplx(const double*)>& f) {
  std::vector<cplx> v(g.node_count());
  double pt[kMaxDim];
  for (std::size_t j = 0; j < v.size(); ++j) {
    g.point_at(j, pt);
    v[j] = f(pt);
  }
  return WaveField(g, std::move(v));
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

} // namespace

TEST_CASE("partial derivative of a Fourier mode on a periodic ring") {
  const auto& chart = dsl::catalog::get("polar2d");
  GridSpec g = GridSpec::surface(chart, 128, "r", 1.0, 4);
  WaveField psi = sample(g, [](const double* p) { return std::polar(1.0, 3.0 * p[1]); });
  WaveField dpsi = partial_derivative(psi, "phi");
  double worst = 0.0;
  for (std::size_t j = 0; j < dpsi.values().size(); ++j) {
    const cplx expected = cplx{0.0, 3.0} * psi.values()[j];
    worst = std::max(worst, std::abs(dpsi.values()[j] - expected) / 3.0);
  }
  // analytic oracle: the discrete symbol gives |error|/m = m^4 h^4 / 30
  const double h = 2.0 * M_PI / 128.0;
  const double predicted = 81.0 * h * h * h * h / 30.0;
  CHECK(worst <= 2e-5);
  CHECK(worst == doctest::Approx(predicted).epsilon(0.02));
}

TEST_CASE("partial derivative of a constant field is exactly zero") {
  GridSpec g = GridSpec::full(sphere(), 8, 4);
  WaveField c = sample(g, [](const double*) { return cplx{2.5, -1.0}; });
  for (const auto& name : {"r", "theta", "phi"}) {
    WaveField d = partial_derivative(c, name);
    for (const auto& v : d.values()) CHECK(v == cplx{0.0, 0.0});
  }
}

TEST_CASE("partial derivative rejects inactive coordinates") {
  GridSpec g = GridSpec::surface(sphere(), 16, "r", 2.0, 4);
  WaveField psi = make_test_field(g, 7, TestFieldKind::product);
  CHECK_THROWS_AS(partial_derivative(psi, "r"), InvalidArgument);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec::full(sphere(), 4, 4), GridError);   // < 8 nodes
  CHECK_THROWS_AS(GridSpec::full(sphere(), 16, 3), GridError);  // bad order
  CHECK_THROWS_AS(GridSpec::surface(sphere(), 16, "r", -1.0, 4), GridError); // pin outside domain
  // bounds outside the declared domain
  std::vector<GridAxis> axes{{"theta", 0, 16, -1.0, 1.0, false}};
  CHECK_THROWS_AS(GridSpec(sphere(), axes, {{"r", 2.0}, {"phi", 1.0}}, 4), GridError);
  // every coordinate must be active or pinned
  std::vector<GridAxis> axes2{{"theta", 0, 16, 0.3, 2.8, false}};
  CHECK_THROWS_AS(GridSpec(sphere(), axes2, {{"r", 2.0}}, 4), GridError);
}

TEST_CASE("canonical momentum coefficients reproduce the printed terms") {
  GridSpec g = GridSpec::full(sphere(), 10, 4);
  CanonicalMomentumOp pr(sphere(), g, "r", HBar{});
  CanonicalMomentumOp pt(sphere(), g, "theta", HBar{});
  CanonicalMomentumOp pp(sphere(), g, "phi", HBar{});
  double pt_buf[kMaxDim];
  for (std::size_t j = 0; j < g.node_count(); ++j) {
    g.point_at(j, pt_buf);
    const double r = pt_buf[0], theta = pt_buf[1];
    CHECK(pr.coefficient()[j] == doctest::Approx(1.0 / r).epsilon(1e-12));
    CHECK(pt.coefficient()[j] ==
          doctest::Approx(0.5 / std::tan(theta)).epsilon(1e-12));
    CHECK(std::fabs(pp.coefficient()[j]) < 1e-13);
  }
}

TEST_CASE("P_phi eigenfunctions: eigenvalue hbar*m with fd-order convergence") {
  const int m = 2;
  std::vector<double> errors;
  for (int n : {16, 32, 64}) {
    std::vector<int> counts{8, 8, n};
    std::vector<std::string> active{"r", "theta", "phi"};
    GridSpec g = GridSpec::tensor(sphere(), counts, active, {}, 4);
    WaveField psi = sample(g, [&](const double* p) { return std::polar(1.0, m * p[2]); });
    CanonicalMomentumOp pp(sphere(), g, "phi", HBar{});
    WaveField out = pp.apply(psi);
    double worst = 0.0;
    for (std::size_t j = 0; j < out.values().size(); ++j)
      worst = std::max(worst, std::abs(out.values()[j] - double(m) * psi.values()[j]) / m);
    errors.push_back(worst);
  }
  CHECK(errors[2] < errors[1]);
  CHECK(errors[1] < errors[0]);
  const double slope = std::log2(errors[1] / errors[2]);
  CHECK(slope == doctest::Approx(4.0).epsilon(0.125)); // within +-0.5 of fd_order
}

TEST_CASE("full momentum of a Cartesian coordinate function") {
  auto worst_defect = [&](int n) {
    GridSpec g = GridSpec::full(sphere(), n, 4);
    WaveField x1 = sample(g, [&](const double* p) {
      return cplx{ad::embed_position(sphere(), std::span<const double>(p, 3))[0], 0.0};
    });
    FullMomentumOp P(sphere(), g, HBar{});
    CartesianVectorField out = P.apply(x1);
    double err = 0.0;
    for (std::size_t j = 0; j < g.node_count(); ++j) {
      err = std::max(err, std::abs(out.components[0][j] - cplx{0.0, -1.0}));
      err = std::max(err, std::abs(out.components[1][j]));
      err = std::max(err, std::abs(out.components[2][j]));
    }
    return err;
  };
  const double e16 = worst_defect(16);
  const double e32 = worst_defect(32);
  CHECK(e16 <= 5e-3);        // plain fd error at this resolution
  CHECK(e32 <= e16 / 8.0);   // and it refines at the stencil order

  GridSpec g = GridSpec::full(sphere(), 16, 4);
  FullMomentumOp P(sphere(), g, HBar{});
  WaveField c = sample(g, [](const double*) { return cplx{1.0, 1.0}; });
  CartesianVectorField zero = P.apply(c);
  for (const auto& comp : zero.components)
    for (const auto& v : comp) CHECK(v == cplx{0.0, 0.0});
}

TEST_CASE("geometric momentum on the sphere slice matches the closed-form operator") {
  GridSpec g = GridSpec::surface(sphere(), 48, "r", 2.0, 4);
  WaveField psi = make_test_field(g, 11, TestFieldKind::product);
  GeometricMomentumOp Pi(sphere(), g, "r", HBar{});
  CartesianVectorField out = Pi.apply(psi);

  WaveField dth = partial_derivative(psi, "theta");
  WaveField dph = partial_derivative(psi, "phi");
  double pt[kMaxDim];
  const double r = 2.0;
  double worst = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < g.node_count(); ++j) {
    g.point_at(j, pt);
    const double th = pt[1], ph = pt[2];
    const double er[3] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                          std::cos(th)};
    const double et[3] = {std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph),
                          -std::sin(th)};
    const double ep[3] = {-std::sin(ph), std::cos(ph), 0.0};
    for (int i = 0; i < 3; ++i) {
      const cplx expected =
          cplx{0.0, -1.0} * (et[i] / r * dth.values()[j] +
                             ep[i] / (r * std::sin(th)) * dph.values()[j] -
                             er[i] / r * psi.values()[j]); // M_vec/2 = -e_r/r at r=2
      worst = std::max(worst, std::abs(out.components[i][j] - expected));
      scale = std::max(scale, std::abs(expected));
    }
  }
  CHECK(worst <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("geometric momentum on the cone slice matches the closed-form operator") {
  // theta = pi/4 cone of the spherical chart; surface coords are r and phi
  const auto& chart = dsl::catalog::get("cone_chart");
  GridSpec g = GridSpec::surface(chart, 32, "theta", M_PI / 4.0, 4);
  WaveField psi = make_test_field(g, 17, TestFieldKind::product);
  GeometricMomentumOp Pi(chart, g, "theta", HBar{});
  CartesianVectorField out = Pi.apply(psi);

  WaveField dr = partial_derivative(psi, "r");
  WaveField dph = partial_derivative(psi, "phi");
  const double th = M_PI / 4.0, st = std::sin(th), ct = std::cos(th);
  double pt[kMaxDim];
  double worst = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < g.node_count(); ++j) {
    g.point_at(j, pt);
    const double r = pt[0], ph = pt[2];
    const double er[3] = {st * std::cos(ph), st * std::sin(ph), ct};
    const double et[3] = {ct * std::cos(ph), ct * std::sin(ph), -st};
    const double ep[3] = {-std::sin(ph), std::cos(ph), 0.0};
    for (int i = 0; i < 3; ++i) {
      // -i hbar (e_r d_r + e_phi (1/(r sin th)) d_phi - e_theta/(2 r tan th))
      const cplx expected =
          cplx{0.0, -1.0} * (er[i] * dr.values()[j] +
                             ep[i] / (r * st) * dph.values()[j] -
                             et[i] / (2.0 * r) * psi.values()[j]); // tan(pi/4) = 1
      worst = std::max(worst, std::abs(out.components[i][j] - expected));
      scale = std::max(scale, std::abs(expected));
    }
  }
  CHECK(worst <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("normal momentum uses 1/sqrt(g00) on a non-unit-g00 slicing") {
  // slicing spherical along theta: g00 = r^2, so the derivative term carries
  // a 1/r and the curvature term is cot(theta)/(2 r)
  GridSpec g = GridSpec::full(sphere(), 12, 4);
  WaveField psi = make_test_field(g, 23, TestFieldKind::product);
  NormalMomentumOp N(sphere(), g, "theta", HBar{});
  CartesianVectorField out = N.apply(psi);
  WaveField dth = partial_derivative(psi, "theta");
  double pt[kMaxDim];
  double worst = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < g.node_count(); ++j) {
    g.point_at(j, pt);
    const double r = pt[0], th = pt[1], ph = pt[2];
    const double et[3] = {std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph),
                          -std::sin(th)};
    const cplx scalar = cplx{0.0, -1.0} * (dth.values()[j] / r +
                                           psi.values()[j] / (2.0 * r * std::tan(th)));
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst, std::abs(out.components[i][j] - et[i] * scalar));
      scale = std::max(scale, std::abs(et[i] * scalar));
    }
  }
  CHECK(worst <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("normal momentum scalar part equals the canonical momentum on spherical/r") {
  GridSpec g = GridSpec::full(sphere(), 12, 4);
  WaveField psi = make_test_field(g, 3, TestFieldKind::product);
  NormalMomentumOp N(sphere(), g, "r", HBar{});
  CanonicalMomentumOp Pr(sphere(), g, "r", HBar{});
  CartesianVectorField nout = N.apply(psi);
  WaveField pr = Pr.apply(psi);
  double pt[kMaxDim];
  double worst = 0.0;
  for (std::size_t j = 0; j < g.node_count(); ++j) {
    g.point_at(j, pt);
    const double th = pt[1], ph = pt[2];
    const double er[3] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                          std::cos(th)};
    for (int i = 0; i < 3; ++i)
      worst = std::max(worst, std::abs(nout.components[i][j] - er[i] * pr.values()[j]));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("field-level decomposition holds to rounding on the full grid") {
  GridSpec g = GridSpec::full(sphere(), 12, 4);
  WaveField psi = make_test_field(g, 5, TestFieldKind::product);
  FullMomentumOp P(sphere(), g, HBar{});
  NormalMomentumOp N(sphere(), g, "r", HBar{});
  GeometricMomentumOp Pi(sphere(), g, "r", HBar{});
  auto p = P.apply(psi);
  auto nn = N.apply(psi);
  auto pi = Pi.apply(psi);
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < g.node_count(); ++j) {
      worst = std::max(worst, std::abs(p.components[i][j] - nn.components[i][j] -
                                       pi.components[i][j]));
      scale = std::max(scale, std::abs(p.components[i][j]));
    }
  CHECK(worst <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("inner products: symmetry, positivity, normalized Fourier mode") {
  const auto& polar = dsl::catalog::get("polar2d");
  GridSpec ring = GridSpec::surface(polar, 64, "r", 1.0, 4);
  WaveField mode = sample(ring, [](const double* p) {
    return std::polar(1.0 / std::sqrt(2.0 * M_PI), p[1]);
  });
  const cplx norm = inner_product(mode, mode, polar, Measure::surface_sqrt_h);
  CHECK(std::fabs(norm.real() - 1.0) <= 1e-12);
  CHECK(std::fabs(norm.imag()) <= 1e-15);

  WaveField a = make_test_field(ring, 21, TestFieldKind::product);
  WaveField b = make_test_field(ring, 22, TestFieldKind::product);
  QuadratureWeights q(polar, ring, Measure::surface_sqrt_h);
  const cplx ab = inner_product(a, b, q);
  const cplx ba = inner_product(b, a, q);
  CHECK(std::abs(ab - std::conj(ba)) <= 1e-14 * std::abs(ab));
  CHECK(inner_product(a, a, q).real() > 0.0);

  GridSpec other = GridSpec::surface(polar, 32, "r", 1.0, 4);
  WaveField c = make_test_field(other, 1, TestFieldKind::product);
  CHECK_THROWS_AS(inner_product(a, c, q), GridError);
}

TEST_CASE("test fields: determinism, compact support, mode cap") {
  GridSpec g = GridSpec::surface(sphere(), 32, "r", 2.0, 4);
  WaveField f1 = make_test_field(g, 42, TestFieldKind::product);
  WaveField f2 = make_test_field(g, 42, TestFieldKind::product);
  for (std::size_t j = 0; j < g.node_count(); ++j) CHECK(f1.values()[j] == f2.values()[j]);
  WaveField f3 = make_test_field(g, 43, TestFieldKind::product);
  CHECK(max_abs(f3.values()) > 0.0);
  bool differs = false;
  for (std::size_t j = 0; j < g.node_count(); ++j)
    differs = differs || f1.values()[j] != f3.values()[j];
  CHECK(differs);

  // theta is the bounded axis: boundary nodes carry (essentially) zero
  for (std::size_t j = 0; j < g.node_count(); ++j) {
    const int jt = g.axis_position(j, 0);
    if (jt == 0 || jt == g.axis(0).count - 1) CHECK(std::abs(f1.values()[j]) < 1e-12);
  }

  // Fourier factor on a pure ring: discrete modes above 5 vanish
  const auto& polar = dsl::catalog::get("polar2d");
  GridSpec ring = GridSpec::surface(polar, 64, "r", 1.0, 4);
  WaveField four = make_test_field(ring, 42, TestFieldKind::periodic_fourier);
  const int n = ring.axis(0).count;
  for (int m = 6; m <= n / 2; ++m) {
    cplx coef{0.0, 0.0};
    for (int j = 0; j < n; ++j)
      coef += four.values()[static_cast<std::size_t>(j)] *
              std::polar(1.0, -2.0 * M_PI * m * j / n);
    CHECK(std::abs(coef) / n <= 1e-12);
  }

  CHECK_THROWS_AS(make_test_field(g, 1, TestFieldKind::periodic_fourier), InvalidArgument);
  CHECK_THROWS_AS(make_test_field(g, 1, TestFieldKind::bump), InvalidArgument);
}

TEST_CASE("hbar scaling is exact for every operator") {
  GridSpec s2 = GridSpec::surface(sphere(), 16, "r", 2.0, 4);
  WaveField psi2 = make_test_field(s2, 9, TestFieldKind::product);
  GeometricMomentumOp pi1(sphere(), s2, "r", HBar{1.0});
  GeometricMomentumOp pi2(sphere(), s2, "r", HBar{2.0});
  auto o1 = pi1.apply(psi2);
  auto o2 = pi2.apply(psi2);
  for (int i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < s2.node_count(); ++j)
      CHECK(o2.components[i][j] == 2.0 * o1.components[i][j]);

  GridSpec g3 = GridSpec::full(sphere(), 8, 4);
  WaveField psi3 = make_test_field(g3, 10, TestFieldKind::product);
  CanonicalMomentumOp c1(sphere(), g3, "theta", HBar{1.0});
  CanonicalMomentumOp c2(sphere(), g3, "theta", HBar{2.0});
  auto cv1 = c1.apply(psi3), cv2 = c2.apply(psi3);
  FullMomentumOp f1(sphere(), g3, HBar{1.0});
  FullMomentumOp f2(sphere(), g3, HBar{2.0});
  auto fv1 = f1.apply(psi3), fv2 = f2.apply(psi3);
  NormalMomentumOp n1(sphere(), g3, "r", HBar{1.0});
  NormalMomentumOp n2(sphere(), g3, "r", HBar{2.0});
  auto nv1 = n1.apply(psi3), nv2 = n2.apply(psi3);
  for (std::size_t j = 0; j < g3.node_count(); ++j) {
    CHECK(cv2.values()[j] == 2.0 * cv1.values()[j]);
    for (int i = 0; i < 3; ++i) {
      CHECK(fv2.components[i][j] == 2.0 * fv1.components[i][j]);
      CHECK(nv2.components[i][j] == 2.0 * nv1.components[i][j]);
    }
  }
  CHECK_THROWS_AS(HBar{-1.0}, InvalidArgument);
  CHECK_THROWS_AS(HBar{0.0}, InvalidArgument);
}

TEST_CASE("wavefields reject non-finite samples") {
  GridSpec g = GridSpec::surface(sphere(), 16, "r", 2.0, 4);
  std::vector<cplx> vals(g.node_count(), cplx{1.0, 0.0});
  vals[3] = cplx{std::numeric_limits<double>::quiet_NaN(), 0.0};
  CHECK_THROWS_AS(WaveField(g, std::move(vals)), InvalidArgument);
}

TEST_CASE("negative controls drop the curvature terms") {
  GridSpec g = GridSpec::full(sphere(), 10, 4);
  WaveField psi = make_test_field(g, 13, TestFieldKind::product);
  CanonicalMomentumOp good(sphere(), g, "r", HBar{});
  CanonicalMomentumOp naive(sphere(), g, "r", HBar{}, true);
  WaveField a = good.apply(psi), b = naive.apply(psi);
  double diff = 0.0;
  for (std::size_t j = 0; j < g.node_count(); ++j)
    diff = std::max(diff, std::abs(a.values()[j] - b.values()[j]));
  CHECK(diff > 1e-3); // the 1/r term is order one on this grid

  // dropping M/2 from the geometric momentum breaks the decomposition at
  // order one: the curvature halves no longer cancel against the normal part
  FullMomentumOp P(sphere(), g, HBar{});
  NormalMomentumOp N(sphere(), g, "r", HBar{});
  GeometricMomentumOp pi_naive(sphere(), g, "r", HBar{}, true);
  auto p = P.apply(psi);
  auto nn = N.apply(psi);
  auto pn = pi_naive.apply(psi);
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < g.node_count(); ++j) {
      worst = std::max(worst, std::abs(p.components[i][j] - nn.components[i][j] -
                                       pn.components[i][j]));
      scale = std::max(scale, std::abs(p.components[i][j]));
    }
  CHECK(worst > 1e-2 * scale);
}
