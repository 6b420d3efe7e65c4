#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ad/embedding.hpp"
#include "ad/jet2.hpp"
#include "dsl/chart.hpp"
#include "geo/slice.hpp"
#include "support/prng.hpp"

using namespace geomom;
using namespace geomom::ad;

namespace {

Jet2 var1(double v) { return Jet2::variable(v, 0, 1); } // single seeded variable

// central finite differences of the embedding map, the independent oracle
// for the AD Jacobian and Hessian
void fd_embedding(const dsl::ChartDef& chart, const VecD& pt, double step, MatD& jac_out,
                  double hess_out[kMaxDim][kMaxDim][kMaxDim]) {
  const int d = chart.dim();
  auto at = [&](VecD q) { return embed_position(chart, std::span<const double>(q.v.data(), d)); };
  jac_out = MatD::zero(d, d);
  for (int a = 0; a < d; ++a) {
    VecD hi = pt, lo = pt;
    hi[a] += step;
    lo[a] -= step;
    VecD xh = at(hi), xl = at(lo);
    for (int i = 0; i < d; ++i) jac_out.at(i, a) = (xh[i] - xl[i]) / (2 * step);
  }
  VecD x0 = at(pt);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (a == b) {
        VecD hi = pt, lo = pt;
        hi[a] += step;
        lo[a] -= step;
        VecD xh = at(hi), xl = at(lo);
        for (int i = 0; i < d; ++i)
          hess_out[i][a][a] = (xh[i] - 2 * x0[i] + xl[i]) / (step * step);
      } else {
        VecD pp = pt, pm = pt, mp = pt, mm = pt;
        pp[a] += step; pp[b] += step;
        pm[a] += step; pm[b] -= step;
        mp[a] -= step; mp[b] += step;
        mm[a] -= step; mm[b] -= step;
        VecD xpp = at(pp), xpm = at(pm), xmp = at(mp), xmm = at(mm);
        for (int i = 0; i < d; ++i)
          hess_out[i][a][b] = (xpp[i] - xpm[i] - xmp[i] + xmm[i]) / (4 * step * step);
      }
    }
}

} // namespace

TEST_CASE("jet arithmetic: square, quotient, integer power") {
  Jet2 u = var1(3.0);
  Jet2 sq = u * u;
  CHECK(sq.val == 9.0);
  CHECK(sq.grad[0] == 6.0);
  CHECK(sq.hess_at(0, 0) == 2.0);

  Jet2 a = Jet2::variable(1.0, 0, 2);
  Jet2 b = Jet2::variable(2.0, 1, 2);
  Jet2 q = a / b;
  CHECK(q.val == 0.5);
  CHECK(q.grad[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q.grad[1] == doctest::Approx(-0.25).epsilon(1e-15));

  Jet2 cube = pow(var1(2.0), Jet2::constant(3.0));
  CHECK(cube.val == 8.0);
  CHECK(cube.grad[0] == 12.0);
  CHECK(cube.hess_at(0, 0) == 12.0);
}

TEST_CASE("jet elementary functions") {
  Jet2 s = sin(var1(0.0));
  CHECK(s.val == 0.0);
  CHECK(s.grad[0] == 1.0);
  CHECK(s.hess_at(0, 0) == 0.0);

  Jet2 l = log(var1(1.0));
  CHECK(l.val == 0.0);
  CHECK(l.grad[0] == 1.0);
  CHECK(l.hess_at(0, 0) == -1.0);

  Jet2 r = sqrt(var1(4.0));
  CHECK(r.val == 2.0);
  CHECK(r.grad[0] == 0.25);
  CHECK(r.hess_at(0, 0) == doctest::Approx(-1.0 / 32.0).epsilon(1e-15));
}

TEST_CASE("jet domain errors") {
  CHECK_THROWS_AS(log(var1(0.0)), DomainError);
  CHECK_THROWS_AS(var1(1.0) / Jet2::constant(0.0), DomainError);
  CHECK_THROWS_AS(pow(var1(-1.0), Jet2::constant(0.5)), DomainError);
  CHECK_THROWS_AS(cot(var1(0.0)), DomainError);
  CHECK_NOTHROW(pow(var1(-2.0), Jet2::constant(3.0))); // integer powers of negatives are fine
}

TEST_CASE("jet pow with a variable exponent") {
  Jet2 base = Jet2::variable(2.0, 0, 2);
  Jet2 ex = Jet2::variable(3.0, 1, 2);
  Jet2 p = pow(base, ex); // 2^3 = 8; d/dbase = 12, d/dex = 8 ln 2
  CHECK(p.val == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(p.grad[0] == doctest::Approx(12.0).epsilon(1e-13));
  CHECK(p.grad[1] == doctest::Approx(8.0 * std::log(2.0)).epsilon(1e-13));
  CHECK(p.hess_at(0, 0) == doctest::Approx(12.0).epsilon(1e-13)); // 3*2*2^1
}

TEST_CASE("atan2 jet derivatives match the closed form") {
  Jet2 y = Jet2::variable(1.0, 0, 2);
  Jet2 x = Jet2::variable(2.0, 1, 2);
  Jet2 a = atan2(y, x);
  const double r2 = 5.0;
  CHECK(a.val == doctest::Approx(std::atan2(1.0, 2.0)).epsilon(1e-15));
  CHECK(a.grad[0] == doctest::Approx(2.0 / r2).epsilon(1e-15));
  CHECK(a.grad[1] == doctest::Approx(-1.0 / r2).epsilon(1e-15));
  CHECK(a.hess_at(0, 0) == doctest::Approx(-2.0 * 2.0 * 1.0 / 25.0).epsilon(1e-14));
  CHECK(a.hess_at(0, 1) == doctest::Approx((1.0 - 4.0) / 25.0).epsilon(1e-14));
  CHECK(a.hess_at(1, 1) == doctest::Approx(2.0 * 2.0 * 1.0 / 25.0).epsilon(1e-14));
}

TEST_CASE("chart_point on spherical gives the Lame coefficients as column norms") {
  const auto& chart = dsl::catalog::get("spherical");
  const double pt[3] = {2.0, M_PI / 3.0, 0.0};
  EmbeddingJet jet = chart_point(chart, pt);
  CHECK(norm(column(jet.jac, 0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(norm(column(jet.jac, 1)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(norm(column(jet.jac, 2)) == doctest::Approx(2.0 * std::sin(M_PI / 3.0)).epsilon(1e-14));
}

TEST_CASE("chart_point on polar2d has |det J| = r") {
  const auto& chart = dsl::catalog::get("polar2d");
  const double pt[2] = {1.0, 0.77};
  EmbeddingJet jet = chart_point(chart, pt);
  CHECK(std::fabs(det(jet.jac)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("chart_point flags coordinate singularities") {
  const auto& chart = dsl::catalog::get("spherical");
  const double origin[3] = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(chart_point(chart, origin), SingularChartPoint);
  const double pole[3] = {2.0, 0.0, 1.0};
  CHECK_THROWS_AS(chart_point(chart, pole), SingularChartPoint);
}

TEST_CASE("property: AD matches finite differences on every catalog chart") {
  const double step = 1e-5;
  for (const auto& name : dsl::catalog::names()) {
    const auto& chart = dsl::catalog::get(name);
    const int d = chart.dim();
    auto points = geo::sample_regular_points(chart, 77, 100);
    for (const auto& pt : points) {
      EmbeddingJet jet = chart_point(chart, std::span<const double>(pt.v.data(), d));
      MatD fd_jac;
      static double fd_hess[kMaxDim][kMaxDim][kMaxDim];
      fd_embedding(chart, pt, step, fd_jac, fd_hess);
      double jscale = 0.0, hscale = 0.0;
      for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a) {
          jscale = std::max(jscale, std::fabs(jet.jac.at(i, a)));
          for (int b = 0; b < d; ++b) hscale = std::max(hscale, std::fabs(jet.hess_at(i, a, b)));
        }
      for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a) {
          CHECK(std::fabs(jet.jac.at(i, a) - fd_jac.at(i, a)) <= 1e-7 * std::max(1.0, jscale));
          for (int b = 0; b < d; ++b)
            CHECK(std::fabs(jet.hess_at(i, a, b) - fd_hess[i][a][b]) <=
                  1e-4 * std::max(1.0, hscale));
        }
    }
  }
}

TEST_CASE("Hessian symmetry is exact as stored") {
  const auto& chart = dsl::catalog::get("torus_gn");
  auto points = geo::sample_regular_points(chart, 5, 25);
  for (const auto& pt : points) {
    EmbeddingJet jet = chart_point(chart, std::span<const double>(pt.v.data(), pt.n));
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          CHECK(jet.hess_at(i, a, b) == jet.hess_at(i, b, a)); // bitwise
  }
}

TEST_CASE("affine embeddings have exactly zero Hessian") {
  const char* text = R"(chart shear
coords u ; v
embed 2*u + 0.5*v + 1
embed u - v
end
)";
  dsl::ChartDef chart = dsl::parse_chart(text);
  const double pt[2] = {0.3, -1.7};
  EmbeddingJet jet = chart_point(chart, pt);
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) CHECK(jet.hess_at(i, a, b) == 0.0);
}
