#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ad/embedding.hpp"
#include "dsl/chart.hpp"
#include "geo/metric.hpp"
#include "geo/slice.hpp"
#include "support/prng.hpp"

using namespace geomom;
using namespace geomom::geo;

namespace {

std::span<const double> sp(const VecD& v) { return {v.v.data(), static_cast<std::size_t>(v.n)}; }

// independent 3x3 determinant for the sqrt_g oracle
double det3(const MatD& m) {
  return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
         m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
         m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
}

// shape-operator trace from finite-difference J and H only (no AD, no
// slice_geometry internals)
double fd_mean_curvature_sum(const dsl::ChartDef& chart, const VecD& pt, int normal) {
  const int d = chart.dim();
  const double step = 1e-5;
  auto at = [&](VecD q) { return ad::embed_position(chart, sp(q)); };
  MatD jac = MatD::zero(d, d);
  for (int a = 0; a < d; ++a) {
    VecD hi = pt, lo = pt;
    hi[a] += step;
    lo[a] -= step;
    VecD xh = at(hi), xl = at(lo);
    for (int i = 0; i < d; ++i) jac.at(i, a) = (xh[i] - xl[i]) / (2 * step);
  }
  VecD ncol = column(jac, normal);
  const double nn = norm(ncol);
  for (int i = 0; i < d; ++i) ncol[i] /= nn;

  const int N = d - 1;
  int surf[kMaxDim];
  int m = 0;
  for (int a = 0; a < d; ++a)
    if (a != normal) surf[m++] = a;

  VecD x0 = at(pt);
  MatD h = MatD::zero(N, N), b = MatD::zero(N, N);
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) {
      h.at(p, q) = dot(column(jac, surf[p]), column(jac, surf[q]));
      VecD d2;
      d2.n = d;
      if (surf[p] == surf[q]) {
        VecD hi = pt, lo = pt;
        hi[surf[p]] += step;
        lo[surf[p]] -= step;
        VecD xh = at(hi), xl = at(lo);
        for (int i = 0; i < d; ++i) d2[i] = (xh[i] - 2 * x0[i] + xl[i]) / (step * step);
      } else {
        VecD pp = pt, pm = pt, mp = pt, mm = pt;
        pp[surf[p]] += step; pp[surf[q]] += step;
        pm[surf[p]] += step; pm[surf[q]] -= step;
        mp[surf[p]] -= step; mp[surf[q]] += step;
        mm[surf[p]] -= step; mm[surf[q]] -= step;
        VecD xpp = at(pp), xpm = at(pm), xmp = at(mp), xmm = at(mm);
        for (int i = 0; i < d; ++i)
          d2[i] = (xpp[i] - xpm[i] - xmp[i] + xmm[i]) / (4 * step * step);
      }
      b.at(p, q) = dot(ncol, d2);
    }
  MatD shape = matmul(invert(h), b);
  double tr = 0.0;
  for (int p = 0; p < N; ++p) tr += shape.at(p, p);
  return tr;
}

} // namespace

TEST_CASE("spherical metric: Lame coefficients and sqrt_g") {
  const auto& chart = dsl::catalog::get("spherical");
  const double pt[3] = {2.0, M_PI / 3.0, 0.4};
  MetricData m = metric(chart, pt);
  REQUIRE(m.has_lame);
  CHECK(m.lame[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m.lame[1] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(m.lame[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
  // oracle: determinant of the explicitly assembled metric
  CHECK(m.sqrt_g == doctest::Approx(std::sqrt(det3(m.g))).epsilon(1e-13));
  CHECK(m.sqrt_g == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-13));
  // g g_inv = identity
  MatD id = matmul(m.g, m.g_inv);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(std::fabs(id.at(a, b) - (a == b ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("affine orthonormal chart has identity metric") {
  const char* text = R"(chart flat
coords u ; v
embed u
embed v
end
)";
  dsl::ChartDef chart = dsl::parse_chart(text);
  const double pt[2] = {0.2, 7.0};
  MetricData m = metric(chart, pt);
  CHECK(m.g.at(0, 0) == 1.0);
  CHECK(m.g.at(1, 1) == 1.0);
  CHECK(m.g.at(0, 1) == 0.0);
  CHECK(m.sqrt_g == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("sphere slice: curvature in both conventions, r = 2") {
  const auto& chart = dsl::catalog::get("spherical");
  const double pt[3] = {2.0, 1.1, 0.6};
  SliceGeometry sg = slice_geometry(chart, pt, 0);
  CHECK(sg.M_avg == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(sg.M_sum == doctest::Approx(-1.0).epsilon(1e-12));
  // M_vec = M_sum * n with n = e_r
  VecD x = ad::embed_position(chart, pt);
  for (int i = 0; i < 3; ++i)
    CHECK(sg.M_vec[i] == doctest::Approx(-1.0 * x[i] / 2.0).epsilon(1e-12));
  CHECK(norm(sg.n) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("convention anchor: unit sphere has M_sum = -2") {
  const auto& chart = dsl::catalog::get("spherical");
  const double pt[3] = {1.0, 0.9, 2.0};
  SliceGeometry sg = slice_geometry(chart, pt, 0);
  CHECK(sg.M_sum == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(sg.M_avg == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("cone slice: M_avg = -1/(2 r tan theta)") {
  const auto& chart = dsl::catalog::get("spherical");
  const double pt[3] = {2.0, M_PI / 4.0, 1.3};
  SliceGeometry sg = slice_geometry(chart, pt, std::string("theta"));
  CHECK(sg.M_avg == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("plane slice of spherical: flat") {
  const auto& chart = dsl::catalog::get("spherical");
  const double pt[3] = {2.0, 1.0, 0.3};
  SliceGeometry sg = slice_geometry(chart, pt, 2);
  CHECK(std::fabs(sg.M_sum) < 1e-13);
}

TEST_CASE("cylinder slice: M_sum = -1/rho") {
  const auto& chart = dsl::catalog::get("cylindrical");
  const double pt[3] = {1.7, 0.4, -0.2};
  SliceGeometry sg = slice_geometry(chart, pt, 0);
  CHECK(sg.M_sum == doctest::Approx(-1.0 / 1.7).epsilon(1e-12));
}

TEST_CASE("torus slice curvature matches the finite-difference shape operator") {
  const auto& chart = dsl::catalog::get("torus_gn");
  auto points = sample_regular_points(chart, 314, 20);
  for (const auto& pt : points) {
    SliceGeometry sg = slice_geometry(chart, sp(pt), 0);
    const double oracle = fd_mean_curvature_sum(chart, pt, 0);
    CHECK(sg.M_sum == doctest::Approx(oracle).epsilon(2e-5));
    // closed form for the tube slice
    const double R = 2.0, r0 = 0.5;
    const double a = r0 + pt[0];
    const double expected = -1.0 / a - std::cos(pt[1]) / (R + a * std::cos(pt[1]));
    CHECK(sg.M_sum == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("normal log derivative: closed-form spot checks") {
  const auto& chart = dsl::catalog::get("spherical");
  const double pt[3] = {2.0, M_PI / 4.0, 0.9};
  CHECK(normal_log_derivative(chart, pt, 0) == doctest::Approx(1.0).epsilon(1e-12)); // 2/r
  CHECK(normal_log_derivative(chart, pt, 1) == doctest::Approx(0.5).epsilon(1e-12)); // cot/r
  CHECK(std::fabs(normal_log_derivative(chart, pt, 2)) < 1e-13);                     // plane
}

TEST_CASE("property: normal log derivative equals -M_sum on all catalog slices") {
  for (const auto& name : dsl::catalog::names()) {
    const auto& chart = dsl::catalog::get(name);
    auto points = sample_regular_points(chart, 2026, 100);
    for (int c = 0; c < chart.dim(); ++c) {
      for (const auto& pt : points) {
        auto jet = ad::chart_point(chart, sp(pt));
        auto m = metric_from(jet);
        SliceGeometry sg = slice_geometry_from(jet, m, c);
        const double nld = normal_log_derivative_from(jet, m, c);
        CHECK(std::fabs(nld + sg.M_sum) <= 1e-10 * std::max(1.0, std::fabs(sg.M_sum)));
      }
    }
  }
}

TEST_CASE("property: Weingarten contraction equals -M_sum") {
  const auto& sphere = dsl::catalog::get("spherical");
  const double pt[3] = {2.0, 1.2, 0.1};
  CHECK(weingarten_contraction(sphere, pt, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(weingarten_contraction(sphere, pt, 2)) < 1e-13);

  for (const auto& name : dsl::catalog::names()) {
    const auto& chart = dsl::catalog::get(name);
    auto points = sample_regular_points(chart, 99, 20);
    for (int c = 0; c < chart.dim(); ++c)
      for (const auto& pt2 : points) {
        auto jet = ad::chart_point(chart, sp(pt2));
        auto m = metric_from(jet);
        SliceGeometry sg = slice_geometry_from(jet, m, c);
        const double w = weingarten_contraction_from(jet, m, c);
        CHECK(std::fabs(w + sg.M_sum) <= 1e-10 * std::max(1.0, std::fabs(sg.M_sum)));
      }
  }
}

TEST_CASE("property: basis duality and inverse-Jacobian decomposition") {
  for (const auto& name : dsl::catalog::names()) {
    const auto& chart = dsl::catalog::get(name);
    const int d = chart.dim();
    auto points = sample_regular_points(chart, 8, 25);
    for (int c = 0; c < d; ++c)
      for (const auto& pt : points) {
        auto jet = ad::chart_point(chart, sp(pt));
        auto m = metric_from(jet);
        SliceGeometry sg = slice_geometry_from(jet, m, c);
        // r^mu . r_nu = delta, n . r^mu = 0
        for (int p = 0; p < sg.surface_dim; ++p) {
          VecD dual = row(sg.r_dual, p);
          CHECK(std::fabs(dot(sg.n, dual)) <= 1e-10 * norm(dual));
          for (int q = 0; q < sg.surface_dim; ++q) {
            const double val = dot(dual, column(sg.r_mu, q));
            CHECK(std::fabs(val - (p == q ? 1.0 : 0.0)) <= 1e-10);
          }
        }
        // rows {n/sqrt(g00) ; r^mu} reproduce J^{-1}
        MatD jinv = invert(jet.jac);
        for (int i = 0; i < d; ++i) {
          CHECK(std::fabs(sg.n[i] * sg.inv_sqrt_g00 - jinv.at(c, i)) <= 1e-10);
          for (int p = 0; p < sg.surface_dim; ++p) {
            const int a = sg.surface_coords[static_cast<std::size_t>(p)];
            CHECK(std::fabs(sg.r_dual.at(p, i) - jinv.at(a, i)) <= 1e-10);
          }
        }
      }
  }
}

TEST_CASE("gaussian-normal validation classifies the catalog slices") {
  const auto& torus = dsl::catalog::get("torus_gn");
  auto tp = sample_regular_points(torus, 11, 40);
  CHECK(validate_gaussian_normal(torus, 0, tp).verdict == SliceClass::gaussian_normal);

  const auto& sphere = dsl::catalog::get("spherical");
  auto spp = sample_regular_points(sphere, 12, 40);
  CHECK(validate_gaussian_normal(sphere, 0, spp).verdict == SliceClass::gaussian_normal);
  // g_00 = r^2 does not depend on theta, so the literal test reports
  // gaussian_normal for the theta slicing too
  CHECK(validate_gaussian_normal(sphere, 1, spp).verdict == SliceClass::gaussian_normal);
}

TEST_CASE("gaussian-normal validation: orthogonal-only and general charts") {
  dsl::ChartDef stretched = dsl::parse_chart(R"(chart stretched
coords u range 1 2 ; v range 0 1
embed u^2
embed v
end
)");
  auto pts = sample_regular_points(stretched, 3, 30);
  auto rep = validate_gaussian_normal(stretched, 0, pts);
  CHECK(rep.verdict == SliceClass::orthogonal_only); // g_00 = 4u^2 varies along u
  CHECK(rep.max_offdiag < 1e-10);

  dsl::ChartDef skewed = dsl::parse_chart(R"(chart skewed
coords u range 1 2 ; v range 0 1
embed u + v
embed u - 0.5*v
end
)");
  auto pts2 = sample_regular_points(skewed, 4, 30);
  CHECK(validate_gaussian_normal(skewed, 0, pts2).verdict == SliceClass::general);
  const double q[2] = {1.5, 0.5};
  CHECK_THROWS_AS(slice_geometry(skewed, q, 0), NotOrthogonalSlice);
}
