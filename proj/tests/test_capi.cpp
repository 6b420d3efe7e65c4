#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "geomom.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Chart {
  gm_chart* p = nullptr;
  ~Chart() { gm_chart_free(p); }
};

struct Str {
  char* p = nullptr;
  ~Str() { gm_string_free(p); }
};

} // namespace

TEST_CASE("version and catalog enumeration") {
  CHECK(gm_version() != nullptr);
  CHECK(gm_catalog_count() == 5);
  bool has_spherical = false, has_torus = false;
  for (int i = 0; i < gm_catalog_count(); ++i) {
    std::string name = gm_catalog_name(i);
    has_spherical = has_spherical || name == "spherical";
    has_torus = has_torus || name == "torus_gn";
  }
  CHECK(has_spherical);
  CHECK(has_torus);
  CHECK(gm_catalog_name(99) == nullptr);

  Str js;
  REQUIRE(gm_catalog_json(&js.p) == GM_OK);
  json arr = json::parse(js.p);
  CHECK(arr.size() == 5);
}

TEST_CASE("chart lifecycle and introspection") {
  Chart c;
  REQUIRE(gm_chart_from_catalog("spherical", &c.p) == GM_OK);
  CHECK(std::string(gm_chart_name(c.p)) == "spherical");
  CHECK(gm_chart_dim(c.p) == 3);
  CHECK(std::string(gm_chart_coord_name(c.p, 0)) == "r");
  CHECK(std::string(gm_chart_coord_name(c.p, 2)) == "phi");
  CHECK(gm_chart_coord_periodic(c.p, 2) == 1);
  CHECK(gm_chart_coord_periodic(c.p, 0) == 0);
  double lo = 0, hi = 0;
  REQUIRE(gm_chart_coord_bounds(c.p, 0, &lo, &hi) == GM_OK);
  CHECK(lo == 0.0);
  CHECK(std::isinf(hi));
  CHECK(std::string(gm_chart_normal(c.p)) == "r");
  CHECK(gm_chart_param_count(c.p) == 0);

  Chart missing;
  CHECK(gm_chart_from_catalog("nope", &missing.p) == GM_ERR_INVALID);
  CHECK(std::string(gm_last_error()).find("nope") != std::string::npos);
}

TEST_CASE("charts from text and file, parameter rebinding") {
  const char* text = "chart demo\ncoords u range 0 1 ; v range 0 1\nembed u\nembed v\nend\n";
  Chart c;
  REQUIRE(gm_chart_from_text(text, &c.p) == GM_OK);
  CHECK(gm_chart_dim(c.p) == 2);
  CHECK(gm_chart_normal(c.p) == nullptr);

  Chart bad;
  CHECK(gm_chart_from_text("chart x\ncoords u\nembed q\nembed u\nend\n", &bad.p) ==
        GM_ERR_PARSE);
  CHECK(std::string(gm_last_error()).find("line") != std::string::npos);

  const std::string path = "/tmp/gm_capi_demo.chart";
  std::ofstream(path) << text;
  Chart f;
  REQUIRE(gm_chart_from_file(path.c_str(), &f.p) == GM_OK);
  std::remove(path.c_str());
  Chart nofile;
  CHECK(gm_chart_from_file("/tmp/definitely-not-here.chart", &nofile.p) == GM_ERR_PARSE);

  Chart torus;
  REQUIRE(gm_chart_from_catalog("torus_gn", &torus.p) == GM_OK);
  Chart fat;
  REQUIRE(gm_chart_with_param(torus.p, "R", 3.0, &fat.p) == GM_OK);
  CHECK(gm_chart_param_value(fat.p, 0) == 3.0);
  CHECK(gm_chart_param_value(torus.p, 0) == 2.0); // original untouched
  Chart nope;
  CHECK(gm_chart_with_param(torus.p, "zzz", 1.0, &nope.p) == GM_ERR_INVALID);
}

TEST_CASE("pointwise geometry through the C surface") {
  Chart c;
  REQUIRE(gm_chart_from_catalog("spherical", &c.p) == GM_OK);
  const double pt[3] = {2.0, M_PI / 3.0, 0.4};

  gm_metric_data m;
  REQUIRE(gm_metric(c.p, pt, &m) == GM_OK);
  CHECK(m.dim == 3);
  REQUIRE(m.has_lame == 1);
  CHECK(m.lame[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m.lame[1] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(m.lame[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
  CHECK(m.sqrt_g == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-13));

  gm_slice_data s;
  REQUIRE(gm_slice_geometry(c.p, pt, "r", &s) == GM_OK);
  CHECK(s.surface_dim == 2);
  CHECK(s.m_avg == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(s.m_sum == doctest::Approx(-1.0).epsilon(1e-12));

  double nld = 0, wein = 0;
  REQUIRE(gm_normal_log_derivative(c.p, pt, "r", &nld) == GM_OK);
  REQUIRE(gm_weingarten_contraction(c.p, pt, "r", &wein) == GM_OK);
  CHECK(nld == doctest::Approx(-s.m_sum).epsilon(1e-12));
  CHECK(wein == doctest::Approx(-s.m_sum).epsilon(1e-12));

  const double origin[3] = {0.0, 1.0, 1.0};
  CHECK(gm_metric(c.p, origin, &m) == GM_ERR_SINGULAR);

  Chart skew;
  REQUIRE(gm_chart_from_text(
              "chart skew\ncoords u range 1 2 ; v range 0 1\nembed u + v\nembed u - 0.5*v\nend\n",
              &skew.p) == GM_OK);
  const double q[2] = {1.5, 0.5};
  CHECK(gm_slice_geometry(skew.p, q, "u", &s) == GM_ERR_NOT_ORTHOGONAL);
  CHECK(gm_slice_geometry(c.p, pt, "bogus", &s) == GM_ERR_INVALID);
}

TEST_CASE("gaussian-normal validation via the C surface") {
  Chart torus;
  REQUIRE(gm_chart_from_catalog("torus_gn", &torus.p) == GM_OK);
  double offdiag = 1, dg00 = 1;
  gm_slice_class verdict = GM_GENERAL;
  REQUIRE(gm_validate_gaussian_normal(torus.p, "w", 42, 50, &offdiag, &dg00, &verdict) == GM_OK);
  CHECK(verdict == GM_GAUSSIAN_NORMAL);
  CHECK(offdiag < 1e-10);
  CHECK(dg00 < 1e-10);
}

TEST_CASE("inspect json") {
  Chart c;
  REQUIRE(gm_chart_from_catalog("spherical", &c.p) == GM_OK);
  const double pt[3] = {2.0, M_PI / 4.0, 1.0};
  Str js;
  REQUIRE(gm_inspect_json(c.p, pt, &js.p) == GM_OK);
  json j = json::parse(js.p);
  CHECK(j["lame"][1].get<double>() == doctest::Approx(2.0));
  CHECK(j["p_coefficients"]["r"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(j["p_coefficients"]["theta"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(j["slices"].size() == 3);
  CHECK(j["slices"][0]["m_avg"].get<double>() == doctest::Approx(-0.5).epsilon(1e-12));

  const double outside[3] = {-1.0, 1.0, 1.0};
  Str js2;
  CHECK(gm_inspect_json(c.p, outside, &js2.p) == GM_ERR_DOMAIN);
}

TEST_CASE("verify through the C surface") {
  Chart c;
  REQUIRE(gm_chart_from_catalog("spherical", &c.p) == GM_OK);
  Str js;
  REQUIRE(gm_verify(c.p, "curvature", "{\"seed\":7}", &js.p) == GM_OK);
  json arr = json::parse(js.p);
  CHECK(arr.size() >= 4);
  for (const auto& r : arr) CHECK(r["verdict"].get<std::string>() == "pass");

  Str js2;
  CHECK(gm_verify(c.p, "bogus-check", nullptr, &js2.p) == GM_ERR_INVALID);
  Str js3;
  CHECK(gm_verify(c.p, "curvature", "{broken", &js3.p) == GM_ERR_INVALID);
  Str js4;
  CHECK(gm_verify(c.p, "curvature", "{\"nope\":1}", &js4.p) == GM_ERR_INVALID);

  // failing verdicts are still a successful run
  Str js5;
  REQUIRE(gm_verify(c.p, "hermiticity",
                    "{\"grids\":[8,12,16],\"coord\":\"r\",\"negative_control\":true}",
                    &js5.p) == GM_OK);
  json neg = json::parse(js5.p);
  REQUIRE(neg.size() == 1);
  CHECK(neg[0]["verdict"].get<std::string>() == "fail");
  CHECK(neg[0]["residuals"].back()["value"].get<double>() > 1e-2);
}
