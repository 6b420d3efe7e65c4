#include "geomom.h"

#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ad/embedding.hpp"
#include "dsl/chart.hpp"
#include "geo/metric.hpp"
#include "geo/slice.hpp"
#include "support/error.hpp"
#include "support/json_writer.hpp"
#include "verify/checks.hpp"

using geomom::Error;
using geomom::ErrorCode;
using geomom::Json;
using geomom::kMaxDim;
using geomom::VecD;

struct gm_chart {
  geomom::dsl::ChartDef def;
};

namespace {

thread_local std::string tl_error;

gm_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse: return GM_ERR_PARSE;
    case ErrorCode::domain: return GM_ERR_DOMAIN;
    case ErrorCode::singular_point: return GM_ERR_SINGULAR;
    case ErrorCode::not_orthogonal: return GM_ERR_NOT_ORTHOGONAL;
    case ErrorCode::grid: return GM_ERR_GRID;
    case ErrorCode::invalid_argument: return GM_ERR_INVALID;
    case ErrorCode::internal: return GM_ERR_INTERNAL;
  }
  return GM_ERR_INTERNAL;
}

template <class Fn>
gm_status guarded(Fn&& fn) {
  try {
    fn();
    return GM_OK;
  } catch (const Error& e) {
    tl_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    tl_error = e.what();
    return GM_ERR_INTERNAL;
  } catch (...) {
    tl_error = "unknown error";
    return GM_ERR_INTERNAL;
  }
}

gm_status fail_invalid(const char* msg) {
  tl_error = msg;
  return GM_ERR_INVALID;
}

char* copy_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::span<const double> point_span(const gm_chart* chart, const double* point) {
  return {point, static_cast<std::size_t>(chart->def.dim())};
}

Json bound_json(double v) {
  if (std::isfinite(v)) return Json::number(v);
  return Json::null();
}

Json chart_descriptor(const geomom::dsl::ChartDef& def) {
  Json j = Json::object();
  j.set("name", Json::string(def.name()));
  j.set("dim", Json::integer(def.dim()));
  Json coords = Json::array();
  for (const auto& c : def.coords()) {
    Json cj = Json::object();
    cj.set("name", Json::string(c.name));
    cj.set("periodic", Json::boolean(c.periodic));
    cj.set("lo", bound_json(c.lo));
    cj.set("hi", bound_json(c.hi));
    coords.push(std::move(cj));
  }
  j.set("coords", std::move(coords));
  Json params = Json::object();
  for (const auto& p : def.params()) params.set(p.name, Json::number(p.value));
  j.set("params", std::move(params));
  const std::string* n = def.normal_name();
  j.set("normal", n ? Json::string(*n) : Json::null());
  return j;
}

geomom::verify::CheckConfig parse_options(const char* options_json) {
  geomom::verify::CheckConfig cfg;
  if (!options_json || !*options_json) return cfg;
  nlohmann::json opt;
  try {
    opt = nlohmann::json::parse(options_json);
  } catch (const nlohmann::json::exception& e) {
    throw geomom::InvalidArgument(std::string("bad options JSON: ") + e.what());
  }
  if (!opt.is_object()) throw geomom::InvalidArgument("options JSON must be an object");
  for (const auto& [key, value] : opt.items()) {
    if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "fd_order") {
      cfg.fd_order = value.get<int>();
    } else if (key == "hbar") {
      const double h = value.get<double>();
      if (!(h > 0.0)) throw geomom::InvalidArgument("hbar must be strictly positive");
      cfg.hbar = h;
    } else if (key == "grids") {
      cfg.ladder = value.get<std::vector<int>>();
      cfg.surface_ladder = cfg.ladder;
      if (cfg.ladder.empty()) throw geomom::InvalidArgument("grids list is empty");
    } else if (key == "grid") {
      cfg.grid = value.get<std::vector<int>>();
    } else if (key == "at") {
      for (const auto& [coord, pin] : value.items()) cfg.pins[coord] = pin.get<double>();
    } else if (key == "normal") {
      cfg.normal = value.get<std::string>();
    } else if (key == "coord") {
      cfg.coord = value.get<std::string>();
    } else if (key == "negative_control") {
      cfg.negative_control = value.get<bool>();
    } else if (key == "timestamp") {
      cfg.timestamp = value.get<std::string>();
    } else {
      throw geomom::InvalidArgument("unknown option '" + key + "'");
    }
  }
  return cfg;
}

} // namespace

extern "C" {

const char* gm_version(void) { return "0.1.0"; }

const char* gm_last_error(void) { return tl_error.c_str(); }

void gm_string_free(char* s) { delete[] s; }

gm_status gm_chart_from_catalog(const char* name, gm_chart** out) {
  if (!name || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new gm_chart{geomom::dsl::catalog::get(name)}; });
}

gm_status gm_chart_from_text(const char* text, gm_chart** out) {
  if (!text || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new gm_chart{geomom::dsl::parse_chart(text)}; });
}

gm_status gm_chart_from_file(const char* path, gm_chart** out) {
  if (!path || !out) return fail_invalid("null argument");
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw geomom::ParseError(std::string("cannot open chart file '") + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    *out = new gm_chart{geomom::dsl::parse_chart(buf.str())};
  });
}

gm_status gm_chart_with_param(const gm_chart* chart, const char* name, double value,
                              gm_chart** out) {
  if (!chart || !name || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new gm_chart{chart->def.with_param(name, value)}; });
}

void gm_chart_free(gm_chart* chart) { delete chart; }

const char* gm_chart_name(const gm_chart* chart) { return chart->def.name().c_str(); }

int gm_chart_dim(const gm_chart* chart) { return chart->def.dim(); }

const char* gm_chart_coord_name(const gm_chart* chart, int index) {
  if (index < 0 || index >= chart->def.dim()) return nullptr;
  return chart->def.coords()[static_cast<std::size_t>(index)].name.c_str();
}

int gm_chart_coord_periodic(const gm_chart* chart, int index) {
  if (index < 0 || index >= chart->def.dim()) return 0;
  return chart->def.coords()[static_cast<std::size_t>(index)].periodic ? 1 : 0;
}

gm_status gm_chart_coord_bounds(const gm_chart* chart, int index, double* lo, double* hi) {
  if (!chart || !lo || !hi) return fail_invalid("null argument");
  if (index < 0 || index >= chart->def.dim()) return fail_invalid("coordinate index out of range");
  *lo = chart->def.coords()[static_cast<std::size_t>(index)].lo;
  *hi = chart->def.coords()[static_cast<std::size_t>(index)].hi;
  return GM_OK;
}

int gm_chart_param_count(const gm_chart* chart) {
  return static_cast<int>(chart->def.params().size());
}

const char* gm_chart_param_name(const gm_chart* chart, int index) {
  if (index < 0 || index >= gm_chart_param_count(chart)) return nullptr;
  return chart->def.params()[static_cast<std::size_t>(index)].name.c_str();
}

double gm_chart_param_value(const gm_chart* chart, int index) {
  if (index < 0 || index >= gm_chart_param_count(chart))
    return std::numeric_limits<double>::quiet_NaN();
  return chart->def.params()[static_cast<std::size_t>(index)].value;
}

const char* gm_chart_normal(const gm_chart* chart) {
  const std::string* n = chart->def.normal_name();
  return n ? n->c_str() : nullptr;
}

int gm_catalog_count(void) {
  return static_cast<int>(geomom::dsl::catalog::names().size());
}

const char* gm_catalog_name(int index) {
  static const std::vector<std::string> names = geomom::dsl::catalog::names();
  if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
  return names[static_cast<std::size_t>(index)].c_str();
}

gm_status gm_catalog_json(char** json_out) {
  if (!json_out) return fail_invalid("null argument");
  return guarded([&] {
    Json arr = Json::array();
    for (const auto& name : geomom::dsl::catalog::names())
      arr.push(chart_descriptor(geomom::dsl::catalog::get(name)));
    *json_out = copy_string(arr.dump());
  });
}

gm_status gm_metric(const gm_chart* chart, const double* point, gm_metric_data* out) {
  if (!chart || !point || !out) return fail_invalid("null argument");
  return guarded([&] {
    auto m = geomom::geo::metric(chart->def, point_span(chart, point));
    std::memset(out, 0, sizeof(*out));
    out->dim = m.dim;
    for (int a = 0; a < m.dim; ++a)
      for (int b = 0; b < m.dim; ++b) {
        out->g[a * GM_MAX_DIM + b] = m.g.at(a, b);
        out->g_inv[a * GM_MAX_DIM + b] = m.g_inv.at(a, b);
      }
    out->sqrt_g = m.sqrt_g;
    out->has_lame = m.has_lame ? 1 : 0;
    if (m.has_lame)
      for (int a = 0; a < m.dim; ++a) out->lame[a] = m.lame[a];
  });
}

gm_status gm_slice_geometry(const gm_chart* chart, const double* point,
                            const char* normal_coord, gm_slice_data* out) {
  if (!chart || !point || !normal_coord || !out) return fail_invalid("null argument");
  return guarded([&] {
    auto sg = geomom::geo::slice_geometry(chart->def, point_span(chart, point),
                                          std::string(normal_coord));
    std::memset(out, 0, sizeof(*out));
    out->dim = sg.dim;
    out->surface_dim = sg.surface_dim;
    out->g00 = sg.g00;
    out->sqrt_h = sg.sqrt_h;
    out->m_sum = sg.M_sum;
    out->m_avg = sg.M_avg;
    for (int i = 0; i < sg.dim; ++i) {
      out->n[i] = sg.n[i];
      out->m_vec[i] = sg.M_vec[i];
    }
    for (int p = 0; p < sg.surface_dim; ++p)
      for (int i = 0; i < sg.dim; ++i)
        out->r_dual[p * GM_MAX_DIM + i] = sg.r_dual.at(p, i);
  });
}

gm_status gm_normal_log_derivative(const gm_chart* chart, const double* point,
                                   const char* normal_coord, double* out) {
  if (!chart || !point || !normal_coord || !out) return fail_invalid("null argument");
  return guarded([&] {
    const int c = chart->def.coord_index(normal_coord);
    if (c < 0)
      throw geomom::InvalidArgument(std::string("no coordinate '") + normal_coord + "'");
    *out = geomom::geo::normal_log_derivative(chart->def, point_span(chart, point), c);
  });
}

gm_status gm_weingarten_contraction(const gm_chart* chart, const double* point,
                                    const char* normal_coord, double* out) {
  if (!chart || !point || !normal_coord || !out) return fail_invalid("null argument");
  return guarded([&] {
    const int c = chart->def.coord_index(normal_coord);
    if (c < 0)
      throw geomom::InvalidArgument(std::string("no coordinate '") + normal_coord + "'");
    *out = geomom::geo::weingarten_contraction(chart->def, point_span(chart, point), c);
  });
}

gm_status gm_validate_gaussian_normal(const gm_chart* chart, const char* normal_coord,
                                      uint64_t seed, int sample_count, double* max_offdiag,
                                      double* max_d0_g00, gm_slice_class* verdict) {
  if (!chart || !normal_coord || !max_offdiag || !max_d0_g00 || !verdict)
    return fail_invalid("null argument");
  if (sample_count < 1) return fail_invalid("sample_count must be positive");
  return guarded([&] {
    const int c = chart->def.coord_index(normal_coord);
    if (c < 0)
      throw geomom::InvalidArgument(std::string("no coordinate '") + normal_coord + "'");
    auto points = geomom::geo::sample_regular_points(chart->def, seed, sample_count);
    auto rep = geomom::geo::validate_gaussian_normal(chart->def, c, points);
    *max_offdiag = rep.max_offdiag;
    *max_d0_g00 = rep.max_d0_g00;
    switch (rep.verdict) {
      case geomom::geo::SliceClass::gaussian_normal: *verdict = GM_GAUSSIAN_NORMAL; break;
      case geomom::geo::SliceClass::orthogonal_only: *verdict = GM_ORTHOGONAL_ONLY; break;
      case geomom::geo::SliceClass::general: *verdict = GM_GENERAL; break;
    }
  });
}

gm_status gm_inspect_json(const gm_chart* chart, const double* point, char** json_out) {
  if (!chart || !point || !json_out) return fail_invalid("null argument");
  return guarded([&] {
    const auto& def = chart->def;
    auto span = point_span(chart, point);
    geomom::ad::require_in_domain(def, span);
    auto jet = geomom::ad::chart_point(def, span);
    auto m = geomom::geo::metric_from(jet);

    Json j = Json::object();
    j.set("chart", Json::string(def.name()));
    Json pt = Json::object();
    for (int i = 0; i < def.dim(); ++i)
      pt.set(def.coords()[static_cast<std::size_t>(i)].name,
             Json::number(point[static_cast<std::size_t>(i)]));
    j.set("point", std::move(pt));
    Json x = Json::array();
    for (int i = 0; i < def.dim(); ++i) x.push(Json::number(jet.x[i]));
    j.set("x", std::move(x));
    j.set("sqrt_g", Json::number(m.sqrt_g));
    if (m.has_lame) {
      Json lame = Json::array();
      for (int a = 0; a < def.dim(); ++a) lame.push(Json::number(m.lame[a]));
      j.set("lame", std::move(lame));
    } else {
      j.set("lame", Json::null());
    }
    Json coefs = Json::object();
    for (int c = 0; c < def.dim(); ++c)
      coefs.set(def.coords()[static_cast<std::size_t>(c)].name,
                Json::number(0.5 * geomom::geo::log_sqrt_g_derivative(jet, m, c)));
    j.set("p_coefficients", std::move(coefs));

    Json slices = Json::array();
    for (int c = 0; c < def.dim(); ++c) {
      Json s = Json::object();
      s.set("normal", Json::string(def.coords()[static_cast<std::size_t>(c)].name));
      try {
        auto sg = geomom::geo::slice_geometry_from(jet, m, c);
        s.set("admissible", Json::boolean(true));
        Json n = Json::array();
        Json mv = Json::array();
        for (int i = 0; i < def.dim(); ++i) {
          n.push(Json::number(sg.n[i]));
          mv.push(Json::number(sg.M_vec[i]));
        }
        s.set("n", std::move(n));
        s.set("m_vec", std::move(mv));
        s.set("m_sum", Json::number(sg.M_sum));
        s.set("m_avg", Json::number(sg.M_avg));
        s.set("normal_log_derivative",
              Json::number(geomom::geo::normal_log_derivative_from(jet, m, c)));
      } catch (const geomom::NotOrthogonalSlice&) {
        s.set("admissible", Json::boolean(false));
      }
      slices.push(std::move(s));
    }
    j.set("slices", std::move(slices));
    *json_out = copy_string(j.dump());
  });
}

gm_status gm_verify(const gm_chart* chart, const char* check, const char* options_json,
                    char** reports_json_out) {
  if (!chart || !check || !reports_json_out) return fail_invalid("null argument");
  return guarded([&] {
    geomom::verify::CheckConfig cfg = parse_options(options_json);
    auto reports = geomom::verify::run_checks(chart->def, check, cfg);
    *reports_json_out = copy_string(geomom::verify::reports_to_json(reports).dump());
  });
}

} // extern "C"
