// geomom command-line tool: catalog listing, pointwise geometry inspection,
// and batch verification with machine-readable output. Talks to the library
// exclusively through the C API in geomom.h.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geomom.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitInput = 3;

int exit_code_of(gm_status s) {
  switch (s) {
    case GM_OK: return kExitPass;
    case GM_ERR_PARSE:
    case GM_ERR_INVALID: return kExitInput;
    default: return kExitNumeric;
  }
}

[[noreturn]] void die(gm_status s) {
  std::cerr << "error: " << gm_last_error() << "\n";
  std::exit(exit_code_of(s));
}

[[noreturn]] void die_input(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitInput);
}

std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

struct ChartHandle {
  gm_chart* ptr = nullptr;
  ~ChartHandle() { gm_chart_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { gm_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct Options {
  std::string chart_name;
  std::string chart_file;
  std::vector<std::string> params;
  std::vector<std::string> at;
  std::string normal;
  std::string coord;
  std::string grid;
  std::string grids;
  int fd_order = 4;
  std::uint64_t seed = 42;
  double hbar = 1.0;
  bool json_flag = false;
  std::string format = "human";
  std::string out_path;
  bool timestamps = false;
  bool negative_control = false;

  std::string effective_format() const { return json_flag ? "json" : format; }
};

void add_common_flags(CLI::App* cmd, Options& o, bool chart_flags) {
  if (chart_flags) {
    cmd->add_option("--chart", o.chart_name, "catalog chart name");
    cmd->add_option("--file", o.chart_file, "chart definition file");
    cmd->add_option("--param", o.params, "parameter override k=v (repeatable)");
  }
  cmd->add_flag("--json", o.json_flag, "shorthand for --format json");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  cmd->add_option("--out", o.out_path, "write output to a file instead of stdout");
}

ChartHandle load_chart(const Options& o) {
  if (o.chart_name.empty() == o.chart_file.empty())
    die_input("pass exactly one of --chart or --file");
  ChartHandle chart;
  gm_status s = o.chart_name.empty() ? gm_chart_from_file(o.chart_file.c_str(), &chart.ptr)
                                     : gm_chart_from_catalog(o.chart_name.c_str(), &chart.ptr);
  if (s != GM_OK) die(s);
  for (const auto& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) die_input("bad --param '" + kv + "', expected k=v");
    char* end = nullptr;
    const std::string val = kv.substr(eq + 1);
    const double v = std::strtod(val.c_str(), &end);
    if (!end || *end) die_input("bad --param value in '" + kv + "'");
    gm_chart* next = nullptr;
    s = gm_chart_with_param(chart.ptr, kv.substr(0, eq).c_str(), v, &next);
    if (s != GM_OK) die(s);
    gm_chart_free(chart.ptr);
    chart.ptr = next;
  }
  return chart;
}

std::map<std::string, double> parse_bindings(const std::vector<std::string>& at) {
  std::map<std::string, double> out;
  for (const auto& chunk : at) {
    std::stringstream ss(chunk);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) die_input("bad --at binding '" + item + "', expected k=v");
      char* end = nullptr;
      const std::string val = item.substr(eq + 1);
      const double v = std::strtod(val.c_str(), &end);
      if (!end || *end) die_input("bad --at value in '" + item + "'");
      out[item.substr(0, eq)] = v;
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, char sep, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (!end || *end || v < 1) die_input(std::string("bad ") + what + " '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) die_input(std::string("empty ") + what);
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) die_input("cannot open output file '" + o.out_path + "'");
  f << text;
}

// ---- catalog ----------------------------------------------------------

int cmd_catalog(const Options& o) {
  OwnedString s;
  gm_status st = gm_catalog_json(&s.ptr);
  if (st != GM_OK) die(st);
  const std::string fmt = o.effective_format();
  if (fmt == "json") {
    emit(o, s.str() + "\n");
    return kExitPass;
  }
  json arr = json::parse(s.str());
  std::ostringstream out;
  if (fmt == "csv") {
    out << "name,dim,coords,params,normal\n";
    for (const auto& c : arr) {
      out << c["name"].get<std::string>() << "," << c["dim"].get<int>() << ",";
      std::string coords;
      for (const auto& cc : c["coords"]) {
        if (!coords.empty()) coords += " ";
        coords += cc["name"].get<std::string>();
        if (cc["periodic"].get<bool>()) coords += "*";
      }
      out << coords << ",";
      std::string params;
      for (auto it = c["params"].begin(); it != c["params"].end(); ++it) {
        if (!params.empty()) params += " ";
        params += it.key() + "=" + fmt15(it.value().get<double>());
      }
      out << params << ",";
      out << (c["normal"].is_null() ? "" : c["normal"].get<std::string>()) << "\n";
    }
  } else {
    out << "catalog charts (" << arr.size() << "):\n";
    for (const auto& c : arr) {
      out << "  " << c["name"].get<std::string>() << "  dim=" << c["dim"].get<int>()
          << "  coords=";
      bool first = true;
      for (const auto& cc : c["coords"]) {
        if (!first) out << ",";
        first = false;
        out << cc["name"].get<std::string>();
        if (cc["periodic"].get<bool>()) out << "(periodic)";
      }
      if (!c["params"].empty()) {
        out << "  params=";
        bool p1 = true;
        for (auto it = c["params"].begin(); it != c["params"].end(); ++it) {
          if (!p1) out << ",";
          p1 = false;
          out << it.key() << "=" << fmt15(it.value().get<double>());
        }
      }
      if (!c["normal"].is_null()) out << "  normal=" << c["normal"].get<std::string>();
      out << "\n";
    }
  }
  emit(o, out.str());
  return kExitPass;
}

// ---- inspect ----------------------------------------------------------

int cmd_inspect(const Options& o) {
  ChartHandle chart = load_chart(o);
  auto bindings = parse_bindings(o.at);
  const int dim = gm_chart_dim(chart.ptr);
  std::vector<double> point(static_cast<std::size_t>(dim), 0.0);
  for (int i = 0; i < dim; ++i) {
    const std::string name = gm_chart_coord_name(chart.ptr, i);
    auto it = bindings.find(name);
    if (it == bindings.end())
      die_input("inspect needs --at to bind every coordinate; missing '" + name + "'");
    point[static_cast<std::size_t>(i)] = it->second;
    bindings.erase(it);
  }
  if (!bindings.empty()) die_input("--at binds unknown coordinate '" + bindings.begin()->first + "'");

  OwnedString s;
  gm_status st = gm_inspect_json(chart.ptr, point.data(), &s.ptr);
  if (st != GM_OK) die(st);
  const std::string fmt = o.effective_format();
  if (fmt == "json") {
    emit(o, s.str() + "\n");
    return kExitPass;
  }
  json j = json::parse(s.str());
  std::ostringstream out;
  if (fmt == "csv") {
    out << "quantity,key,value\n";
    for (auto it = j["point"].begin(); it != j["point"].end(); ++it)
      out << "point," << it.key() << "," << fmt15(it.value().get<double>()) << "\n";
    for (std::size_t i = 0; i < j["x"].size(); ++i)
      out << "x,x" << (i + 1) << "," << fmt15(j["x"][i].get<double>()) << "\n";
    out << "sqrt_g,," << fmt15(j["sqrt_g"].get<double>()) << "\n";
    if (!j["lame"].is_null())
      for (std::size_t i = 0; i < j["lame"].size(); ++i)
        out << "lame," << i << "," << fmt15(j["lame"][i].get<double>()) << "\n";
    for (auto it = j["p_coefficients"].begin(); it != j["p_coefficients"].end(); ++it)
      out << "p_coefficient," << it.key() << "," << fmt15(it.value().get<double>()) << "\n";
    for (const auto& sl : j["slices"]) {
      const std::string n = sl["normal"].get<std::string>();
      if (!sl["admissible"].get<bool>()) {
        out << "slice_admissible," << n << ",0\n";
        continue;
      }
      out << "slice_m_sum," << n << "," << fmt15(sl["m_sum"].get<double>()) << "\n";
      out << "slice_m_avg," << n << "," << fmt15(sl["m_avg"].get<double>()) << "\n";
    }
  } else {
    out << "chart " << j["chart"].get<std::string>() << " at";
    for (auto it = j["point"].begin(); it != j["point"].end(); ++it)
      out << " " << it.key() << "=" << fmt15(it.value().get<double>());
    out << "\n  x = (";
    for (std::size_t i = 0; i < j["x"].size(); ++i)
      out << (i ? ", " : "") << fmt15(j["x"][i].get<double>());
    out << ")\n  sqrt_g = " << fmt15(j["sqrt_g"].get<double>()) << "\n";
    if (!j["lame"].is_null()) {
      out << "  lame = (";
      for (std::size_t i = 0; i < j["lame"].size(); ++i)
        out << (i ? ", " : "") << fmt15(j["lame"][i].get<double>());
      out << ")\n";
    } else {
      out << "  lame = (metric not diagonal)\n";
    }
    out << "  canonical momentum coefficients (1/2 d ln sqrt(g)):\n";
    for (auto it = j["p_coefficients"].begin(); it != j["p_coefficients"].end(); ++it)
      out << "    " << it.key() << ": " << fmt15(it.value().get<double>()) << "\n";
    out << "  slices:\n";
    for (const auto& sl : j["slices"]) {
      out << "    normal " << sl["normal"].get<std::string>() << ": ";
      if (!sl["admissible"].get<bool>()) {
        out << "not metric-orthogonal\n";
        continue;
      }
      out << "M_sum=" << fmt15(sl["m_sum"].get<double>())
          << " M_avg=" << fmt15(sl["m_avg"].get<double>()) << " M_vec=(";
      for (std::size_t i = 0; i < sl["m_vec"].size(); ++i)
        out << (i ? ", " : "") << fmt15(sl["m_vec"][i].get<double>());
      out << ") n=(";
      for (std::size_t i = 0; i < sl["n"].size(); ++i)
        out << (i ? ", " : "") << fmt15(sl["n"][i].get<double>());
      out << ")\n";
    }
  }
  emit(o, out.str());
  return kExitPass;
}

// ---- verify / convergence --------------------------------------------

std::string build_options_json(const Options& o) {
  json opt = json::object();
  opt["seed"] = o.seed;
  opt["fd_order"] = o.fd_order;
  opt["hbar"] = o.hbar;
  if (!o.grids.empty()) opt["grids"] = parse_int_list(o.grids, ',', "--grids list");
  if (!o.grid.empty()) opt["grid"] = parse_int_list(o.grid, 'x', "--grid spec");
  if (!o.normal.empty()) opt["normal"] = o.normal;
  if (!o.coord.empty()) opt["coord"] = o.coord;
  if (o.negative_control) opt["negative_control"] = true;
  auto at = parse_bindings(o.at);
  if (!at.empty()) {
    json pins = json::object();
    for (const auto& [k, v] : at) pins[k] = v;
    opt["at"] = pins;
  }
  if (o.timestamps) {
    char buf[64];
    std::time_t now = std::time(nullptr);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    opt["timestamp"] = buf;
  }
  return opt.dump();
}

double grid_step_of_label(const std::string& label) {
  // characteristic step 1/geomean(counts), from a label like "64x64x64"
  double sum = 0.0;
  int n = 0;
  std::stringstream ss(label);
  std::string item;
  while (std::getline(ss, item, 'x')) {
    sum += std::log(1.0 / std::strtod(item.c_str(), nullptr));
    ++n;
  }
  return n ? std::exp(sum / n) : 1.0;
}

int render_reports(const Options& o, const std::string& reports_json, bool segment_detail) {
  json arr = json::parse(reports_json);
  bool all_pass = true;
  for (const auto& r : arr) all_pass = all_pass && r["verdict"].get<std::string>() == "pass";

  const std::string fmt = o.effective_format();
  if (fmt == "json") {
    emit(o, reports_json + "\n");
    return all_pass ? kExitPass : kExitVerifyFail;
  }

  std::ostringstream out;
  if (fmt == "csv") {
    out << "check,chart,detail,grid,residual,convergence_order,tolerance,verdict\n";
    for (const auto& r : arr) {
      std::string detail;
      const auto& cfg = r["config"];
      if (cfg.contains("op")) {
        detail = cfg["op"].get<std::string>();
        if (cfg.contains("coord")) detail += ":" + cfg["coord"].get<std::string>();
        if (cfg.contains("normal")) detail += ":" + cfg["normal"].get<std::string>();
      } else if (cfg.contains("normal")) {
        detail = "normal=" + cfg["normal"].get<std::string>();
      }
      for (const auto& e : r["residuals"]) {
        out << r["check"].get<std::string>() << "," << r["chart"].get<std::string>() << ","
            << detail << "," << e["grid"].get<std::string>() << ","
            << fmt15(e["value"].get<double>()) << ",";
        if (r["convergence_order"].is_null())
          out << "";
        else
          out << fmt15(r["convergence_order"].get<double>());
        out << "," << fmt15(r["tolerance"].get<double>()) << ","
            << r["verdict"].get<std::string>() << "\n";
      }
    }
  } else {
    int passed = 0;
    for (const auto& r : arr) {
      const bool pass = r["verdict"].get<std::string>() == "pass";
      passed += pass;
      out << (pass ? "[pass] " : "[FAIL] ") << r["check"].get<std::string>() << "  "
          << r["chart"].get<std::string>();
      const auto& cfg = r["config"];
      if (cfg.contains("op")) out << "  op=" << cfg["op"].get<std::string>();
      if (cfg.contains("coord")) out << "  coord=" << cfg["coord"].get<std::string>();
      if (cfg.contains("normal")) out << "  normal=" << cfg["normal"].get<std::string>();
      out << "\n";
      for (const auto& e : r["residuals"])
        out << "    " << e["grid"].get<std::string>() << ": residual "
            << fmt15(e["value"].get<double>()) << "\n";
      if (!r["convergence_order"].is_null())
        out << "    fitted order " << fmt15(r["convergence_order"].get<double>()) << "\n";
      if (segment_detail && r["residuals"].size() >= 2) {
        out << "    per-segment slopes:";
        const auto& res = r["residuals"];
        bool at_floor = true;
        for (std::size_t i = 0; i < res.size(); ++i)
          at_floor = at_floor && res[i]["value"].get<double>() < 1e-12;
        for (std::size_t i = 1; i < res.size(); ++i) {
          const double h0 = grid_step_of_label(res[i - 1]["grid"].get<std::string>());
          const double h1 = grid_step_of_label(res[i]["grid"].get<std::string>());
          const double r0 = std::max(res[i - 1]["value"].get<double>(), 1e-300);
          const double r1 = std::max(res[i]["value"].get<double>(), 1e-300);
          out << " " << fmt15(std::log(r0 / r1) / std::log(h0 / h1));
        }
        if (at_floor) out << "  (at rounding floor)";
        out << "\n";
      }
      if (r["check"].get<std::string>() == "gn-metric") {
        double offdiag = 0.0, dg00 = 0.0;
        for (const auto& e : r["residuals"]) {
          if (e["grid"] == "g0mu_max") offdiag = e["value"].get<double>();
          if (e["grid"] == "d0_g00_max") dg00 = e["value"].get<double>();
        }
        const double tol = r["tolerance"].get<double>();
        out << "    classification: "
            << (offdiag < tol ? (dg00 < tol ? "gaussian_normal" : "orthogonal_only")
                              : "general")
            << "\n";
      }
      out << "    tolerance " << fmt15(r["tolerance"].get<double>()) << "\n";
    }
    out << passed << "/" << arr.size() << " checks passed\n";
  }
  emit(o, out.str());
  return all_pass ? kExitPass : kExitVerifyFail;
}

int cmd_verify(const Options& o, const std::string& check, bool require_ladder) {
  if (require_ladder && o.grids.empty() && o.grid.empty())
    die_input("convergence needs an explicit ladder: pass --grids n1,n2,... (or --grid)");
  ChartHandle chart = load_chart(o);
  OwnedString reports;
  gm_status st = gm_verify(chart.ptr, check.c_str(), build_options_json(o).c_str(),
                           &reports.ptr);
  if (st != GM_OK) die(st);
  return render_reports(o, reports.str(), require_ladder);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"differential geometry of coordinate level-surfaces and the quantum "
               "momentum operators built on them"};
  app.require_subcommand(1);
  Options o;

  CLI::App* catalog = app.add_subcommand("catalog", "list the built-in charts");
  add_common_flags(catalog, o, false);

  CLI::App* inspect =
      app.add_subcommand("inspect", "pointwise geometry report (--at binds every coordinate)");
  add_common_flags(inspect, o, true);
  inspect->add_option("--at", o.at, "coordinate bindings k=v[,k=v...] (repeatable)");

  std::string check = "all";
  CLI::App* verify = app.add_subcommand(
      "verify", "run verification checks: hermiticity | decomposition | orthogonality | "
                "curvature | gn-metric | all");
  add_common_flags(verify, o, true);
  verify->add_option("check", check, "check selector")->required(false);
  verify->add_option("--normal", o.normal, "slicing coordinate (defaults to the chart's)");
  verify->add_option("--coord", o.coord, "canonical-momentum coordinate (hermiticity)");
  verify->add_option("--at", o.at, "pinned coordinate values k=v[,...]");
  verify->add_option("--grid", o.grid, "finest grid AxBxC (active coords, declaration order)");
  verify->add_option("--grids", o.grids, "explicit ladder sizes n1,n2,...");
  verify->add_option("--order", o.fd_order, "finite-difference order")
      ->check(CLI::IsMember({2, 4}));
  verify->add_option("--seed", o.seed, "seed for all sampled points and test fields");
  verify->add_option("--hbar", o.hbar, "value of hbar (default 1)");
  verify->add_flag("--timestamps", o.timestamps, "embed a timestamp in report configs");
  verify->add_flag("--negative-control", o.negative_control,
                   "drop the hermitizing term (the check must then fail)");

  std::string conv_check = "hermiticity";
  CLI::App* convergence = app.add_subcommand(
      "convergence", "like verify, but requires a grid ladder and prints per-segment slopes");
  add_common_flags(convergence, o, true);
  convergence->add_option("check", conv_check, "check selector")->required(false);
  convergence->add_option("--normal", o.normal, "slicing coordinate");
  convergence->add_option("--coord", o.coord, "canonical-momentum coordinate");
  convergence->add_option("--at", o.at, "pinned coordinate values k=v[,...]");
  convergence->add_option("--grid", o.grid, "finest grid AxBxC");
  convergence->add_option("--grids", o.grids, "explicit ladder sizes n1,n2,...");
  convergence->add_option("--order", o.fd_order, "finite-difference order")
      ->check(CLI::IsMember({2, 4}));
  convergence->add_option("--seed", o.seed, "seed");
  convergence->add_option("--hbar", o.hbar, "value of hbar");
  convergence->add_flag("--timestamps", o.timestamps, "embed a timestamp in report configs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (catalog->parsed()) return cmd_catalog(o);
    if (inspect->parsed()) return cmd_inspect(o);
    if (verify->parsed()) return cmd_verify(o, check, false);
    if (convergence->parsed()) return cmd_verify(o, conv_check, true);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}
