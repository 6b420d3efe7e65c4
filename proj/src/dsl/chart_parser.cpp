#include "dsl/chart.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "dsl/eval.hpp"
#include "support/error.hpp"
#include "support/linalg.hpp"

namespace geomom::dsl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(long line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, -1, line);
}

// Rebuilds the tree with name nodes classified and slot-resolved against the
// declared coordinate and parameter lists.
ExprPtr resolve(const Expr& e, const ChartDef* decl, const std::vector<CoordSpec>& coords,
                const std::vector<ParamSpec>& params, long line) {
  auto out = std::make_shared<Expr>(e);
  out->children.clear();
  if (e.kind == Expr::Kind::name) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i].name == e.name) {
        out->name_kind = NameKind::variable;
        out->slot = static_cast<int>(i);
        return out;
      }
    }
    for (std::size_t j = 0; j < params.size(); ++j) {
      if (params[j].name == e.name) {
        out->name_kind = NameKind::parameter;
        out->slot = static_cast<int>(coords.size() + j);
        return out;
      }
    }
    fail(line, "undeclared name '" + e.name + "' in embed expression");
  }
  for (const auto& c : e.children) out->children.push_back(resolve(*c, decl, coords, params, line));
  return out;
}

struct LineCursor {
  std::vector<Token> toks;
  std::size_t i = 0;
  long line;

  bool done() const { return i >= toks.size(); }
  const Token& peek() const {
    if (done()) fail(line, "unexpected end of line");
    return toks[i];
  }
  const Token& take() {
    const Token& t = peek();
    ++i;
    return t;
  }
  bool at_word(TokenKind kind, const char* lex) const {
    return !done() && toks[i].kind == kind && toks[i].lexeme == lex;
  }
  std::string expect_identifier(const char* what) {
    if (done() || peek().kind != TokenKind::identifier)
      fail(line, std::string("expected ") + what);
    return take().lexeme;
  }
};

// A bound is `[-]inf` or a constant expression (pi etc. allowed, names not).
double parse_bound(LineCursor& c) {
  bool negated = false;
  if (c.at_word(TokenKind::op, "-") && c.i + 1 < c.toks.size() &&
      c.toks[c.i + 1].kind == TokenKind::identifier && c.toks[c.i + 1].lexeme == "inf") {
    negated = true;
    c.take();
  }
  if (c.at_word(TokenKind::identifier, "inf")) {
    c.take();
    return negated ? -kInf : kInf;
  }
  ExprPtr e;
  try {
    e = parse_expression_prefix(c.toks, c.i);
  } catch (const ParseError& err) {
    fail(c.line, std::string("bad bound: ") + err.what());
  }
  auto names = free_names(*e);
  if (!names.empty()) fail(c.line, "bound must be constant; found name '" + names[0] + "'");
  return eval_expr<double>(*e, [](const Expr&) -> double { return 0.0; });
}

} // namespace

ChartDef::ChartDef(std::string name, std::vector<CoordSpec> coords, std::vector<ParamSpec> params,
                   std::vector<ExprPtr> embeds, std::optional<std::string> normal)
    : name_(std::move(name)),
      coords_(std::move(coords)),
      params_(std::move(params)),
      embeds_(std::move(embeds)) {
  if (normal) {
    normal_index_ = coord_index(*normal);
    if (normal_index_ < 0)
      throw ParseError("designated normal '" + *normal + "' is not a declared coordinate");
  }
}

int ChartDef::coord_index(const std::string& name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i].name == name) return static_cast<int>(i);
  return -1;
}

int ChartDef::param_index(const std::string& name) const {
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i].name == name) return static_cast<int>(i);
  return -1;
}

const std::string* ChartDef::normal_name() const {
  return normal_index_ >= 0 ? &coords_[static_cast<std::size_t>(normal_index_)].name : nullptr;
}

ChartDef ChartDef::with_param(const std::string& name, double value) const {
  int idx = param_index(name);
  if (idx < 0)
    throw InvalidArgument("chart '" + name_ + "' has no parameter '" + name + "'");
  ChartDef copy = *this;
  copy.params_[static_cast<std::size_t>(idx)].value = value;
  return copy;
}

void ChartDef::sampling_window(int coord, double& lo, double& hi) const {
  const CoordSpec& c = coords_[static_cast<std::size_t>(coord)];
  const bool lo_fin = std::isfinite(c.lo), hi_fin = std::isfinite(c.hi);
  if (c.periodic) {
    lo = c.lo;
    hi = c.hi;
  } else if (lo_fin && hi_fin) {
    const double inset = 0.05 * (c.hi - c.lo);
    lo = c.lo + inset;
    hi = c.hi - inset;
  } else if (lo_fin) {
    lo = c.lo + 0.5;
    hi = c.lo + 2.5;
  } else if (hi_fin) {
    lo = c.hi - 2.5;
    hi = c.hi - 0.5;
  } else {
    lo = -1.0;
    hi = 1.0;
  }
}

double ChartDef::default_pin(int coord) const {
  double lo, hi;
  sampling_window(coord, lo, hi);
  return 0.5 * (lo + hi);
}

bool ChartDef::contains(int coord, double value) const {
  const CoordSpec& c = coords_[static_cast<std::size_t>(coord)];
  return value >= c.lo && value <= c.hi;
}

ChartDef parse_chart(const std::string& source) {
  std::vector<std::string> lines;
  {
    std::istringstream in(source);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
  }

  std::string chart_name;
  std::vector<CoordSpec> coords;
  std::vector<ParamSpec> params;
  std::optional<std::string> normal;
  std::vector<std::pair<ExprPtr, long>> raw_embeds;
  bool saw_chart = false, saw_coords = false, saw_params = false, saw_normal = false,
       saw_end = false;

  auto check_fresh_name = [&](const std::string& n, long line) {
    if (is_reserved_word(n)) fail(line, "'" + n + "' is a reserved word");
    for (const auto& c : coords)
      if (c.name == n) fail(line, "duplicate name '" + n + "'");
    for (const auto& p : params)
      if (p.name == n) fail(line, "duplicate name '" + n + "'");
  };

  for (std::size_t li = 0; li < lines.size(); ++li) {
    const long line = static_cast<long>(li + 1);
    LineCursor c{tokenize(lines[li]), 0, line};
    if (c.done()) continue; // blank or comment
    if (saw_end) fail(line, "content after 'end'");
    const Token& head = c.take();
    if (head.kind != TokenKind::keyword)
      fail(line, "expected a directive (chart/coords/params/normal/embed/end)");

    if (head.lexeme == "chart") {
      if (saw_chart) fail(line, "duplicate 'chart' line");
      chart_name = c.expect_identifier("chart name");
      if (is_reserved_word(chart_name)) fail(line, "'" + chart_name + "' is a reserved word");
      if (!c.done()) fail(line, "trailing tokens after chart name");
      saw_chart = true;
      continue;
    }
    if (!saw_chart) fail(line, "file must start with a 'chart' line");

    if (head.lexeme == "coords") {
      if (saw_coords) fail(line, "duplicate 'coords' line");
      saw_coords = true;
      while (true) {
        CoordSpec spec;
        spec.name = c.expect_identifier("coordinate name");
        check_fresh_name(spec.name, line);
        spec.lo = -kInf;
        spec.hi = kInf;
        if (c.at_word(TokenKind::keyword, "periodic") || c.at_word(TokenKind::keyword, "range")) {
          spec.periodic = c.take().lexeme == "periodic";
          spec.lo = parse_bound(c);
          spec.hi = parse_bound(c);
          if (spec.periodic && (!std::isfinite(spec.lo) || !std::isfinite(spec.hi)))
            fail(line, "periodic coordinate '" + spec.name + "' needs finite bounds");
          if (!(spec.lo < spec.hi))
            fail(line, "empty domain for coordinate '" + spec.name + "'");
        }
        coords.push_back(std::move(spec));
        if (c.done()) break;
        if (c.at_word(TokenKind::op, ";")) {
          c.take();
          continue;
        }
        fail(line, "expected ';' between coordinate declarations");
      }
      continue;
    }
    if (head.lexeme == "params") {
      if (saw_params) fail(line, "duplicate 'params' line");
      saw_params = true;
      if (c.done()) fail(line, "empty params line");
      while (!c.done()) {
        ParamSpec p;
        p.name = c.expect_identifier("parameter name");
        check_fresh_name(p.name, line);
        if (!c.at_word(TokenKind::op, "=")) fail(line, "expected '=' after parameter name");
        c.take();
        double sign = 1.0;
        if (c.at_word(TokenKind::op, "-")) {
          sign = -1.0;
          c.take();
        }
        if (c.done() || c.peek().kind != TokenKind::number)
          fail(line, "expected a numeric default for parameter '" + p.name + "'");
        p.value = sign * c.take().value;
        params.push_back(std::move(p));
      }
      continue;
    }
    if (head.lexeme == "normal") {
      if (saw_normal) fail(line, "duplicate 'normal' line");
      saw_normal = true;
      normal = c.expect_identifier("coordinate name");
      if (!c.done()) fail(line, "trailing tokens after normal coordinate");
      continue;
    }
    if (head.lexeme == "embed") {
      if (!saw_coords) fail(line, "'embed' before 'coords'");
      ExprPtr e;
      try {
        e = parse_expression_prefix(c.toks, c.i);
      } catch (const ParseError& err) {
        fail(line, err.what());
      }
      if (!c.done()) fail(line, "trailing tokens after embed expression");
      raw_embeds.emplace_back(std::move(e), line);
      continue;
    }
    if (head.lexeme == "end") {
      if (!c.done()) fail(line, "trailing tokens after 'end'");
      saw_end = true;
      continue;
    }
    fail(line, "'" + head.lexeme + "' is not valid here");
  }

  if (!saw_chart) throw ParseError("missing 'chart' line", -1, 1);
  if (!saw_end) fail(static_cast<long>(lines.size()), "missing 'end'");
  if (!saw_coords) fail(static_cast<long>(lines.size()), "missing 'coords' line");
  const int dim = static_cast<int>(coords.size());
  if (dim < 2) fail(static_cast<long>(lines.size()), "chart needs at least 2 coordinates");
  if (dim > kMaxDim)
    fail(static_cast<long>(lines.size()),
         "chart dimension " + std::to_string(dim) + " exceeds the supported maximum " +
             std::to_string(kMaxDim));
  if (static_cast<int>(raw_embeds.size()) != dim)
    fail(static_cast<long>(lines.size()),
         "dimension mismatch: " + std::to_string(coords.size()) + " coordinates but " +
             std::to_string(raw_embeds.size()) + " embed lines");
  if (normal) {
    bool found = false;
    for (const auto& cs : coords) found = found || cs.name == *normal;
    if (!found)
      throw ParseError("normal '" + *normal + "' is not a declared coordinate");
  }

  std::vector<ExprPtr> embeds;
  embeds.reserve(raw_embeds.size());
  for (const auto& [expr, line] : raw_embeds)
    embeds.push_back(resolve(*expr, nullptr, coords, params, line));

  return ChartDef(std::move(chart_name), std::move(coords), std::move(params), std::move(embeds),
                  std::move(normal));
}

namespace catalog {

namespace {

const char* kPolar2d = R"(# plane polar coordinates
chart polar2d
coords r range 0 inf ; phi periodic 0 2*pi
normal r
embed r*cos(phi)
embed r*sin(phi)
end
)";

const char* kSpherical = R"(# 3D spherical polar coordinates
chart spherical
coords r range 0 inf ; theta range 0 pi ; phi periodic 0 2*pi
normal r
embed r*sin(theta)*cos(phi)
embed r*sin(theta)*sin(phi)
embed r*cos(theta)
end
)";

const char* kCylindrical = R"(# circular cylindrical coordinates
chart cylindrical
coords rho range 0 inf ; phi periodic 0 2*pi ; z
normal rho
embed rho*cos(phi)
embed rho*sin(phi)
embed z
end
)";

// spherical coordinates sliced along theta: the level surfaces are cones
const char* kConeChart = R"(
chart cone_chart
coords r range 0 inf ; theta range 0 pi ; phi periodic 0 2*pi
normal theta
embed r*sin(theta)*cos(phi)
embed r*sin(theta)*sin(phi)
embed r*cos(theta)
end
)";

// gaussian normal coordinates about a torus of radii R > r > 0;
// w is the signed distance along the tube normal
const char* kTorusGn = R"(
chart torus_gn
coords w range -0.2 0.2 ; theta periodic 0 2*pi ; phi periodic 0 2*pi
params R=2 r=0.5
normal w
embed (R + (r + w)*cos(theta))*cos(phi)
embed (R + (r + w)*cos(theta))*sin(phi)
embed (r + w)*sin(theta)
end
)";

const std::map<std::string, const char*>& texts() {
  static const std::map<std::string, const char*> m = {
      {"polar2d", kPolar2d},     {"spherical", kSpherical}, {"cylindrical", kCylindrical},
      {"cone_chart", kConeChart}, {"torus_gn", kTorusGn},
  };
  return m;
}

} // namespace

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : texts()) out.push_back(k);
  return out;
}

bool contains(const std::string& name) { return texts().count(name) != 0; }

const ChartDef& get(const std::string& name) {
  static const std::map<std::string, ChartDef> parsed = [] {
    std::map<std::string, ChartDef> m;
    for (const auto& [k, text] : texts()) m.emplace(k, parse_chart(text));
    return m;
  }();
  auto it = parsed.find(name);
  if (it == parsed.end()) throw InvalidArgument("unknown catalog chart '" + name + "'");
  return it->second;
}

} // namespace catalog

} // namespace geomom::dsl
