#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsl/expr.hpp"

namespace geomom::dsl {

struct CoordSpec {
  std::string name;
  double lo;           // -inf = unbounded below
  double hi;           // +inf = unbounded above
  bool periodic = false;
};

struct ParamSpec {
  std::string name;
  double value;
};

// A named smooth map from curvilinear coordinates to Cartesian coordinates.
// Immutable once parsed; safe to share across threads. Expression slots are
// resolved against the flat env layout [coords..., params...].
class ChartDef {
public:
  ChartDef(std::string name, std::vector<CoordSpec> coords, std::vector<ParamSpec> params,
           std::vector<ExprPtr> embeds, std::optional<std::string> normal);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<CoordSpec>& coords() const { return coords_; }
  const std::vector<ParamSpec>& params() const { return params_; }
  const std::vector<ExprPtr>& embeds() const { return embeds_; }

  // -1 when absent
  int coord_index(const std::string& name) const;
  int param_index(const std::string& name) const;
  int normal_index() const { return normal_index_; }
  const std::string* normal_name() const;

  // Copy with one parameter rebound (parameters are constants to AD, fixed at
  // chart-load time).
  ChartDef with_param(const std::string& name, double value) const;

  // Finite box used for seeded sample points and default grid bounds:
  // periodic -> full period; finite range -> 5% inset from each end;
  // half-infinite -> 2-wide box starting 0.5 in from the finite end;
  // unbounded -> [-1, 1].
  void sampling_window(int coord, double& lo, double& hi) const;
  double default_pin(int coord) const; // window midpoint

  bool contains(int coord, double value) const;

private:
  std::string name_;
  std::vector<CoordSpec> coords_;
  std::vector<ParamSpec> params_;
  std::vector<ExprPtr> embeds_;
  int normal_index_ = -1;
};

// Parses the line-oriented chart file format:
//   chart <name>
//   coords <c> [periodic <lo> <hi> | range <lo> <hi>] ; ...
//   params <p>=<real> ...     (optional)
//   normal <coord>            (optional)
//   embed <expr>              (one per Cartesian component)
//   end
// Bounds are constant expressions; `inf`/-`inf` mark an unbounded side.
// Errors carry the 1-based line number.
ChartDef parse_chart(const std::string& source);

namespace catalog {
std::vector<std::string> names();
bool contains(const std::string& name);
const ChartDef& get(const std::string& name);
} // namespace catalog

} // namespace geomom::dsl
