#include "ops/grid.hpp"

#include <algorithm>
#include <cmath>

#include "support/error.hpp"

namespace geomom::ops {

GridSpec::GridSpec(const dsl::ChartDef& chart, std::vector<GridAxis> axes,
                   std::map<std::string, double> pins, int fd_order)
    : chart_dim_(chart.dim()), axes_(std::move(axes)), fd_order_(fd_order) {
  if (fd_order_ != 2 && fd_order_ != 4)
    throw GridError("fd_order must be 2 or 4, got " + std::to_string(fd_order_));
  if (axes_.empty()) throw GridError("grid needs at least one active coordinate");

  std::vector<bool> covered(static_cast<std::size_t>(chart.dim()), false);
  for (auto& ax : axes_) {
    ax.coord_index = chart.coord_index(ax.coord);
    if (ax.coord_index < 0)
      throw GridError("chart '" + chart.name() + "' has no coordinate '" + ax.coord + "'");
    if (covered[static_cast<std::size_t>(ax.coord_index)])
      throw GridError("coordinate '" + ax.coord + "' listed twice");
    covered[static_cast<std::size_t>(ax.coord_index)] = true;
    if (ax.count < 8)
      throw GridError("axis '" + ax.coord + "' needs at least 8 nodes, got " +
                      std::to_string(ax.count));
    if (!(ax.lo < ax.hi)) throw GridError("axis '" + ax.coord + "' has an empty range");
    const auto& spec = chart.coords()[static_cast<std::size_t>(ax.coord_index)];
    if (ax.periodic && !spec.periodic)
      throw GridError("axis '" + ax.coord + "' marked periodic but the coordinate is not");
    if (ax.periodic && (ax.lo != spec.lo || ax.hi != spec.hi))
      throw GridError("periodic axis '" + ax.coord + "' must span the declared period");
    if (!(ax.lo >= spec.lo && ax.hi <= spec.hi))
      throw GridError("axis '" + ax.coord + "' range is outside the declared domain");
  }
  // axes follow chart declaration order
  std::sort(axes_.begin(), axes_.end(),
            [](const GridAxis& a, const GridAxis& b) { return a.coord_index < b.coord_index; });

  for (const auto& [name, value] : pins) {
    int ci = chart.coord_index(name);
    if (ci < 0) throw GridError("chart '" + chart.name() + "' has no coordinate '" + name + "'");
    if (covered[static_cast<std::size_t>(ci)])
      throw GridError("coordinate '" + name + "' is both active and pinned");
    covered[static_cast<std::size_t>(ci)] = true;
    if (!chart.contains(ci, value))
      throw GridError("pinned value for '" + name + "' is outside the declared domain");
    pins_.emplace_back(ci, value);
  }
  for (int i = 0; i < chart.dim(); ++i)
    if (!covered[static_cast<std::size_t>(i)])
      throw GridError("coordinate '" + chart.coords()[static_cast<std::size_t>(i)].name +
                      "' is neither active nor pinned");

  strides_.assign(axes_.size(), 1);
  node_count_ = 1;
  for (int k = axis_count() - 1; k >= 0; --k) {
    strides_[static_cast<std::size_t>(k)] = node_count_;
    node_count_ *= static_cast<std::size_t>(axes_[static_cast<std::size_t>(k)].count);
  }
}

GridSpec GridSpec::tensor(const dsl::ChartDef& chart, std::span<const int> counts,
                          const std::vector<std::string>& active,
                          const std::map<std::string, double>& pins, int fd_order) {
  if (counts.size() != active.size())
    throw GridError("got " + std::to_string(counts.size()) + " node counts for " +
                    std::to_string(active.size()) + " active coordinates");
  std::vector<GridAxis> axes;
  for (std::size_t k = 0; k < active.size(); ++k) {
    GridAxis ax;
    ax.coord = active[k];
    ax.count = counts[k];
    int ci = chart.coord_index(ax.coord);
    if (ci < 0)
      throw GridError("chart '" + chart.name() + "' has no coordinate '" + ax.coord + "'");
    const auto& spec = chart.coords()[static_cast<std::size_t>(ci)];
    ax.periodic = spec.periodic;
    chart.sampling_window(ci, ax.lo, ax.hi);
    axes.push_back(std::move(ax));
  }
  return GridSpec(chart, std::move(axes), pins, fd_order);
}

GridSpec GridSpec::full(const dsl::ChartDef& chart, int n, int fd_order) {
  std::vector<std::string> active;
  for (const auto& c : chart.coords()) active.push_back(c.name);
  std::vector<int> counts(active.size(), n);
  return tensor(chart, counts, active, {}, fd_order);
}

GridSpec GridSpec::surface(const dsl::ChartDef& chart, int n, const std::string& normal_coord,
                           double pin_value, int fd_order) {
  std::vector<std::string> active;
  for (const auto& c : chart.coords())
    if (c.name != normal_coord) active.push_back(c.name);
  if (static_cast<int>(active.size()) == chart.dim())
    throw GridError("chart '" + chart.name() + "' has no coordinate '" + normal_coord + "'");
  std::vector<int> counts(active.size(), n);
  return tensor(chart, counts, active, {{normal_coord, pin_value}}, fd_order);
}

int GridSpec::axis_of(const std::string& coord) const {
  for (int k = 0; k < axis_count(); ++k)
    if (axes_[static_cast<std::size_t>(k)].coord == coord) return k;
  return -1;
}

void GridSpec::point_at(std::size_t flat, double* point) const {
  for (const auto& [ci, value] : pins_) point[ci] = value;
  for (int k = 0; k < axis_count(); ++k) {
    const GridAxis& ax = axes_[static_cast<std::size_t>(k)];
    point[ax.coord_index] = ax.node(axis_position(flat, k));
  }
}

std::string GridSpec::label() const {
  std::string s;
  for (int k = 0; k < axis_count(); ++k) {
    if (k) s += "x";
    s += std::to_string(axes_[static_cast<std::size_t>(k)].count);
  }
  return s;
}

bool GridSpec::conforms(const GridSpec& other) const {
  if (axis_count() != other.axis_count() || pins_ != other.pins_) return false;
  for (int k = 0; k < axis_count(); ++k) {
    const GridAxis& a = axes_[static_cast<std::size_t>(k)];
    const GridAxis& b = other.axes_[static_cast<std::size_t>(k)];
    if (a.coord != b.coord || a.count != b.count || a.lo != b.lo || a.hi != b.hi ||
        a.periodic != b.periodic)
      return false;
  }
  return true;
}

} // namespace geomom::ops
