#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dsl/chart.hpp"
#include "support/linalg.hpp"

namespace geomom::ops {

struct GridAxis {
  std::string coord;
  int coord_index = 0;
  int count = 0;
  double lo = 0.0, hi = 0.0;
  bool periodic = false; // wrap stencils; the duplicate endpoint is excluded

  double step() const { return periodic ? (hi - lo) / count : (hi - lo) / (count - 1); }
  double node(int j) const { return lo + j * step(); }
};

// Tensor-product grid over a subset of a chart's coordinates; the remaining
// coordinates are pinned. Axis order follows chart declaration order, last
// axis fastest in the flat layout. Validated on construction: >= 8 nodes per
// axis, fd_order 2 or 4, bounds inside the declared domains, every chart
// coordinate either active or pinned.
class GridSpec {
public:
  GridSpec(const dsl::ChartDef& chart, std::vector<GridAxis> axes,
           std::map<std::string, double> pins, int fd_order);

  // counts applied to active coordinates in declaration order; bounds default
  // to the chart's sampling windows (full period for periodic coordinates)
  static GridSpec tensor(const dsl::ChartDef& chart, std::span<const int> counts,
                         const std::vector<std::string>& active,
                         const std::map<std::string, double>& pins, int fd_order);

  // full-D grid, n nodes per axis
  static GridSpec full(const dsl::ChartDef& chart, int n, int fd_order);
  // surface grid: all coordinates active except the pinned normal
  static GridSpec surface(const dsl::ChartDef& chart, int n, const std::string& normal_coord,
                          double pin_value, int fd_order);

  int axis_count() const { return static_cast<int>(axes_.size()); }
  const GridAxis& axis(int k) const { return axes_[static_cast<std::size_t>(k)]; }
  int axis_of(const std::string& coord) const; // -1 when not active
  const std::vector<std::pair<int, double>>& pins() const { return pins_; } // (coord index, value)
  int fd_order() const { return fd_order_; }
  int chart_dim() const { return chart_dim_; }
  std::size_t node_count() const { return node_count_; }
  std::size_t stride(int k) const { return strides_[static_cast<std::size_t>(k)]; }

  // chart point (all chart coordinates) at a flat node index
  void point_at(std::size_t flat, double* point) const;
  int axis_position(std::size_t flat, int k) const {
    return static_cast<int>((flat / stride(k)) % static_cast<std::size_t>(axis(k).count));
  }

  std::string label() const; // "64x64x64"
  bool conforms(const GridSpec& other) const;

private:
  int chart_dim_ = 0;
  std::vector<GridAxis> axes_;
  std::vector<std::pair<int, double>> pins_;
  std::vector<std::size_t> strides_;
  std::size_t node_count_ = 0;
  int fd_order_ = 2;
};

} // namespace geomom::ops
