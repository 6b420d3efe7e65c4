#include "ops/stencil.hpp"

#include "support/error.hpp"

namespace geomom::ops {

namespace {

// Rows are applied in difference form, sum_t c_t (f_{j+t} - f_j); the
// offset-0 coefficient is implied by the rows summing to zero, and a constant
// field differentiates to exactly zero. len counts the nonzero offsets only.
struct StencilRow {
  int offsets[5];
  double coefs[5];
  int len;
};

// rows for a bounded axis at position j; interior rows are centered
StencilRow bounded_row(int order, int j, int n) {
  if (order == 2) {
    if (j == 0) return {{1, 2}, {2.0, -0.5}, 2};
    if (j == n - 1) return {{-2, -1}, {0.5, -2.0}, 2};
    return {{-1, 1}, {-0.5, 0.5}, 2};
  }
  // order 4
  if (j == 0) return {{1, 2, 3, 4}, {4.0, -3.0, 4.0 / 3, -0.25}, 4};
  if (j == 1) return {{-1, 1, 2, 3}, {-0.25, 1.5, -0.5, 1.0 / 12}, 4};
  if (j == n - 2) return {{-3, -2, -1, 1}, {-1.0 / 12, 0.5, -1.5, 0.25}, 4};
  if (j == n - 1) return {{-4, -3, -2, -1}, {0.25, -4.0 / 3, 3.0, -4.0}, 4};
  return {{-2, -1, 1, 2}, {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12}, 4};
}

StencilRow periodic_row(int order) {
  if (order == 2) return {{-1, 1}, {-0.5, 0.5}, 2};
  return {{-2, -1, 1, 2}, {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12}, 4};
}

} // namespace

WaveField partial_derivative(const WaveField& field, int axis) {
  const GridSpec& g = field.grid();
  if (axis < 0 || axis >= g.axis_count())
    throw InvalidArgument("partial_derivative: no such active axis");
  const GridAxis& ax = g.axis(axis);
  const int n = ax.count;
  const double inv_h = 1.0 / ax.step();
  const std::size_t stride = g.stride(axis);
  const int order = g.fd_order();

  const auto& in = field.values();
  std::vector<cplx> out(in.size());

  const StencilRow wrap = periodic_row(order);
  for (std::size_t flat = 0; flat < in.size(); ++flat) {
    const int j = g.axis_position(flat, axis);
    const std::size_t base = flat - static_cast<std::size_t>(j) * stride;
    const cplx center = in[flat];
    cplx acc{0.0, 0.0};
    if (ax.periodic) {
      for (int t = 0; t < wrap.len; ++t) {
        const int jj = (j + wrap.offsets[t] + n) % n;
        acc += wrap.coefs[t] * (in[base + static_cast<std::size_t>(jj) * stride] - center);
      }
    } else {
      const StencilRow row = bounded_row(order, j, n);
      for (int t = 0; t < row.len; ++t) {
        const int jj = j + row.offsets[t];
        acc += row.coefs[t] * (in[base + static_cast<std::size_t>(jj) * stride] - center);
      }
    }
    out[flat] = acc * inv_h;
  }
  return WaveField(g, std::move(out));
}

WaveField partial_derivative(const WaveField& field, const std::string& coord) {
  const int axis = field.grid().axis_of(coord);
  if (axis < 0)
    throw InvalidArgument("partial_derivative: coordinate '" + coord +
                          "' is not active on this grid");
  return partial_derivative(field, axis);
}

} // namespace geomom::ops
