#pragma once

#include <array>
#include <cmath>

#include "dsl/eval.hpp"
#include "support/error.hpp"
#include "support/linalg.hpp"

namespace geomom::ad {

// Scalar carried with its gradient and Hessian with respect to up to M chart
// coordinates. One evaluation pass yields exact (to rounding) first and
// second derivatives; curvature needs no more. Only the upper triangle of the
// Hessian is stored, so symmetry holds by construction.
//
// A jet with dim == 0 is a constant: its derivative arrays are all zero and
// broadcast safely against any dimension. Nonzero dims must match.
//
// The capacity parameter M only sets the inline storage; the embedding
// evaluator instantiates the exact chart dimension so hot sweeps do not drag
// unused array tail around. Jet2 (capacity kMaxDim) is the general-purpose
// alias.
template <int M>
struct JetBase {
  int dim = 0;
  double val = 0.0;
  std::array<double, M> grad{};
  std::array<double, M*(M + 1) / 2> hess{};

  JetBase() = default;
  explicit JetBase(double v) : val(v) {}

  static JetBase constant(double v) { return JetBase(v); }

  static JetBase variable(double v, int slot, int dim) {
    JetBase j(v);
    j.dim = dim;
    j.grad[static_cast<std::size_t>(slot)] = 1.0;
    return j;
  }

  // packed index of (a, b) with a <= b, for dimension d
  static int tri(int a, int b, int d) { return a * d - a * (a - 1) / 2 + (b - a); }

  double hess_at(int a, int b) const {
    if (a > b) std::swap(a, b);
    return hess[static_cast<std::size_t>(tri(a, b, dim))];
  }
};

using Jet2 = JetBase<kMaxDim>;

namespace detail {

template <int M>
inline int joint_dim(const JetBase<M>& a, const JetBase<M>& b) {
  if (a.dim != 0 && b.dim != 0 && a.dim != b.dim)
    throw Error(ErrorCode::internal, "mixed jet dimensions");
  return a.dim > b.dim ? a.dim : b.dim;
}

inline int tri_count(int d) { return d * (d + 1) / 2; }

// f(u) with chain rule to second order: g_k = f1 u_k, h_ab = f2 u_a u_b + f1 u_ab.
template <int M>
inline JetBase<M> compose(const JetBase<M>& u, double f, double f1, double f2) {
  JetBase<M> out(f);
  out.dim = u.dim;
  const int d = u.dim;
  for (int k = 0; k < d; ++k) out.grad[k] = f1 * u.grad[k];
  int idx = 0;
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b, ++idx)
      out.hess[idx] = f2 * u.grad[a] * u.grad[b] + f1 * u.hess[idx];
  return out;
}

} // namespace detail

template <int M>
inline JetBase<M> operator+(const JetBase<M>& a, const JetBase<M>& b) {
  const int d = detail::joint_dim(a, b);
  JetBase<M> out(a.val + b.val);
  out.dim = d;
  for (int k = 0; k < d; ++k) out.grad[k] = a.grad[k] + b.grad[k];
  for (int i = 0, n = detail::tri_count(d); i < n; ++i) out.hess[i] = a.hess[i] + b.hess[i];
  return out;
}

template <int M>
inline JetBase<M> operator-(const JetBase<M>& a, const JetBase<M>& b) {
  const int d = detail::joint_dim(a, b);
  JetBase<M> out(a.val - b.val);
  out.dim = d;
  for (int k = 0; k < d; ++k) out.grad[k] = a.grad[k] - b.grad[k];
  for (int i = 0, n = detail::tri_count(d); i < n; ++i) out.hess[i] = a.hess[i] - b.hess[i];
  return out;
}

template <int M>
inline JetBase<M> operator-(const JetBase<M>& a) {
  JetBase<M> out(-a.val);
  out.dim = a.dim;
  for (int k = 0; k < a.dim; ++k) out.grad[k] = -a.grad[k];
  for (int i = 0, n = detail::tri_count(a.dim); i < n; ++i) out.hess[i] = -a.hess[i];
  return out;
}

template <int M>
inline JetBase<M> operator*(const JetBase<M>& a, const JetBase<M>& b) {
  const int d = detail::joint_dim(a, b);
  JetBase<M> out(a.val * b.val);
  out.dim = d;
  for (int k = 0; k < d; ++k) out.grad[k] = a.grad[k] * b.val + a.val * b.grad[k];
  int idx = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j, ++idx)
      out.hess[idx] = a.hess[idx] * b.val + a.grad[i] * b.grad[j] + a.grad[j] * b.grad[i] +
                      a.val * b.hess[idx];
  return out;
}

template <int M>
inline JetBase<M> operator/(const JetBase<M>& a, const JetBase<M>& b) {
  if (b.val == 0.0) throw DomainError("division by zero");
  const int d = detail::joint_dim(a, b);
  const double inv = 1.0 / b.val;
  JetBase<M> out(a.val * inv);
  out.dim = d;
  for (int k = 0; k < d; ++k) out.grad[k] = (a.grad[k] - out.val * b.grad[k]) * inv;
  int idx = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j, ++idx)
      out.hess[idx] = (a.hess[idx] - out.grad[i] * b.grad[j] - out.grad[j] * b.grad[i] -
                       out.val * b.hess[idx]) *
                      inv;
  return out;
}

template <int M>
inline JetBase<M> sin(const JetBase<M>& u) {
  return detail::compose(u, std::sin(u.val), std::cos(u.val), -std::sin(u.val));
}
template <int M>
inline JetBase<M> cos(const JetBase<M>& u) {
  return detail::compose(u, std::cos(u.val), -std::sin(u.val), -std::cos(u.val));
}
template <int M>
inline JetBase<M> tan(const JetBase<M>& u) {
  if (std::cos(u.val) == 0.0) throw DomainError("tan at a pole");
  const double t = std::tan(u.val);
  const double sec2 = 1.0 + t * t;
  return detail::compose(u, t, sec2, 2.0 * t * sec2);
}
template <int M>
inline JetBase<M> cot(const JetBase<M>& u) {
  const double s = std::sin(u.val);
  if (s == 0.0) throw DomainError("cot at a pole");
  const double c = std::cos(u.val) / s;
  const double csc2 = 1.0 + c * c;
  return detail::compose(u, c, -csc2, 2.0 * c * csc2);
}
template <int M>
inline JetBase<M> exp(const JetBase<M>& u) {
  const double f = std::exp(u.val);
  return detail::compose(u, f, f, f);
}
template <int M>
inline JetBase<M> log(const JetBase<M>& u) {
  if (u.val <= 0.0) throw DomainError("log of a non-positive value");
  const double inv = 1.0 / u.val;
  return detail::compose(u, std::log(u.val), inv, -inv * inv);
}
template <int M>
inline JetBase<M> sqrt(const JetBase<M>& u) {
  if (u.val < 0.0) throw DomainError("sqrt of a negative value");
  if (u.val == 0.0) throw DomainError("sqrt has no derivative at zero");
  const double f = std::sqrt(u.val);
  const double f1 = 0.5 / f;
  return detail::compose(u, f, f1, -0.5 * f1 / u.val);
}
template <int M>
inline JetBase<M> sinh(const JetBase<M>& u) {
  const double s = std::sinh(u.val);
  return detail::compose(u, s, std::cosh(u.val), s);
}
template <int M>
inline JetBase<M> cosh(const JetBase<M>& u) {
  const double c = std::cosh(u.val);
  return detail::compose(u, c, std::sinh(u.val), c);
}

template <int M>
inline bool is_constant(const JetBase<M>& j) {
  for (int k = 0; k < j.dim; ++k)
    if (j.grad[k] != 0.0) return false;
  for (int i = 0, n = detail::tri_count(j.dim); i < n; ++i)
    if (j.hess[i] != 0.0) return false;
  return true;
}

template <int M>
inline JetBase<M> pow(const JetBase<M>& a, const JetBase<M>& b) {
  if (is_constant(b)) {
    const double p = b.val;
    if (a.val > 0.0) {
      const double f = std::pow(a.val, p);
      return detail::compose(a, f, p * std::pow(a.val, p - 1.0),
                             p * (p - 1.0) * std::pow(a.val, p - 2.0));
    }
    if (dsl::ScalarOps<double>::is_integer(p)) {
      if (a.val == 0.0 && p < 0.0) throw DomainError("zero raised to a negative power");
      const double f = std::pow(a.val, p);
      const double f1 = p == 0.0 ? 0.0 : p * std::pow(a.val, p - 1.0);
      const double f2 =
          (p == 0.0 || p == 1.0) ? 0.0 : p * (p - 1.0) * std::pow(a.val, p - 2.0);
      return detail::compose(a, f, f1, f2);
    }
    throw DomainError("non-integer power of a non-positive base");
  }
  if (a.val <= 0.0) throw DomainError("variable power of a non-positive base");
  return exp(b * log(a));
}

template <int M>
inline JetBase<M> atan2(const JetBase<M>& y, const JetBase<M>& x) {
  const double r2 = x.val * x.val + y.val * y.val;
  if (r2 == 0.0) throw DomainError("atan2(0, 0) is undefined");
  const int d = detail::joint_dim(y, x);
  const double fy = x.val / r2;
  const double fx = -y.val / r2;
  const double r4 = r2 * r2;
  const double fyy = -2.0 * x.val * y.val / r4;
  const double fxx = 2.0 * x.val * y.val / r4;
  const double fxy = (y.val * y.val - x.val * x.val) / r4;
  JetBase<M> out(std::atan2(y.val, x.val));
  out.dim = d;
  for (int k = 0; k < d; ++k) out.grad[k] = fy * y.grad[k] + fx * x.grad[k];
  int idx = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j, ++idx)
      out.hess[idx] = fyy * y.grad[i] * y.grad[j] +
                      fxy * (y.grad[i] * x.grad[j] + x.grad[i] * y.grad[j]) +
                      fxx * x.grad[i] * x.grad[j] + fy * y.hess[idx] + fx * x.hess[idx];
  return out;
}

} // namespace geomom::ad

namespace geomom::dsl {

template <int M>
struct ScalarOps<ad::JetBase<M>> {
  using J = ad::JetBase<M>;
  static J add(const J& a, const J& b) { return a + b; }
  static J sub(const J& a, const J& b) { return a - b; }
  static J mul(const J& a, const J& b) { return a * b; }
  static J div(const J& a, const J& b) { return a / b; }
  static J neg(const J& a) { return -a; }
  static J pow(const J& a, const J& b) { return ad::pow(a, b); }

  static J call1(FuncOp f, const J& x) {
    switch (f) {
      case FuncOp::sin: return ad::sin(x);
      case FuncOp::cos: return ad::cos(x);
      case FuncOp::tan: return ad::tan(x);
      case FuncOp::cot: return ad::cot(x);
      case FuncOp::exp: return ad::exp(x);
      case FuncOp::log: return ad::log(x);
      case FuncOp::sqrt: return ad::sqrt(x);
      case FuncOp::sinh: return ad::sinh(x);
      case FuncOp::cosh: return ad::cosh(x);
      default: throw Error(ErrorCode::internal, "call1 on a two-argument function");
    }
  }
  static J call2(FuncOp f, const J& y, const J& x) {
    if (f != FuncOp::atan2) throw Error(ErrorCode::internal, "call2 on a one-argument function");
    return ad::atan2(y, x);
  }
};

} // namespace geomom::dsl
