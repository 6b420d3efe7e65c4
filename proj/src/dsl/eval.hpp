#pragma once

#include <cmath>
#include <map>
#include <string>

#include "dsl/expr.hpp"
#include "support/error.hpp"

namespace geomom::dsl {

// Field operations and elementary functions for a scalar algebra, with the
// DSL's domain rules (log of a non-positive value, division by zero, tan/cot
// poles, fractional powers of non-positive bases all throw DomainError).
// Specialized for double here and for the AD jet in ad/jet2.hpp.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double add(double a, double b) { return a + b; }
  static double sub(double a, double b) { return a - b; }
  static double mul(double a, double b) { return a * b; }
  static double div(double a, double b) {
    if (b == 0.0) throw DomainError("division by zero");
    return a / b;
  }
  static double neg(double a) { return -a; }

  static bool is_integer(double x) {
    return std::floor(x) == x && std::fabs(x) < 9.0e15;
  }

  static double pow(double a, double b) {
    if (is_integer(b)) {
      if (a == 0.0 && b < 0.0) throw DomainError("zero raised to a negative power");
      return std::pow(a, b);
    }
    if (a <= 0.0) throw DomainError("non-integer power of a non-positive base");
    return std::pow(a, b);
  }

  static double call1(FuncOp f, double x) {
    switch (f) {
      case FuncOp::sin: return std::sin(x);
      case FuncOp::cos: return std::cos(x);
      case FuncOp::tan: {
        double c = std::cos(x);
        if (c == 0.0) throw DomainError("tan at a pole");
        return std::sin(x) / c;
      }
      case FuncOp::cot: {
        double s = std::sin(x);
        if (s == 0.0) throw DomainError("cot at a pole");
        return std::cos(x) / s;
      }
      case FuncOp::exp: return std::exp(x);
      case FuncOp::log:
        if (x <= 0.0) throw DomainError("log of a non-positive value");
        return std::log(x);
      case FuncOp::sqrt:
        if (x < 0.0) throw DomainError("sqrt of a negative value");
        return std::sqrt(x);
      case FuncOp::sinh: return std::sinh(x);
      case FuncOp::cosh: return std::cosh(x);
      default: throw Error(ErrorCode::internal, "call1 on a two-argument function");
    }
  }

  static double call2(FuncOp f, double y, double x) {
    if (f != FuncOp::atan2) throw Error(ErrorCode::internal, "call2 on a one-argument function");
    if (y == 0.0 && x == 0.0) throw DomainError("atan2(0, 0) is undefined");
    return std::atan2(y, x);
  }
};

// Evaluates an expression over any scalar algebra. `env` maps a name node to
// its bound value: S env(const Expr& name_node). Pure; domain errors are
// rethrown annotated with the offending subexpression.
template <class S, class Env>
S eval_expr(const Expr& e, const Env& env) {
  using Ops = ScalarOps<S>;
  try {
    switch (e.kind) {
      case Expr::Kind::constant: return S(e.value);
      case Expr::Kind::name: return env(e);
      case Expr::Kind::unary: return Ops::neg(eval_expr<S>(*e.children[0], env));
      case Expr::Kind::binary: {
        S l = eval_expr<S>(*e.children[0], env);
        S r = eval_expr<S>(*e.children[1], env);
        switch (e.bop) {
          case BinaryOp::add: return Ops::add(l, r);
          case BinaryOp::sub: return Ops::sub(l, r);
          case BinaryOp::mul: return Ops::mul(l, r);
          case BinaryOp::div: return Ops::div(l, r);
          case BinaryOp::pow: return Ops::pow(l, r);
        }
        throw Error(ErrorCode::internal, "unreachable binary op");
      }
      case Expr::Kind::call: {
        if (e.children.size() == 1) return Ops::call1(e.func, eval_expr<S>(*e.children[0], env));
        return Ops::call2(e.func, eval_expr<S>(*e.children[0], env),
                          eval_expr<S>(*e.children[1], env));
      }
    }
  } catch (const DomainError& err) {
    // annotate once, at the smallest failing subexpression
    std::string what = err.what();
    if (what.find(" in '") == std::string::npos)
      throw DomainError(what + " in '" + to_string(e) + "'");
    throw;
  }
  throw Error(ErrorCode::internal, "unreachable expr kind");
}

// Map-env evaluation over doubles (the spec's `eval` operation).
inline double eval(const Expr& e, const std::map<std::string, double>& env) {
  return eval_expr<double>(e, [&](const Expr& n) -> double {
    auto it = env.find(n.name);
    if (it == env.end()) throw InvalidArgument("unbound name '" + n.name + "' in expression");
    return it->second;
  });
}

} // namespace geomom::dsl
