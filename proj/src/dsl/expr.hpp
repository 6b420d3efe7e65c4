#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dsl/token.hpp"

namespace geomom::dsl {

enum class UnaryOp { negate };
enum class BinaryOp { add, sub, mul, div, pow };
enum class FuncOp { sin, cos, tan, cot, exp, log, sqrt, sinh, cosh, atan2 };

int func_arity(FuncOp f);
const char* func_name(FuncOp f);
bool func_from_name(const std::string& name, FuncOp& out);

// Whether an identifier names a chart coordinate or a chart parameter.
// parse_expression labels every free name `variable`; parse_chart reclassifies
// against the declared lists. Only AD seeding cares about the difference.
enum class NameKind { variable, parameter };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { constant, name, unary, binary, call };

  Kind kind;
  double value = 0.0;   // constant
  std::string name;     // name
  NameKind name_kind = NameKind::variable;
  int slot = -1;        // flat env index once resolved against a chart
  UnaryOp uop = UnaryOp::negate;
  BinaryOp bop = BinaryOp::add;
  FuncOp func = FuncOp::sin;
  std::vector<ExprPtr> children;
};

// Parses a complete token stream into an expression; trailing tokens are a
// syntax error. Precedence: ^ (right-assoc) > unary - > * / > binary + -.
// `pi` and `e` are reserved constants.
ExprPtr parse_expression(const std::vector<Token>& tokens);
ExprPtr parse_expression(const std::string& source);

// Parses the longest expression starting at `cursor`, advancing it past the
// consumed tokens (used by the line-oriented chart parser).
ExprPtr parse_expression_prefix(const std::vector<Token>& tokens, std::size_t& cursor);

// Minimal-parentheses rendering; reparsing the result reproduces the tree.
std::string to_string(const Expr& e);

// Structural identity: shape, operator tags, names, exact constant values.
// Name classification and slots are chart context and are not compared.
bool structurally_equal(const Expr& a, const Expr& b);

// All distinct free names, in first-appearance order.
std::vector<std::string> free_names(const Expr& e);

} // namespace geomom::dsl
