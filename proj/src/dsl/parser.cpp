#include "dsl/expr.hpp"

#include <cmath>
#include <cstdio>

#include "support/error.hpp"

namespace geomom::dsl {

int func_arity(FuncOp f) { return f == FuncOp::atan2 ? 2 : 1; }

const char* func_name(FuncOp f) {
  switch (f) {
    case FuncOp::sin: return "sin";
    case FuncOp::cos: return "cos";
    case FuncOp::tan: return "tan";
    case FuncOp::cot: return "cot";
    case FuncOp::exp: return "exp";
    case FuncOp::log: return "log";
    case FuncOp::sqrt: return "sqrt";
    case FuncOp::sinh: return "sinh";
    case FuncOp::cosh: return "cosh";
    case FuncOp::atan2: return "atan2";
  }
  return "?";
}

bool func_from_name(const std::string& name, FuncOp& out) {
  static const FuncOp all[] = {FuncOp::sin,  FuncOp::cos,  FuncOp::tan,  FuncOp::cot,
                               FuncOp::exp,  FuncOp::log,  FuncOp::sqrt, FuncOp::sinh,
                               FuncOp::cosh, FuncOp::atan2};
  for (FuncOp f : all) {
    if (name == func_name(f)) {
      out = f;
      return true;
    }
  }
  return false;
}

namespace {

// binding powers; unary minus sits between * / and ^
constexpr int kBpAdd = 10;
constexpr int kBpMul = 20;
constexpr int kBpNeg = 26;
constexpr int kBpPow = 30;

struct Cursor {
  const std::vector<Token>& toks;
  std::size_t i;

  bool done() const { return i >= toks.size(); }
  const Token& peek() const {
    if (done()) throw ParseError("unexpected end of expression");
    return toks[i];
  }
  const Token& take() {
    const Token& t = peek();
    ++i;
    return t;
  }
  bool at_op(const char* lex) const {
    return !done() && toks[i].kind == TokenKind::op && toks[i].lexeme == lex;
  }
  bool at_paren(char p) const {
    return !done() && toks[i].kind == TokenKind::paren && toks[i].lexeme[0] == p;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    if (done())
      throw ParseError(msg + " at end of input");
    throw ParseError(msg + " at offset " + std::to_string(toks[i].position),
                     static_cast<long>(toks[i].position));
  }
};

std::shared_ptr<Expr> make(Expr::Kind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

ExprPtr constant(double v) {
  auto e = make(Expr::Kind::constant);
  e->value = v;
  return e;
}

ExprPtr parse_bp(Cursor& c, int min_bp);

ExprPtr parse_atom(Cursor& c) {
  if (c.done()) c.fail("expected an operand");
  const Token& t = c.peek();
  switch (t.kind) {
    case TokenKind::number: {
      c.take();
      return constant(t.value);
    }
    case TokenKind::identifier: {
      c.take();
      FuncOp f;
      if (func_from_name(t.lexeme, f)) {
        if (!c.at_paren('('))
          c.fail("function '" + t.lexeme + "' requires an argument list");
        c.take();
        auto call = make(Expr::Kind::call);
        call->func = f;
        if (!c.at_paren(')')) {
          call->children.push_back(parse_bp(c, 0));
          while (!c.done() && c.peek().kind == TokenKind::comma) {
            c.take();
            call->children.push_back(parse_bp(c, 0));
          }
        }
        if (!c.at_paren(')')) c.fail("expected ')' to close call to '" + t.lexeme + "'");
        c.take();
        if (static_cast<int>(call->children.size()) != func_arity(f))
          throw ParseError("function '" + std::string(func_name(f)) + "' takes " +
                               std::to_string(func_arity(f)) + " argument(s), got " +
                               std::to_string(call->children.size()),
                           static_cast<long>(t.position));
        return call;
      }
      if (t.lexeme == "pi") return constant(M_PI);
      if (t.lexeme == "e") return constant(M_E);
      if (c.at_paren('('))
        c.fail("unknown function '" + t.lexeme + "'");
      auto e = make(Expr::Kind::name);
      e->name = t.lexeme;
      return e;
    }
    case TokenKind::op:
      if (t.lexeme == "-") {
        c.take();
        auto e = make(Expr::Kind::unary);
        e->uop = UnaryOp::negate;
        e->children.push_back(parse_bp(c, kBpNeg));
        return e;
      }
      if (t.lexeme == "+") { // unary plus, no node
        c.take();
        return parse_bp(c, kBpNeg);
      }
      c.fail("dangling operator '" + t.lexeme + "'");
    case TokenKind::paren:
      if (t.lexeme == "(") {
        c.take();
        ExprPtr inner = parse_bp(c, 0);
        if (!c.at_paren(')')) c.fail("expected ')'");
        c.take();
        return inner;
      }
      c.fail("unbalanced ')'");
    case TokenKind::comma:
      c.fail("unexpected ','");
    case TokenKind::keyword:
      c.fail("reserved word '" + t.lexeme + "' cannot appear in an expression");
  }
  c.fail("unexpected token");
}

struct BinInfo {
  BinaryOp op;
  int lbp;
  bool right_assoc;
};

bool binary_info(const Token& t, BinInfo& out) {
  if (t.kind != TokenKind::op) return false;
  switch (t.lexeme[0]) {
    case '+': out = {BinaryOp::add, kBpAdd, false}; return true;
    case '-': out = {BinaryOp::sub, kBpAdd, false}; return true;
    case '*': out = {BinaryOp::mul, kBpMul, false}; return true;
    case '/': out = {BinaryOp::div, kBpMul, false}; return true;
    case '^': out = {BinaryOp::pow, kBpPow, true}; return true;
    default: return false;
  }
}

ExprPtr parse_bp(Cursor& c, int min_bp) {
  ExprPtr lhs = parse_atom(c);
  while (!c.done()) {
    BinInfo info;
    if (!binary_info(c.peek(), info) || info.lbp < min_bp) break;
    c.take();
    ExprPtr rhs = parse_bp(c, info.right_assoc ? info.lbp : info.lbp + 1);
    auto e = make(Expr::Kind::binary);
    e->bop = info.op;
    e->children = {lhs, rhs};
    lhs = e;
  }
  return lhs;
}

} // namespace

ExprPtr parse_expression_prefix(const std::vector<Token>& tokens, std::size_t& cursor) {
  Cursor c{tokens, cursor};
  ExprPtr e = parse_bp(c, 0);
  cursor = c.i;
  return e;
}

ExprPtr parse_expression(const std::vector<Token>& tokens) {
  std::size_t cursor = 0;
  ExprPtr e = parse_expression_prefix(tokens, cursor);
  if (cursor != tokens.size()) {
    const Token& t = tokens[cursor];
    throw ParseError("unexpected '" + t.lexeme + "' after expression at offset " +
                         std::to_string(t.position),
                     static_cast<long>(t.position));
  }
  return e;
}

ExprPtr parse_expression(const std::string& source) { return parse_expression(tokenize(source)); }

namespace {

int node_prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::binary:
      switch (e.bop) {
        case BinaryOp::add: case BinaryOp::sub: return kBpAdd;
        case BinaryOp::mul: case BinaryOp::div: return kBpMul;
        case BinaryOp::pow: return kBpPow;
      }
      return 0;
    case Expr::Kind::unary: return kBpNeg;
    default: return 100; // atoms never need parens
  }
}

void print_into(const Expr& e, std::string& out);

void print_child(const Expr& child, int parent_prec, bool needs_parens_on_tie, std::string& out) {
  bool parens = node_prec(child) < parent_prec ||
                (needs_parens_on_tie && node_prec(child) == parent_prec);
  if (parens) out.push_back('(');
  print_into(child, out);
  if (parens) out.push_back(')');
}

void print_into(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::constant: {
      char buf[40];
      if (e.value < 0) {
        std::snprintf(buf, sizeof(buf), "(%.17g)", e.value);
      } else {
        std::snprintf(buf, sizeof(buf), "%.17g", e.value);
      }
      out += buf;
      break;
    }
    case Expr::Kind::name:
      out += e.name;
      break;
    case Expr::Kind::unary:
      out.push_back('-');
      print_child(*e.children[0], kBpNeg, false, out);
      break;
    case Expr::Kind::binary: {
      const int prec = node_prec(e);
      const bool right_assoc = e.bop == BinaryOp::pow;
      const char* sym = nullptr;
      switch (e.bop) {
        case BinaryOp::add: sym = " + "; break;
        case BinaryOp::sub: sym = " - "; break;
        case BinaryOp::mul: sym = "*"; break;
        case BinaryOp::div: sym = "/"; break;
        case BinaryOp::pow: sym = "^"; break;
      }
      print_child(*e.children[0], prec, right_assoc, out);
      out += sym;
      // left-assoc ops need parens on an equal-precedence right child
      // (a + (b - c), a*(b/c)); for ^ that shape is the natural parse
      print_child(*e.children[1], prec, !right_assoc, out);
      break;
    }
    case Expr::Kind::call: {
      out += func_name(e.func);
      out.push_back('(');
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += ", ";
        print_into(*e.children[i], out);
      }
      out.push_back(')');
      break;
    }
  }
}

} // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::constant:
      return a.value == b.value;
    case Expr::Kind::name:
      return a.name == b.name;
    case Expr::Kind::unary:
      if (a.uop != b.uop) return false;
      break;
    case Expr::Kind::binary:
      if (a.bop != b.bop) return false;
      break;
    case Expr::Kind::call:
      if (a.func != b.func) return false;
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

namespace {
void collect_names(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::name) {
    for (const auto& s : out)
      if (s == e.name) return;
    out.push_back(e.name);
    return;
  }
  for (const auto& c : e.children) collect_names(*c, out);
}
} // namespace

std::vector<std::string> free_names(const Expr& e) {
  std::vector<std::string> out;
  collect_names(e, out);
  return out;
}

} // namespace geomom::dsl
