#include "lorlim/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "lorlim/errors.hpp"

namespace lorlim {
namespace detail {

enum class Op { Const, X, Y, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Fn { Sqrt, Exp, Log, Sin, Cos, Tan, Abs };

struct ExprNode {
  Op op = Op::Const;
  double value = 0.0;
  Fn fn = Fn::Sqrt;
  std::shared_ptr<const ExprNode> lhs;
  std::shared_ptr<const ExprNode> rhs;

  double eval(Point p) const {
    switch (op) {
      case Op::Const: return value;
      case Op::X: return p.x;
      case Op::Y: return p.y;
      case Op::Add: return lhs->eval(p) + rhs->eval(p);
      case Op::Sub: return lhs->eval(p) - rhs->eval(p);
      case Op::Mul: return lhs->eval(p) * rhs->eval(p);
      case Op::Div: return lhs->eval(p) / rhs->eval(p);
      case Op::Pow: return std::pow(lhs->eval(p), rhs->eval(p));
      case Op::Neg: return -lhs->eval(p);
      case Op::Call: {
        const double a = lhs->eval(p);
        switch (fn) {
          case Fn::Sqrt: return std::sqrt(a);
          case Fn::Exp: return std::exp(a);
          case Fn::Log: return std::log(a);
          case Fn::Sin: return std::sin(a);
          case Fn::Cos: return std::cos(a);
          case Fn::Tan: return std::tan(a);
          case Fn::Abs: return std::abs(a);
        }
      }
    }
    return 0.0;
  }

  bool depends_on_point() const {
    if (op == Op::X || op == Op::Y) return true;
    if (lhs && lhs->depends_on_point()) return true;
    return rhs && rhs->depends_on_point();
  }
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_const(double v) {
  auto n = std::make_shared<ExprNode>();
  n->value = v;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("cannot parse expression '" + std::string(s_) + "' at column " +
                      std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) n = make(Op::Add, n, term());
      else if (accept('-')) n = make(Op::Sub, n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = make(Op::Mul, n, unary());
      else if (accept('/')) n = make(Op::Div, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      NodePtr n = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return make_const(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string_view id = s_.substr(start, pos_ - start);
    if (id == "x") return make(Op::X);
    if (id == "y") return make(Op::Y);
    if (id == "pi") return make_const(std::numbers::pi);
    if (id == "e") return make_const(std::numbers::e);

    static const std::pair<std::string_view, Fn> kFunctions[] = {
        {"sqrt", Fn::Sqrt}, {"exp", Fn::Exp}, {"log", Fn::Log}, {"sin", Fn::Sin},
        {"cos", Fn::Cos},   {"tan", Fn::Tan}, {"abs", Fn::Abs}};
    for (const auto& [name, fn] : kFunctions) {
      if (id != name) continue;
      if (!accept('(')) fail("expected '(' after " + std::string(name));
      auto n = std::make_shared<ExprNode>();
      n->op = Op::Call;
      n->fn = fn;
      n->lhs = expr();
      if (!accept(')')) fail("expected ')'");
      return n;
    }
    fail("unknown identifier '" + std::string(id) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace
}  // namespace detail

Expression::Expression() : root_(detail::make_const(0.0)), text_("0") {}

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = detail::Parser(text).parse();
  e.text_ = std::string(text);
  return e;
}

Expression Expression::constant(double value) {
  Expression e;
  e.root_ = detail::make_const(value);
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  e.text_.assign(buf, ptr);
  return e;
}

double Expression::operator()(Point p) const { return root_->eval(p); }

bool Expression::is_constant() const { return !root_->depends_on_point(); }

}  // namespace lorlim
