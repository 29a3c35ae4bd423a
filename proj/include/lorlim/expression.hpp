#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "lorlim/geometry.hpp"

namespace lorlim {

namespace detail {
struct ExprNode;
}

/// Compiled scalar expression in the chart coordinates `x` and `y`.
///
/// Grammar: numbers, `x`, `y`, `pi`, `e`, the binary operators `+ - * / ^`
/// (`^` is right associative), unary minus and the functions
/// `sqrt exp log sin cos tan abs`. Parse failures raise ConfigError.
class Expression {
 public:
  Expression();
  static Expression parse(std::string_view text);
  static Expression constant(double value);

  double operator()(Point p) const;
  const std::string& text() const { return text_; }
  bool is_constant() const;

 private:
  std::shared_ptr<const detail::ExprNode> root_;
  std::string text_;
};

}  // namespace lorlim
