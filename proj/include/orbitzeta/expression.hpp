#pragma once

// Small scalar expression language: + - * / ^, unary minus, parentheses,
// numeric literals, named variables and exp log sin cos sqrt abs.
// '^' binds tighter than unary minus and associates to the right, so
// -2^2 = -4 and 2^3^2 = 512.

#include <initializer_list>
#include <iterator>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace orbitzeta {

class Expression {
 public:
  struct Node;

  Expression() = default;

  // Throws parse_error (with the byte offset) or unknown_identifier.
  static Expression parse(std::string_view src, const std::vector<std::string>& variables);

  // Values in the order of the variable names given to parse().
  double evaluate(const double* values) const;
  double evaluate(std::initializer_list<double> values) const { return evaluate(std::data(values)); }

  bool is_constant() const noexcept;
  const std::string& source() const noexcept { return source_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
  std::vector<std::string> variables_;
};

}  // namespace orbitzeta
