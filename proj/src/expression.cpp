#include "orbitzeta/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "orbitzeta/error.hpp"

namespace orbitzeta {

struct Expression::Node {
  enum class Op { literal, variable, neg, add, sub, mul, div, pow, call } op;
  double value = 0.0;
  int index = 0;  // variable slot or function id
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

const char* const kFunctions[] = {"exp", "log", "sin", "cos", "sqrt", "abs"};

NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != src_.size()) error("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::parse_error, msg + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr l = term();
    for (;;) {
      if (eat('+'))
        l = make(Op::add, l, term());
      else if (eat('-'))
        l = make(Op::sub, l, term());
      else
        return l;
    }
  }

  NodePtr term() {
    NodePtr l = unary();
    for (;;) {
      if (eat('*'))
        l = make(Op::mul, l, unary());
      else if (eat('/'))
        l = make(Op::div, l, unary());
      else
        return l;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::neg, unary());
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Op::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= src_.size()) error("unexpected end of expression");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    error("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    std::string text(src_.substr(pos_));
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str()) error("malformed number");
    pos_ += static_cast<std::size_t>(end - text.c_str());
    auto n = std::make_shared<Expression::Node>();
    n->op = Op::literal;
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    for (int f = 0; f < 6; ++f) {
      if (name == kFunctions[f]) {
        if (!eat('(')) error("expected '(' after " + name);
        NodePtr arg = expr();
        if (!eat(')')) error("expected ')'");
        auto n = std::make_shared<Expression::Node>();
        n->op = Op::call;
        n->index = f;
        n->lhs = arg;
        return n;
      }
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (name == vars_[i]) {
        auto n = std::make_shared<Expression::Node>();
        n->op = Op::variable;
        n->index = static_cast<int>(i);
        return n;
      }
    }
    fail(ErrorCode::unknown_identifier, "'" + name + "' at position " + std::to_string(start));
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

double eval(const Expression::Node& n, const double* v) {
  switch (n.op) {
    case Op::literal: return n.value;
    case Op::variable: return v[n.index];
    case Op::neg: return -eval(*n.lhs, v);
    case Op::add: return eval(*n.lhs, v) + eval(*n.rhs, v);
    case Op::sub: return eval(*n.lhs, v) - eval(*n.rhs, v);
    case Op::mul: return eval(*n.lhs, v) * eval(*n.rhs, v);
    case Op::div: return eval(*n.lhs, v) / eval(*n.rhs, v);
    case Op::pow: return std::pow(eval(*n.lhs, v), eval(*n.rhs, v));
    case Op::call: {
      double a = eval(*n.lhs, v);
      switch (n.index) {
        case 0: return std::exp(a);
        case 1: return std::log(a);
        case 2: return std::sin(a);
        case 3: return std::cos(a);
        case 4: return std::sqrt(a);
        default: return std::abs(a);
      }
    }
  }
  return 0.0;
}

bool constant(const Expression::Node& n) {
  if (n.op == Op::variable) return false;
  if (n.lhs && !constant(*n.lhs)) return false;
  if (n.rhs && !constant(*n.rhs)) return false;
  return true;
}

}  // namespace

Expression Expression::parse(std::string_view src, const std::vector<std::string>& variables) {
  Expression e;
  e.root_ = Parser(src, variables).parse();
  e.source_ = std::string(src);
  e.variables_ = variables;
  if (constant(*e.root_)) {
    // Fold literal-only trees.
    auto n = std::make_shared<Node>();
    n->op = Op::literal;
    n->value = eval(*e.root_, nullptr);
    e.root_ = n;
  }
  return e;
}

double Expression::evaluate(const double* values) const {
  if (!root_) fail(ErrorCode::invalid_argument, "evaluating an empty expression");
  return eval(*root_, values);
}

bool Expression::is_constant() const noexcept { return root_ && root_->op == Op::literal; }

}  // namespace orbitzeta
