#include "biharm/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

namespace biharm {
namespace {

struct Node {
  Expression::Op op;
  std::vector<std::unique_ptr<Node>> children;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Expression::OpCode code, double constant = 0.0, int index = 0) {
  auto n = std::make_unique<Node>();
  n->op = {code, constant, index};
  return n;
}

NodePtr make(Expression::OpCode code, NodePtr a, NodePtr b = nullptr) {
  auto n = make(code);
  n->children.push_back(std::move(a));
  if (b) n->children.push_back(std::move(b));
  return n;
}

bool is_constant(const Node& n) {
  if (n.op.code == Expression::OpCode::Variable) return false;
  return std::all_of(n.children.begin(), n.children.end(),
                     [](const NodePtr& c) { return is_constant(*c); });
}

void emit(const Node& n, std::vector<Expression::Op>& out) {
  for (const auto& c : n.children) emit(*c, out);
  out.push_back(n.op);
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& variables,
         const std::map<std::string, double>& parameters)
      : text_(text), variables_(variables), parameters_(parameters) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError,
                what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Expression::OpCode::Add, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = make(Expression::OpCode::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Expression::OpCode::Mul, std::move(lhs), unary());
      } else if (accept('/')) {
        lhs = make(Expression::OpCode::Div, std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Expression::OpCode::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (!accept('^')) return base;
    NodePtr exponent = unary();
    if (!is_constant(*exponent)) fail("exponent must be constant");
    const double value = fold(*exponent);
    if (value != std::round(value) || std::abs(value) > 64) fail("exponent must be an integer");
    auto n = make(Expression::OpCode::Pow, std::move(base));
    n->op.index = static_cast<int>(value);
    return n;
  }

  static double fold(const Node& n) {
    using C = Expression::OpCode;
    auto arg = [&](std::size_t i) { return fold(*n.children[i]); };
    switch (n.op.code) {
      case C::Constant: return n.op.constant;
      case C::Neg: return -arg(0);
      case C::Add: return arg(0) + arg(1);
      case C::Sub: return arg(0) - arg(1);
      case C::Mul: return arg(0) * arg(1);
      case C::Div: return arg(0) / arg(1);
      case C::Pow: return std::pow(arg(0), n.op.index);
      case C::Sqrt: return std::sqrt(arg(0));
      case C::Exp: return std::exp(arg(0));
      case C::Sin: return std::sin(arg(0));
      case C::Cos: return std::cos(arg(0));
      case C::Variable: break;
    }
    return std::nan("");
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make(Expression::OpCode::Constant, v);
  }

  NodePtr name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string id = text_.substr(start, pos_ - start);
    static const std::map<std::string, Expression::OpCode> functions = {
        {"sqrt", Expression::OpCode::Sqrt},
        {"exp", Expression::OpCode::Exp},
        {"sin", Expression::OpCode::Sin},
        {"cos", Expression::OpCode::Cos}};
    if (auto f = functions.find(id); f != functions.end()) {
      expect('(');
      NodePtr arg = expr();
      expect(')');
      return make(f->second, std::move(arg));
    }
    if (auto v = std::find(variables_.begin(), variables_.end(), id); v != variables_.end()) {
      return make(Expression::OpCode::Variable, 0.0,
                  static_cast<int>(std::distance(variables_.begin(), v)));
    }
    if (auto p = parameters_.find(id); p != parameters_.end()) {
      return make(Expression::OpCode::Constant, p->second);
    }
    pos_ = start;
    fail("unknown name '" + id + "'");
  }

  const std::string& text_;
  const std::vector<std::string>& variables_;
  const std::map<std::string, double>& parameters_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text, const std::vector<std::string>& variables,
                             const std::map<std::string, double>& parameters) {
  Parser parser(text, variables, parameters);
  NodePtr root = parser.parse();
  Expression e;
  e.text_ = text;
  e.variable_count_ = variables.size();
  emit(*root, e.program_);
  return e;
}

bool Expression::depends_on(int variable) const {
  return std::any_of(program_.begin(), program_.end(), [variable](const Op& op) {
    return op.code == OpCode::Variable && op.index == variable;
  });
}

}  // namespace biharm
