// Closed-form expressions over chart coordinates.
//
// Grammar (whitespace-insensitive):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?          -- exponent must fold to an integer
//   primary := number | name | func '(' expr ')' | '(' expr ')'
//   func    := sqrt | exp | sin | cos
//
// Names resolve first to variables (bound at evaluation, by position) and
// then to named parameters (folded to constants at parse time). Parsed
// expressions evaluate on doubles or on jets.
#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "biharm/error.hpp"
#include "biharm/jet.hpp"

namespace biharm {

inline double powi(double a, int n) { return std::pow(a, n); }
inline double recip(double a) {
  if (a == 0.0) throw Error(ErrorKind::DivisionByZeroAtPoint, "division by zero");
  return 1.0 / a;
}

class Expression {
 public:
  enum class OpCode { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow, Sqrt, Exp, Sin, Cos };

  struct Op {
    OpCode code;
    double constant = 0.0;
    int index = 0;  // variable slot or integer exponent
  };

  /// Throws ParseError on malformed input, unknown names or non-integer exponents.
  static Expression parse(const std::string& text, const std::vector<std::string>& variables,
                          const std::map<std::string, double>& parameters = {});

  const std::string& text() const { return text_; }
  std::size_t variable_count() const { return variable_count_; }
  bool depends_on(int variable) const;

  template <class T>
  T evaluate(std::span<const T> vars) const;

  double operator()(std::span<const double> vars) const { return evaluate<double>(vars); }

 private:
  std::string text_;
  std::size_t variable_count_ = 0;
  std::vector<Op> program_;  // reverse Polish
};

template <class T>
T Expression::evaluate(std::span<const T> vars) const {
  using std::cos;
  using std::exp;
  using std::sin;
  using std::sqrt;
  if (vars.size() != variable_count_) {
    throw Error(ErrorKind::ParseError, "expression '" + text_ + "' expects " +
                                           std::to_string(variable_count_) + " variables");
  }
  // Constants adopt the order of the first variable so jets stay consistent.
  auto lift = [&](double c) {
    if constexpr (std::is_same_v<T, double>) {
      return c;
    } else {
      return T(c, vars.empty() ? kDefaultJetOrder : vars[0].order());
    }
  };
  std::vector<T> stack;
  stack.reserve(program_.size());
  auto pop = [&stack] {
    T v = stack.back();
    stack.pop_back();
    return v;
  };
  for (const Op& op : program_) {
    switch (op.code) {
      case OpCode::Constant: stack.push_back(lift(op.constant)); break;
      case OpCode::Variable: stack.push_back(vars[static_cast<std::size_t>(op.index)]); break;
      case OpCode::Neg: stack.back() = -stack.back(); break;
      case OpCode::Sqrt: {
        if constexpr (std::is_same_v<T, double>) {
          if (!(stack.back() > 0.0) && stack.back() != 0.0)
            throw Error(ErrorKind::DomainError, "sqrt of negative value");
        }
        stack.back() = sqrt(stack.back());
        break;
      }
      case OpCode::Exp: stack.back() = exp(stack.back()); break;
      case OpCode::Sin: stack.back() = sin(stack.back()); break;
      case OpCode::Cos: stack.back() = cos(stack.back()); break;
      case OpCode::Pow: stack.back() = powi(stack.back(), op.index); break;
      case OpCode::Add: {
        T b = pop();
        stack.back() = stack.back() + b;
        break;
      }
      case OpCode::Sub: {
        T b = pop();
        stack.back() = stack.back() - b;
        break;
      }
      case OpCode::Mul: {
        T b = pop();
        stack.back() = stack.back() * b;
        break;
      }
      case OpCode::Div: {
        T b = pop();
        stack.back() = stack.back() * recip(b);
        break;
      }
    }
  }
  return stack.back();
}

}  // namespace biharm
