#pragma once

// Tiny arithmetic expression language over the variables x and y:
//   literals, + - * / ^ (right-assoc power), unary minus,
//   abs, sqrt, exp, sin, cos, min(...), max(...) with 2+ arguments,
//   comparisons (< <= > >= == !=) yielding 0/1, and if(cond, a, b).
// Piecewise-by-region data is written as nested if() clauses.

#include <memory>
#include <string>
#include <vector>

#include "dop/errors.hpp"

namespace dop::expr {

struct Node {
  enum class Op {
    Const, X, Y, Neg,
    Add, Sub, Mul, Div, Pow,
    Lt, Le, Gt, Ge, Eq, Ne,
    Abs, Sqrt, Exp, Sin, Cos,
    Min, Max, If,
  };

  Op op = Op::Const;
  double value = 0.0;
  std::vector<Node> args;

  double eval(double x, double y) const;
};

// Throws ExprParseError with position information on malformed input.
Node parse(const std::string& source);

}  // namespace dop::expr
