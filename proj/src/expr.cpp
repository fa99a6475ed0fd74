#include "dop/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace dop::expr {

double Node::eval(double x, double y) const {
  using enum Op;
  switch (op) {
    case Const: return value;
    case X: return x;
    case Y: return y;
    case Neg: return -args[0].eval(x, y);
    case Add: return args[0].eval(x, y) + args[1].eval(x, y);
    case Sub: return args[0].eval(x, y) - args[1].eval(x, y);
    case Mul: return args[0].eval(x, y) * args[1].eval(x, y);
    case Div: return args[0].eval(x, y) / args[1].eval(x, y);
    case Pow: return std::pow(args[0].eval(x, y), args[1].eval(x, y));
    case Lt: return args[0].eval(x, y) < args[1].eval(x, y) ? 1.0 : 0.0;
    case Le: return args[0].eval(x, y) <= args[1].eval(x, y) ? 1.0 : 0.0;
    case Gt: return args[0].eval(x, y) > args[1].eval(x, y) ? 1.0 : 0.0;
    case Ge: return args[0].eval(x, y) >= args[1].eval(x, y) ? 1.0 : 0.0;
    case Eq: return args[0].eval(x, y) == args[1].eval(x, y) ? 1.0 : 0.0;
    case Ne: return args[0].eval(x, y) != args[1].eval(x, y) ? 1.0 : 0.0;
    case Abs: return std::abs(args[0].eval(x, y));
    case Sqrt: return std::sqrt(args[0].eval(x, y));
    case Exp: return std::exp(args[0].eval(x, y));
    case Sin: return std::sin(args[0].eval(x, y));
    case Cos: return std::cos(args[0].eval(x, y));
    case Min: {
      double v = args[0].eval(x, y);
      for (std::size_t t = 1; t < args.size(); ++t) v = std::min(v, args[t].eval(x, y));
      return v;
    }
    case Max: {
      double v = args[0].eval(x, y);
      for (std::size_t t = 1; t < args.size(); ++t) v = std::max(v, args[t].eval(x, y));
      return v;
    }
    case If:
      return args[0].eval(x, y) != 0.0 ? args[1].eval(x, y) : args[2].eval(x, y);
  }
  return 0.0;  // unreachable
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  Node run() {
    Node n = comparison();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExprParseError("expression error at offset " + std::to_string(pos_) +
                         ": " + what);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat2(const char* two) {
    skip_ws();
    if (pos_ + 1 < src_.size() && src_[pos_] == two[0] && src_[pos_ + 1] == two[1]) {
      pos_ += 2;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Node comparison() {
    Node lhs = additive();
    Node::Op op;
    if (eat2("<=")) op = Node::Op::Le;
    else if (eat2(">=")) op = Node::Op::Ge;
    else if (eat2("==")) op = Node::Op::Eq;
    else if (eat2("!=")) op = Node::Op::Ne;
    else if (eat('<')) op = Node::Op::Lt;
    else if (eat('>')) op = Node::Op::Gt;
    else return lhs;
    Node n;
    n.op = op;
    n.args.push_back(std::move(lhs));
    n.args.push_back(additive());
    return n;
  }

  Node additive() {
    Node lhs = term();
    for (;;) {
      Node::Op op;
      if (eat('+')) op = Node::Op::Add;
      else if (eat('-')) op = Node::Op::Sub;
      else return lhs;
      Node n;
      n.op = op;
      n.args.push_back(std::move(lhs));
      n.args.push_back(term());
      lhs = std::move(n);
    }
  }

  Node term() {
    Node lhs = unary();
    for (;;) {
      Node::Op op;
      if (eat('*')) op = Node::Op::Mul;
      else if (eat('/')) op = Node::Op::Div;
      else return lhs;
      Node n;
      n.op = op;
      n.args.push_back(std::move(lhs));
      n.args.push_back(unary());
      lhs = std::move(n);
    }
  }

  Node unary() {
    if (eat('-')) {
      Node n;
      n.op = Node::Op::Neg;
      n.args.push_back(unary());
      return n;
    }
    if (eat('+')) return unary();
    return power();
  }

  Node power() {
    Node base = primary();
    if (eat('^')) {
      Node n;
      n.op = Node::Op::Pow;
      n.args.push_back(std::move(base));
      n.args.push_back(unary());  // right-associative
      return n;
    }
    return base;
  }

  Node primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Node n = comparison();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  Node number() {
    const char* begin = src_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    Node n;
    n.op = Node::Op::Const;
    n.value = v;
    return n;
  }

  Node identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name = src_.substr(start, pos_ - start);
    if (name == "x") return Node{Node::Op::X};
    if (name == "y") return Node{Node::Op::Y};
    if (name == "pi") return Node{Node::Op::Const, 3.14159265358979323846};

    Node n;
    std::size_t min_args = 1, max_args = 1;
    if (name == "abs") n.op = Node::Op::Abs;
    else if (name == "sqrt") n.op = Node::Op::Sqrt;
    else if (name == "exp") n.op = Node::Op::Exp;
    else if (name == "sin") n.op = Node::Op::Sin;
    else if (name == "cos") n.op = Node::Op::Cos;
    else if (name == "min") { n.op = Node::Op::Min; min_args = 2; max_args = 64; }
    else if (name == "max") { n.op = Node::Op::Max; min_args = 2; max_args = 64; }
    else if (name == "if") { n.op = Node::Op::If; min_args = 3; max_args = 3; }
    else fail("unknown identifier '" + name + "'");

    if (!eat('(')) fail("expected '(' after '" + name + "'");
    n.args.push_back(comparison());
    while (eat(',')) n.args.push_back(comparison());
    if (!eat(')')) fail("expected ')'");
    if (n.args.size() < min_args || n.args.size() > max_args) {
      fail("wrong number of arguments to '" + name + "'");
    }
    return n;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

}  // namespace

Node parse(const std::string& source) { return Parser(source).run(); }

}  // namespace dop::expr
