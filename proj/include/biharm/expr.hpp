#pragma once

/**
 * @file expr.hpp
 * @brief A small arithmetic expression language parsed into jet-evaluable
 *        fields.
 *
 *   expr    := term (('+' | '-') term)*
 *   term    := unary (('*' | '/') unary)*
 *   unary   := ('-' | '+') unary | power
 *   power   := primary ('^' unary)?          right associative
 *   primary := number | name | name '(' expr ')' | '(' expr ')'
 *
 * Names: x1..xn, r = |x|, theta, pi, e. In R^2 theta is atan2(x2, x1); in
 * higher dimensions it is the polar angle measured from the x_n axis.
 * Functions: exp, log (ln), sqrt, sin, cos, tan, cot, sinh, cosh, tanh,
 * coth, asin, acos, atan (arctan), atanh.
 */

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "biharm/field.hpp"
#include "biharm/jets.hpp"

namespace biharm {

/// Malformed expression text; carries the offending column.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t column)
      : DomainError(what + " at column " + std::to_string(column + 1)), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

namespace expr {

enum class Op {
  kConst, kVar, kRadius, kTheta,
  kAdd, kSub, kMul, kDiv, kNeg, kPowInt, kPowReal, kPow,
  kExp, kLog, kSqrt, kSin, kCos, kTan, kCot, kSinh, kCosh, kTanh, kCoth, kAsin, kAcos, kAtan, kAtanh,
};

struct Node {
  Op op = Op::kConst;
  double value = 0;  // constant, or the exponent of kPowInt / kPowReal
  int index = 0;     // variable index
  std::shared_ptr<const Node> lhs, rhs;
};

using NodePtr = std::shared_ptr<const Node>;

template <class T>
T polar_angle(std::span<const T> x) {
  const std::size_t n = x.size();
  if (n == 2) return atan2(x[1], x[0]);
  T rho2(0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) rho2 = rho2 + x[i] * x[i];
  return atan2(sqrt(rho2), x[n - 1]);
}

template <class T>
T eval(const Node& n, std::span<const T> x) {
  switch (n.op) {
    case Op::kConst: return T(n.value);
    case Op::kVar: return x[static_cast<std::size_t>(n.index)];
    case Op::kRadius: return norm(x);
    case Op::kTheta: return polar_angle(x);
    case Op::kAdd: return eval(*n.lhs, x) + eval(*n.rhs, x);
    case Op::kSub: return eval(*n.lhs, x) - eval(*n.rhs, x);
    case Op::kMul: return eval(*n.lhs, x) * eval(*n.rhs, x);
    case Op::kDiv: return eval(*n.lhs, x) / eval(*n.rhs, x);
    case Op::kNeg: return -eval(*n.lhs, x);
    case Op::kPowInt: return ipow(eval(*n.lhs, x), static_cast<int>(n.value));
    case Op::kPowReal: return pow(eval(*n.lhs, x), n.value);
    case Op::kPow: return exp(eval(*n.rhs, x) * log(eval(*n.lhs, x)));
    case Op::kExp: return exp(eval(*n.lhs, x));
    case Op::kLog: return log(eval(*n.lhs, x));
    case Op::kSqrt: return sqrt(eval(*n.lhs, x));
    case Op::kSin: return sin(eval(*n.lhs, x));
    case Op::kCos: return cos(eval(*n.lhs, x));
    case Op::kTan: return tan(eval(*n.lhs, x));
    case Op::kCot: return cot(eval(*n.lhs, x));
    case Op::kSinh: return sinh(eval(*n.lhs, x));
    case Op::kCosh: return cosh(eval(*n.lhs, x));
    case Op::kTanh: return tanh(eval(*n.lhs, x));
    case Op::kCoth: return coth(eval(*n.lhs, x));
    case Op::kAsin: return asin(eval(*n.lhs, x));
    case Op::kAcos: return acos(eval(*n.lhs, x));
    case Op::kAtan: return atan(eval(*n.lhs, x));
    case Op::kAtanh: return atanh(eval(*n.lhs, x));
  }
  throw Error("corrupt expression node");
}

inline bool lookup_function(const std::string& name, Op& op) {
  static const std::pair<const char*, Op> table[] = {
      {"exp", Op::kExp},   {"log", Op::kLog},     {"ln", Op::kLog},     {"sqrt", Op::kSqrt},  {"sin", Op::kSin},
      {"cos", Op::kCos},   {"tan", Op::kTan},     {"cot", Op::kCot},    {"sinh", Op::kSinh},  {"cosh", Op::kCosh},
      {"tanh", Op::kTanh}, {"coth", Op::kCoth},   {"asin", Op::kAsin},  {"arcsin", Op::kAsin}, {"acos", Op::kAcos},
      {"arccos", Op::kAcos}, {"atan", Op::kAtan}, {"arctan", Op::kAtan}, {"atanh", Op::kAtanh}};
  for (const auto& [n, o] : table)
    if (name == n) {
      op = o;
      return true;
    }
  return false;
}

/// Symbol resolution: either Cartesian (x1..xn, r, theta) or a single named
/// variable for univariate expressions.
struct Symbols {
  int dimension = 0;         // Cartesian mode when > 0
  std::string univariate;    // otherwise, the one variable name
};

class Parser {
 public:
  Parser(std::string text, Symbols symbols) : s_(std::move(text)), sym_(std::move(symbols)) {}

  NodePtr parse() {
    NodePtr n = expression();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return n;
  }

  int max_index() const { return max_index_; }

 private:
  static NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0, int index = 0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    n->value = value;
    n->index = index;
    return n;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  NodePtr expression() {
    NodePtr n = term();
    for (;;) {
      if (accept('+')) n = make(Op::kAdd, n, term());
      else if (accept('-')) n = make(Op::kSub, n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*')) n = make(Op::kMul, n, unary());
      else if (accept('/')) n = make(Op::kDiv, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Op::kNeg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (!accept('^')) return base;
    NodePtr ex = unary();
    if (const auto c = constant_value(*ex)) {
      const double v = *c;
      if (v == std::round(v) && std::abs(v) <= 64) return make(Op::kPowInt, base, nullptr, v);
      return make(Op::kPowReal, base, nullptr, v);
    }
    return make(Op::kPow, base, ex);
  }

  static std::optional<double> constant_value(const Node& n) {
    if (n.op == Op::kConst) return n.value;
    if (n.op == Op::kNeg && n.lhs->op == Op::kConst) return -n.lhs->value;
    return std::nullopt;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expression();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    // from_chars: no locale dependence, unlike strtod.
    double v = 0;
    const char* begin = s_.data() + pos_;
    const auto [end, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
    if (ec != std::errc() || end == begin) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    return make(Op::kConst, nullptr, nullptr, v);
  }

  NodePtr name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string id = s_.substr(start, pos_ - start);
    Op fn;
    if (lookup_function(id, fn)) {
      expect('(');
      NodePtr arg = expression();
      expect(')');
      return make(fn, arg);
    }
    if (id == "pi") return make(Op::kConst, nullptr, nullptr, std::numbers::pi);
    if (id == "e") return make(Op::kConst, nullptr, nullptr, std::numbers::e);
    if (sym_.dimension == 0) {
      if (id == sym_.univariate) return make(Op::kVar, nullptr, nullptr, 0, 0);
      throw ParseError("unknown name '" + id + "' (the variable is '" + sym_.univariate + "')", start);
    }
    if (id == "r") return make(Op::kRadius);
    if (id == "theta") {
      if (sym_.dimension < 2) throw ParseError("theta needs at least two coordinates", start);
      return make(Op::kTheta);
    }
    if (id.size() >= 2 && id[0] == 'x' && std::all_of(id.begin() + 1, id.end(), [](char d) {
          return std::isdigit(static_cast<unsigned char>(d));
        })) {
      const int i = std::atoi(id.c_str() + 1);
      if (i < 1 || i > sym_.dimension)
        throw ParseError("coordinate '" + id + "' outside x1..x" + std::to_string(sym_.dimension), start);
      max_index_ = std::max(max_index_, i);
      return make(Op::kVar, nullptr, nullptr, 0, i - 1);
    }
    throw ParseError("unknown name '" + id + "'", start);
  }

  std::string s_;
  Symbols sym_;
  std::size_t pos_ = 0;
  int max_index_ = 0;
};

}  // namespace expr

/// Parses a field on R^n.
inline ScalarField parse_field(const std::string& text, int n) {
  if (n < 1) throw DomainError("field dimension must be >= 1");
  expr::Parser p(text, {n, {}});
  expr::NodePtr root = p.parse();
  return ScalarField(n, [root](auto x) { return expr::eval(*root, x); });
}

/// Parses a function of the single variable `var` (e.g. a warp function of r).
inline UnivariateFn parse_univariate(const std::string& text, const std::string& var = "r") {
  expr::Parser p(text, {0, var});
  expr::NodePtr root = p.parse();
  return UnivariateFn([root](auto t) {
    using T = decltype(t);
    return expr::eval(*root, std::span<const T>(&t, 1));
  });
}

}  // namespace biharm
