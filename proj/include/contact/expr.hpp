#pragma once

// Small expression language for scalar fields over named coordinates.
// Grammar (highest precedence first): ^ (right-assoc), unary -, * /, + -.
// Functions: exp, log, sin, cos, sqrt. Named constants are substituted at
// parse time; every remaining identifier must be a declared coordinate.

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "contact/dual.hpp"
#include "contact/scalar_field.hpp"

namespace contact {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Call };

  Kind kind;
  double number = 0.0;       // Number
  int var = -1;              // Var: index into the coordinate list
  std::string name;          // Var / Call
  ExprPtr lhs, rhs;          // binary nodes; Neg and Call use lhs only
  int line = 0, col = 0;
};

// Parses source over the given coordinates; throws ParseError with position.
ExprPtr parse(const std::string& source, const std::vector<std::string>& coords,
              const std::map<std::string, double>& constants = {});

// Minimal-parentheses rendering; parse(print(e)) reproduces print(e).
std::string print(const Expr& e);

template <class T>
T evaluate(const Expr& e, std::span<const T> values) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return T(e.number);
    case Expr::Kind::Var:
      if (e.var < 0 || static_cast<std::size_t>(e.var) >= values.size())
        throw EvalError("unbound variable '" + e.name + "'");
      return values[static_cast<std::size_t>(e.var)];
    case Expr::Kind::Add:
      return evaluate(*e.lhs, values) + evaluate(*e.rhs, values);
    case Expr::Kind::Sub:
      return evaluate(*e.lhs, values) - evaluate(*e.rhs, values);
    case Expr::Kind::Mul:
      return evaluate(*e.lhs, values) * evaluate(*e.rhs, values);
    case Expr::Kind::Div:
      return evaluate(*e.lhs, values) / evaluate(*e.rhs, values);
    case Expr::Kind::Neg:
      return -evaluate(*e.lhs, values);
    case Expr::Kind::Pow: {
      using contact::pow;
      using std::pow;
      try {
        if constexpr (std::is_same_v<T, double>)
          return pow_checked(evaluate(*e.lhs, values), evaluate(*e.rhs, values));
        else
          return pow(evaluate(*e.lhs, values), evaluate(*e.rhs, values));
      } catch (const DomainError& err) {
        throw DomainError(std::string(err.what()) + " in '^' at line " +
                          std::to_string(e.line) + ", column " + std::to_string(e.col));
      }
    }
    case Expr::Kind::Call: {
      T a = evaluate(*e.lhs, values);
      using contact::cos;
      using contact::exp;
      using contact::log;
      using contact::sin;
      using contact::sqrt;
      using std::cos;
      using std::exp;
      using std::log;
      using std::sin;
      using std::sqrt;
      try {
        if (e.name == "exp") return exp(a);
        if (e.name == "log") {
          if constexpr (std::is_same_v<T, double>)
            if (a <= 0.0) throw DomainError("log of non-positive argument " + std::to_string(a));
          return log(a);
        }
        if (e.name == "sin") return sin(a);
        if (e.name == "cos") return cos(a);
        if (e.name == "sqrt") {
          if constexpr (std::is_same_v<T, double>)
            if (a < 0.0) throw DomainError("sqrt of negative argument " + std::to_string(a));
          return sqrt(a);
        }
      } catch (const DomainError& err) {
        throw DomainError(std::string(err.what()) + " in '" + e.name + "' at line " +
                          std::to_string(e.line) + ", column " + std::to_string(e.col));
      }
      throw EvalError("unknown function '" + e.name + "'");
    }
  }
  throw EvalError("corrupt expression node");
}

class ExprField final : public ScalarField {
 public:
  ExprField(ExprPtr e, std::vector<std::string> coords)
      : ScalarField(std::move(coords)), e_(std::move(e)) {}

  double eval(std::span<const double> x) const override { return evaluate(*e_, x); }
  Dual eval(std::span<const Dual> x) const override { return evaluate(*e_, x); }
  Dual2 eval(std::span<const Dual2> x) const override { return evaluate(*e_, x); }

  const Expr& expr() const { return *e_; }

 private:
  ExprPtr e_;
};

inline FieldPtr parse_field(const std::string& source, std::vector<std::string> coords,
                            const std::map<std::string, double>& constants = {}) {
  ExprPtr e = parse(source, coords, constants);
  return std::make_shared<ExprField>(std::move(e), std::move(coords));
}

}  // namespace contact
