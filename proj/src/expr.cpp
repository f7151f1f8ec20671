#include "contact/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace contact {

namespace {

struct Token {
  enum class Kind { Number, Ident, Op, End };
  Kind kind = Kind::End;
  double number = 0.0;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char ch = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      const char* begin = src_.c_str() + pos_;
      char* end = nullptr;
      tok_.number = std::strtod(begin, &end);
      if (end == begin) throw ParseError("malformed number", line_, col_);
      std::size_t len = static_cast<std::size_t>(end - begin);
      tok_.kind = Token::Kind::Number;
      tok_.text = src_.substr(pos_, len);
      pos_ += len;
      col_ += static_cast<int>(len);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Kind::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      col_ += static_cast<int>(pos_ - start);
      return;
    }
    if (std::string("+-*/^()").find(ch) != std::string::npos) {
      tok_.kind = Token::Kind::Op;
      tok_.text = std::string(1, ch);
      ++pos_;
      ++col_;
      return;
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", line_, col_);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

ExprPtr number_node(double v, int line, int col) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Number;
  e->number = v;
  e->line = line;
  e->col = col;
  return e;
}

ExprPtr fold_or_node(Expr::Kind kind, ExprPtr l, ExprPtr r, int line, int col) {
  if (l->kind == Expr::Kind::Number && r->kind == Expr::Kind::Number) {
    double v = 0.0;
    bool ok = true;
    switch (kind) {
      case Expr::Kind::Add: v = l->number + r->number; break;
      case Expr::Kind::Sub: v = l->number - r->number; break;
      case Expr::Kind::Mul: v = l->number * r->number; break;
      case Expr::Kind::Div: v = l->number / r->number; break;
      case Expr::Kind::Pow:
        try {
          v = pow_checked(l->number, r->number);
        } catch (const DomainError&) {
          ok = false;
        }
        break;
      default: ok = false; break;
    }
    if (ok && std::isfinite(v)) return number_node(v, line, col);
  }
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  e->line = line;
  e->col = col;
  return e;
}

class Parser {
 public:
  Parser(const std::string& src, const std::vector<std::string>& coords,
         const std::map<std::string, double>& constants)
      : lex_(src), coords_(coords), constants_(constants) {}

  ExprPtr run() {
    ExprPtr e = parse_add();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End)
      throw ParseError("unexpected trailing input '" + t.text + "'", t.line, t.col);
    return e;
  }

 private:
  static bool is_op(const Token& t, const char* s) {
    return t.kind == Token::Kind::Op && t.text == s;
  }

  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    while (is_op(lex_.peek(), "+") || is_op(lex_.peek(), "-")) {
      Token op = lex_.take();
      ExprPtr r = parse_mul();
      e = fold_or_node(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, std::move(e),
                       std::move(r), op.line, op.col);
    }
    return e;
  }

  ExprPtr parse_mul() {
    ExprPtr e = parse_unary();
    while (is_op(lex_.peek(), "*") || is_op(lex_.peek(), "/")) {
      Token op = lex_.take();
      ExprPtr r = parse_unary();
      e = fold_or_node(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, std::move(e),
                       std::move(r), op.line, op.col);
    }
    return e;
  }

  ExprPtr parse_unary() {
    if (is_op(lex_.peek(), "-")) {
      Token op = lex_.take();
      ExprPtr a = parse_unary();
      if (a->kind == Expr::Kind::Number) return number_node(-a->number, op.line, op.col);
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Neg;
      e->lhs = std::move(a);
      e->line = op.line;
      e->col = op.col;
      return e;
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (is_op(lex_.peek(), "^")) {
      Token op = lex_.take();
      ExprPtr exponent = parse_unary();  // right-associative, unary minus allowed
      return fold_or_node(Expr::Kind::Pow, std::move(base), std::move(exponent), op.line,
                          op.col);
    }
    return base;
  }

  ExprPtr parse_primary() {
    Token t = lex_.take();
    if (t.kind == Token::Kind::Number) return number_node(t.number, t.line, t.col);
    if (t.kind == Token::Kind::Ident) {
      if (is_op(lex_.peek(), "(")) {
        static const char* fns[] = {"exp", "log", "sin", "cos", "sqrt"};
        bool known = false;
        for (const char* f : fns) known = known || t.text == f;
        if (!known) throw ParseError("unknown function '" + t.text + "'", t.line, t.col);
        lex_.take();
        ExprPtr arg = parse_add();
        expect_close();
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Call;
        e->name = t.text;
        e->lhs = std::move(arg);
        e->line = t.line;
        e->col = t.col;
        return e;
      }
      for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] == t.text) {
          auto e = std::make_shared<Expr>();
          e->kind = Expr::Kind::Var;
          e->var = static_cast<int>(i);
          e->name = t.text;
          e->line = t.line;
          e->col = t.col;
          return e;
        }
      auto it = constants_.find(t.text);
      if (it != constants_.end()) return number_node(it->second, t.line, t.col);
      throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
    }
    if (is_op(t, "(")) {
      ExprPtr e = parse_add();
      expect_close();
      return e;
    }
    throw ParseError("expected a value, got '" + (t.kind == Token::Kind::End ? "end of input" : t.text) + "'",
                     t.line, t.col);
  }

  void expect_close() {
    const Token& t = lex_.peek();
    if (!is_op(t, ")"))
      throw ParseError("expected ')'", t.line, t.col);
    lex_.take();
  }

  Lexer lex_;
  const std::vector<std::string>& coords_;
  const std::map<std::string, double>& constants_;
};

int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrapped(const Expr& e, bool parens) {
  std::string s = print(e);
  return parens ? "(" + s + ")" : s;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExprPtr parse(const std::string& source, const std::vector<std::string>& coords,
              const std::map<std::string, double>& constants) {
  return Parser(source, coords, constants).run();
}

std::string print(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return format_number(e.number);
    case Expr::Kind::Var: return e.name;
    case Expr::Kind::Call: return e.name + "(" + print(*e.lhs) + ")";
    case Expr::Kind::Neg: return "-" + wrapped(*e.lhs, prec(*e.lhs) < 3);
    case Expr::Kind::Pow: {
      bool negative_literal =
          e.lhs->kind == Expr::Kind::Number && std::signbit(e.lhs->number);
      return wrapped(*e.lhs, prec(*e.lhs) <= 4 || negative_literal) + "^" +
             wrapped(*e.rhs, prec(*e.rhs) < 3);
    }
    default: {
      int p = prec(e);
      const char* op = e.kind == Expr::Kind::Add   ? "+"
                       : e.kind == Expr::Kind::Sub ? "-"
                       : e.kind == Expr::Kind::Mul ? "*"
                                                   : "/";
      return wrapped(*e.lhs, prec(*e.lhs) < p) + op + wrapped(*e.rhs, prec(*e.rhs) <= p);
    }
  }
}

}  // namespace contact
