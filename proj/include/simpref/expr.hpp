#pragma once

#include <array>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "simpref/error.hpp"
#include "simpref/jet.hpp"

namespace simpref {

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Tanh, Coth, Abs };

inline const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
    case Func::Coth: return "coth";
    case Func::Abs: return "abs";
  }
  return "?";
}

inline std::optional<Func> func_from_name(std::string_view s) {
  for (Func f : {Func::Sin, Func::Cos, Func::Tan, Func::Exp, Func::Log,
                 Func::Sqrt, Func::Sinh, Func::Cosh, Func::Tanh, Func::Coth,
                 Func::Abs})
    if (s == func_name(f)) return f;
  return std::nullopt;
}

/// Immutable expression tree in one free variable `t`. Copies share
/// structure; safe for concurrent use from any number of threads.
///
/// Grammar accepted by parse() and emitted by to_string():
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := unary ("^" number)?
///   unary  := "-" unary | atom
///   atom   := number | "pi" | "e" | "t" | ident "(" expr ")" | "(" expr ")"
/// Note that "^" binds a complete unary, so "-t^2" means (-t)^2.
class Expr {
 public:
  enum class Kind { Number, Pi, Euler, Var, Neg, Add, Sub, Mul, Div, Pow, Apply };

  struct Node;
  using Ptr = std::shared_ptr<const Node>;

  Expr() = default;

  bool valid() const { return node_ != nullptr; }
  const Node& node() const {
    assert(node_);
    return *node_;
  }

  /// Nonnegative literal; negative v canonicalizes to neg(number(-v))
  /// so printed trees always re-parse to themselves.
  static Expr number(double v);
  static Expr pi() { return make(Kind::Pi); }
  static Expr euler() { return make(Kind::Euler); }
  static Expr var() { return make(Kind::Var); }
  static Expr neg(Expr x) { return make1(Kind::Neg, std::move(x)); }
  static Expr add(Expr a, Expr b) { return make2(Kind::Add, std::move(a), std::move(b)); }
  static Expr sub(Expr a, Expr b) { return make2(Kind::Sub, std::move(a), std::move(b)); }
  static Expr mul(Expr a, Expr b) { return make2(Kind::Mul, std::move(a), std::move(b)); }
  static Expr div(Expr a, Expr b) { return make2(Kind::Div, std::move(a), std::move(b)); }
  /// Constant exponent only. A negative exponent lowers to
  /// 1/(base^|exponent|), again for printer round-trip.
  static Expr pow(Expr base, double exponent);
  static Expr apply(Func f, Expr arg);

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(Ptr p) : node_(std::move(p)) {}
  static Expr make(Kind k);
  static Expr make1(Kind k, Expr a);
  static Expr make2(Kind k, Expr a, Expr b);

  Ptr node_;
};

struct Expr::Node {
  Kind kind;
  double value = 0.0;  // Number payload, or Pow exponent
  Func fn = Func::Sin;
  Ptr lhs, rhs;
};

inline Expr Expr::make(Kind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return Expr(std::move(n));
}

inline Expr Expr::make1(Kind k, Expr a) {
  assert(a.valid());
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = a.node_;
  return Expr(std::move(n));
}

inline Expr Expr::make2(Kind k, Expr a, Expr b) {
  assert(a.valid() && b.valid());
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = a.node_;
  n->rhs = b.node_;
  return Expr(std::move(n));
}

inline Expr Expr::number(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("Expr::number: non-finite literal");
  if (v < 0.0) return neg(number(-v));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = v == 0.0 ? 0.0 : v;  // normalize -0.0
  return Expr(std::move(n));
}

inline Expr Expr::pow(Expr base, double exponent) {
  if (!std::isfinite(exponent)) throw std::invalid_argument("Expr::pow: non-finite exponent");
  if (exponent < 0.0) return div(number(1.0), pow(std::move(base), -exponent));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->value = exponent == 0.0 ? 0.0 : exponent;
  n->lhs = base.node_;
  assert(n->lhs);
  return Expr(std::move(n));
}

inline Expr Expr::apply(Func f, Expr arg) {
  assert(arg.valid());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Apply;
  n->fn = f;
  n->lhs = arg.node_;
  return Expr(std::move(n));
}

inline bool operator==(const Expr& a, const Expr& b) {
  struct Cmp {
    static bool eq(const Expr::Node* x, const Expr::Node* y) {
      if (x == y) return true;
      if (x == nullptr || y == nullptr) return false;
      if (x->kind != y->kind) return false;
      switch (x->kind) {
        case Expr::Kind::Number: return x->value == y->value;
        case Expr::Kind::Pow:
          return x->value == y->value && eq(x->lhs.get(), y->lhs.get());
        case Expr::Kind::Apply:
          return x->fn == y->fn && eq(x->lhs.get(), y->lhs.get());
        default:
          return eq(x->lhs.get(), y->lhs.get()) && eq(x->rhs.get(), y->rhs.get());
      }
    }
  };
  return Cmp::eq(a.node_ ? &a.node() : nullptr, b.node_ ? &b.node() : nullptr);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  Expr run() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError(ParseError::Kind::Syntax, pos_,
                       "syntax error at byte " + std::to_string(pos_) +
                           ": unexpected trailing input");
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
            src_[pos_] == '\r'))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::size_t at, const std::string& msg) {
    throw ParseError(ParseError::Kind::Syntax, at,
                     "syntax error at byte " + std::to_string(at) + ": " + msg);
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (consume('+'))
        e = Expr::add(std::move(e), parse_term());
      else if (consume('-'))
        e = Expr::sub(std::move(e), parse_term());
      else
        return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (consume('*'))
        e = Expr::mul(std::move(e), parse_factor());
      else if (consume('/'))
        e = Expr::div(std::move(e), parse_factor());
      else
        return e;
    }
  }

  Expr parse_factor() {
    Expr e = parse_unary();
    if (consume('^')) {
      skip_ws();
      const std::size_t at = pos_;
      if (pos_ >= src_.size() || !is_digit(src_[pos_]))
        fail(at, "expected number after '^'");
      return Expr::pow(std::move(e), parse_number());
    }
    return e;
  }

  Expr parse_unary() {
    if (consume('-')) return Expr::neg(parse_unary());
    return parse_atom();
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail(pos_, "unexpected end of input");
    const char c = src_[pos_];
    if (is_digit(c)) return Expr::number(parse_number());
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      if (!consume(')')) fail(pos_, "expected ')'");
      return e;
    }
    if (is_alpha(c)) return parse_ident();
    fail(pos_, std::string("unexpected character '") + c + "'");
  }

  Expr parse_ident() {
    const std::size_t at = pos_;
    while (pos_ < src_.size() && is_alpha(src_[pos_])) ++pos_;
    const std::string_view name = src_.substr(at, pos_ - at);
    if (name == "t") return Expr::var();
    if (name == "pi" || name == "e") {
      if (peek_is('('))
        throw ParseError(ParseError::Kind::Arity, pos_,
                         "arity error at byte " + std::to_string(pos_) + ": '" +
                             std::string(name) + "' is not a function");
      return name == "pi" ? Expr::pi() : Expr::euler();
    }
    if (auto f = func_from_name(name)) {
      if (!consume('('))
        throw ParseError(ParseError::Kind::Arity, pos_,
                         "arity error at byte " + std::to_string(pos_) + ": '" +
                             std::string(name) + "' requires one parenthesized argument");
      Expr arg = parse_expr();
      if (!consume(')')) fail(pos_, "expected ')'");
      return Expr::apply(*f, std::move(arg));
    }
    throw ParseError(ParseError::Kind::UnknownIdentifier, at,
                     "unknown identifier '" + std::string(name) + "' at byte " +
                         std::to_string(at));
  }

  // digits ('.' digits*)? ([eE] [+-]? digits)?  -- the exponent marker is
  // consumed only when digits follow it, so "2e" lexes as 2 then 'e'.
  double parse_number() {
    const std::size_t at = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && is_digit(src_[p])) {
        ++p;
        while (p < src_.size() && is_digit(src_[p])) ++p;
        pos_ = p;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + at, src_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != src_.data() + pos_)
      fail(at, "malformed number");
    return v;
  }
};

}  // namespace detail

inline Expr parse(std::string_view source) { return detail::ExprParser(source).run(); }

// ---------------------------------------------------------------------------
// Canonical printer: parse(to_string(e)) == e
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

// True when the node reparses as a complete `unary` with no parentheses.
inline bool prints_as_unary(const Expr::Node& n) {
  switch (n.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Pi:
    case Expr::Kind::Euler:
    case Expr::Kind::Var:
    case Expr::Kind::Apply:
    case Expr::Kind::Neg:
      return true;
    default:
      return false;
  }
}

inline void print_node(const Expr::Node& n, std::string& out);

inline void print_wrapped(const Expr::Node& n, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print_node(n, out);
  if (wrap) out += ')';
}

inline void print_node(const Expr::Node& n, std::string& out) {
  using K = Expr::Kind;
  switch (n.kind) {
    case K::Number:
      out += format_double(n.value);
      return;
    case K::Pi:
      out += "pi";
      return;
    case K::Euler:
      out += "e";
      return;
    case K::Var:
      out += "t";
      return;
    case K::Neg:
      out += '-';
      print_wrapped(*n.lhs, !prints_as_unary(*n.lhs), out);
      return;
    case K::Add:
    case K::Sub: {
      print_node(*n.lhs, out);  // left operand may be any expr (left assoc)
      out += n.kind == K::Add ? '+' : '-';
      const bool wrap = n.rhs->kind == K::Add || n.rhs->kind == K::Sub;
      print_wrapped(*n.rhs, wrap, out);
      return;
    }
    case K::Mul:
    case K::Div: {
      const bool wl = n.lhs->kind == K::Add || n.lhs->kind == K::Sub;
      print_wrapped(*n.lhs, wl, out);
      out += n.kind == K::Mul ? '*' : '/';
      const bool wr = !(prints_as_unary(*n.rhs) || n.rhs->kind == K::Pow);
      print_wrapped(*n.rhs, wr, out);
      return;
    }
    case K::Pow:
      print_wrapped(*n.lhs, !prints_as_unary(*n.lhs), out);
      out += '^';
      out += format_double(n.value);
      return;
    case K::Apply:
      out += func_name(n.fn);
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      return;
  }
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
  std::string out;
  detail::print_node(e.node(), out);
  return out;
}

// ---------------------------------------------------------------------------
// Jet evaluation
// ---------------------------------------------------------------------------

namespace detail {

inline Jet4 eval_node(const Expr::Node& n, double t, int order) {
  using K = Expr::Kind;
  switch (n.kind) {
    case K::Number: return jet_const(n.value, order);
    case K::Pi: return jet_const(std::numbers::pi, order);
    case K::Euler: return jet_const(std::numbers::e, order);
    case K::Var: return jet_var(t, order);
    case K::Neg: return jet_neg(eval_node(*n.lhs, t, order));
    case K::Add: return jet_add(eval_node(*n.lhs, t, order), eval_node(*n.rhs, t, order));
    case K::Sub: return jet_sub(eval_node(*n.lhs, t, order), eval_node(*n.rhs, t, order));
    case K::Mul: return jet_mul(eval_node(*n.lhs, t, order), eval_node(*n.rhs, t, order));
    case K::Div: return jet_div(eval_node(*n.lhs, t, order), eval_node(*n.rhs, t, order));
    case K::Pow: return jet_pow(eval_node(*n.lhs, t, order), n.value);
    case K::Apply: {
      const Jet4 u = eval_node(*n.lhs, t, order);
      switch (n.fn) {
        case Func::Sin: return jet_sin(u);
        case Func::Cos: return jet_cos(u);
        case Func::Tan: return jet_tan(u);
        case Func::Exp: return jet_exp(u);
        case Func::Log: return jet_log(u);
        case Func::Sqrt: return jet_sqrt(u);
        case Func::Sinh: return jet_sinh(u);
        case Func::Cosh: return jet_cosh(u);
        case Func::Tanh: return jet_tanh(u);
        case Func::Coth: return jet_coth(u);
        case Func::Abs: return jet_abs(u);
      }
      break;
    }
  }
  throw std::invalid_argument("eval_node: malformed expression tree");
}

}  // namespace detail

/// Value and derivatives 1..order of e at t. Entries above `order` are
/// not computed. Throws DomainError / NonSmoothError per the grammar
/// functions' domains; any non-finite result is reported as DomainError.
inline Jet4 eval_jet(const Expr& e, double t, int order) {
  if (order < 0 || order > 4)
    throw std::invalid_argument("eval_jet: order must be in 0..4");
  if (!e.valid()) throw std::invalid_argument("eval_jet: empty expression");
  Jet4 j = detail::eval_node(e.node(), t, order);
  for (int k = 0; k <= order; ++k)
    if (!std::isfinite(j.d[k]))
      throw DomainError("non-finite value in derivative " + std::to_string(k) +
                        " at t = " + detail::format_double(t));
  return j;
}

/// Convenience scalar evaluation.
inline double eval(const Expr& e, double t) { return eval_jet(e, t, 0).value(); }

/// Rebuilds e with every occurrence of the free variable replaced by
/// `replacement` (used e.g. to form g(t - c) from g).
inline Expr substitute_var(const Expr& e, const Expr& replacement) {
  struct Rec {
    static Expr go(const Expr::Node& n, const Expr& rep) {
      using K = Expr::Kind;
      switch (n.kind) {
        case K::Number: return Expr::number(n.value);
        case K::Pi: return Expr::pi();
        case K::Euler: return Expr::euler();
        case K::Var: return rep;
        case K::Neg: return Expr::neg(go(*n.lhs, rep));
        case K::Add: return Expr::add(go(*n.lhs, rep), go(*n.rhs, rep));
        case K::Sub: return Expr::sub(go(*n.lhs, rep), go(*n.rhs, rep));
        case K::Mul: return Expr::mul(go(*n.lhs, rep), go(*n.rhs, rep));
        case K::Div: return Expr::div(go(*n.lhs, rep), go(*n.rhs, rep));
        case K::Pow: return Expr::pow(go(*n.lhs, rep), n.value);
        case K::Apply: return Expr::apply(n.fn, go(*n.lhs, rep));
      }
      throw std::invalid_argument("substitute_var: malformed expression tree");
    }
  };
  return Rec::go(e.node(), replacement);
}

}  // namespace simpref
