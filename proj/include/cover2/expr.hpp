#pragma once

// Integer/boolean/group expressions over scenario variables, parsed once into an AST and
// evaluated with exact big-integer arithmetic.

#include <cctype>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "numtheory.hpp"

namespace cover2 {

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Value {
  enum class Kind { Int, Bool, Group };
  Kind kind = Kind::Int;
  BigInt i;
  bool b = false;
  GroupId g;
  bool exact = true;  // false once an overgroup order entered the computation

  static Value of(BigInt v, bool exact = true) {
    Value r;
    r.i = std::move(v);
    r.exact = exact;
    return r;
  }
  static Value of_bool(bool v, bool exact = true) {
    Value r;
    r.kind = Kind::Bool;
    r.b = v;
    r.exact = exact;
    return r;
  }
  static Value of_group(const GroupId& g) {
    Value r;
    r.kind = Kind::Group;
    r.g = g;
    return r;
  }

  const BigInt& integer() const {
    if (kind != Kind::Int) throw ExprError("expected an integer");
    return i;
  }
  bool boolean() const {
    if (kind != Kind::Bool) throw ExprError("expected a boolean");
    return b;
  }
  const GroupId& group() const {
    if (kind != Kind::Group) throw ExprError("expected a group");
    return g;
  }
  std::string str() const {
    switch (kind) {
      case Kind::Int: return to_string(i);
      case Kind::Bool: return b ? "true" : "false";
      case Kind::Group: return g.str();
    }
    return "?";
  }
};

struct Expr {
  enum class Op { Num, Var, Call, Neg, Not, Add, Sub, Mul, Div, Mod, Pow, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
  Op op = Op::Num;
  BigInt num;
  std::string name;  // Var / Call
  std::vector<std::shared_ptr<const Expr>> args;
};
using ExprPtr = std::shared_ptr<const Expr>;

namespace detail {

struct Token {
  enum class Kind { Num, Ident, Sym, End } kind;
  std::string text;
};

inline std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::Num, s.substr(i, j - i)});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, s.substr(i, j - i)});
      i = j;
    } else {
      static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||", ".."};
      std::string sym(1, c);
      for (const char* t : two)
        if (s.compare(i, 2, t) == 0) sym = t;
      if (sym.size() == 1 && std::string("+-*/%^()<>!,").find(c) == std::string::npos)
        throw ExprError("unexpected character '" + sym + "' in \"" + s + "\"");
      out.push_back({Token::Kind::Sym, sym});
      i += sym.size();
    }
  }
  out.push_back({Token::Kind::End, ""});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src), toks_(tokenize(src)) {}

  ExprPtr parse_all() {
    auto e = parse_or();
    if (peek().kind != Token::Kind::End) fail("trailing input at '" + peek().text + "'");
    return e;
  }

 private:
  std::string src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  bool accept(const std::string& sym) {
    if (peek().kind == Token::Kind::Sym && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& sym) {
    if (!accept(sym)) fail("expected '" + sym + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ExprError(msg + " in \"" + src_ + "\""); }

  static ExprPtr node(Expr::Op op, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->args = std::move(args);
    return e;
  }

  ExprPtr parse_or() {
    auto l = parse_and();
    while (accept("||")) l = node(Expr::Op::Or, {l, parse_and()});
    return l;
  }
  ExprPtr parse_and() {
    auto l = parse_not();
    while (accept("&&")) l = node(Expr::Op::And, {l, parse_not()});
    return l;
  }
  ExprPtr parse_not() {
    if (accept("!")) return node(Expr::Op::Not, {parse_not()});
    return parse_cmp();
  }
  ExprPtr parse_cmp() {
    auto l = parse_add();
    static const std::pair<const char*, Expr::Op> ops[] = {{"==", Expr::Op::Eq}, {"!=", Expr::Op::Ne},
                                                           {"<=", Expr::Op::Le}, {">=", Expr::Op::Ge},
                                                           {"<", Expr::Op::Lt},  {">", Expr::Op::Gt}};
    for (const auto& [s, op] : ops)
      if (accept(s)) return node(op, {l, parse_add()});
    return l;
  }
  ExprPtr parse_add() {
    auto l = parse_mul();
    for (;;) {
      if (accept("+")) l = node(Expr::Op::Add, {l, parse_mul()});
      else if (accept("-")) l = node(Expr::Op::Sub, {l, parse_mul()});
      else return l;
    }
  }
  ExprPtr parse_mul() {
    auto l = parse_unary();
    for (;;) {
      if (accept("*")) l = node(Expr::Op::Mul, {l, parse_unary()});
      else if (accept("/")) l = node(Expr::Op::Div, {l, parse_unary()});
      else if (accept("%")) l = node(Expr::Op::Mod, {l, parse_unary()});
      else return l;
    }
  }
  ExprPtr parse_unary() {
    if (accept("-")) return node(Expr::Op::Neg, {parse_unary()});
    return parse_pow();
  }
  ExprPtr parse_pow() {
    auto base = parse_primary();
    if (accept("^")) return node(Expr::Op::Pow, {base, parse_unary()});
    return base;
  }
  ExprPtr parse_primary() {
    const Token t = peek();
    if (t.kind == Token::Kind::Num) {
      ++pos_;
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::Num;
      e->num = BigInt(t.text);
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      ++pos_;
      auto e = std::make_shared<Expr>();
      e->name = t.text;
      if (accept("(")) {
        e->op = Expr::Op::Call;
        if (!accept(")")) {
          do e->args.push_back(parse_or());
          while (accept(","));
          expect(")");
        }
      } else {
        e->op = Expr::Op::Var;
      }
      return e;
    }
    if (accept("(")) {
      auto e = parse_or();
      expect(")");
      return e;
    }
    fail(t.kind == Token::Kind::End ? "unexpected end of expression" : "unexpected token '" + t.text + "'");
  }
};

}  // namespace detail

inline ExprPtr parse_expr(const std::string& src) { return detail::Parser(src).parse_all(); }

/// Variable bindings: fixed integers plus lazily evaluated, memoized definitions.
class Env {
 public:
  void set(const std::string& name, BigInt v) { values_[name] = Value::of(std::move(v)); }
  void set_value(const std::string& name, Value v) { values_[name] = std::move(v); }
  void define(const std::string& name, ExprPtr e) { lazy_[name] = std::move(e); }
  void unset(const std::string& name) {
    values_.erase(name);
    lazy_.erase(name);
  }
  /// Values of evaluated variables, for reports.
  const std::map<std::string, Value>& values() const { return values_; }

  Value lookup(const std::string& name);
  std::optional<unsigned> t_override;

 private:
  std::map<std::string, Value> values_;
  std::map<std::string, ExprPtr> lazy_;
  std::vector<std::string> evaluating_;
};

inline Value eval(const ExprPtr& e, Env& env);

namespace detail {

inline unsigned small(const Value& v, const char* what) {
  const BigInt& x = v.integer();
  if (x < 0 || x > 100000) throw ExprError(std::string(what) + " out of range: " + to_string(x));
  return static_cast<unsigned>(x);
}

inline std::uint64_t field_size(const Value& v) {
  const BigInt& x = v.integer();
  if (x < 2 || x > BigInt(std::numeric_limits<std::uint32_t>::max())) throw ExprError("field size out of range");
  return static_cast<std::uint64_t>(x);
}

inline Value call(const Expr& e, Env& env) {
  const std::string& f = e.name;
  auto arg = [&](std::size_t i) { return eval(e.args[i], env); };
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (e.args.size() < lo || e.args.size() > hi)
      throw ExprError(f + ": wrong number of arguments");
  };

  if (auto fam = parse_family(f)) {
    arity(2, 2);
    try {
      return Value::of_group(GroupId::make(*fam, small(arg(0), "rank"), field_size(arg(1))));
    } catch (const std::invalid_argument& ex) {
      throw ExprError(ex.what());
    }
  }
  if (f == "gcd" || f == "lcm" || f == "min" || f == "max") {
    if (e.args.empty()) throw ExprError(f + ": needs arguments");
    Value acc = arg(0);
    acc.integer();
    for (std::size_t i = 1; i < e.args.size(); ++i) {
      Value v = arg(i);
      const BigInt& x = v.integer();
      if (f == "gcd") acc.i = gcd(acc.i, x);
      else if (f == "lcm") acc.i = lcm(acc.i, x);
      else if (f == "min") acc.i = x < acc.i ? x : acc.i;
      else acc.i = x > acc.i ? x : acc.i;
      acc.exact = acc.exact && v.exact;
    }
    return acc;
  }
  if (f == "floordiv") {
    arity(2, 2);
    const Value a = arg(0), b = arg(1);
    if (b.integer() <= 0) throw ExprError("floordiv: divisor must be positive");
    BigInt r = a.integer() / b.i;
    if (a.i < 0 && r * b.i != a.i) --r;
    return Value::of(r, a.exact && b.exact);
  }
  if (f == "zsig") {
    arity(2, 2);
    return Value::of(zsigmondy_radical(field_size(arg(0)), small(arg(1), "zsig exponent")));
  }
  if (f == "isprime") {
    arity(1, 1);
    const BigInt& x = arg(0).integer();
    return Value::of_bool(x > 1 && is_prime(x));
  }
  if (f == "isprimepower") {
    arity(1, 1);
    const BigInt x = arg(0).integer();
    return Value::of_bool(x > 1 && factor(x).size() == 1);
  }
  if (f == "issquare") {
    arity(1, 1);
    const BigInt x = arg(0).integer();
    if (x < 0) return Value::of_bool(false);
    const BigInt r = boost::multiprecision::sqrt(x);
    return Value::of_bool(r * r == x);
  }
  if (f == "order") {
    arity(1, 1);
    return Value::of(group_order(arg(0).group()));
  }
  if (f == "singer") {
    arity(1, 1);
    try {
      return Value::of(singer_order(arg(0).group()).derived);
    } catch (const std::exception& ex) {
      throw ExprError(ex.what());
    }
  }
  if (f == "bertrand") {
    arity(1, 1);
    try {
      return Value::of(bertrand_order(arg(0).group(), env.t_override).order);
    } catch (const std::exception& ex) {
      throw ExprError(ex.what());
    }
  }
  if (f == "sub") {
    if (e.args.size() < 2) throw ExprError("sub: needs a kind and a parent group");
    if (e.args[0]->op != Expr::Op::Var) throw ExprError("sub: first argument must be a subgroup kind");
    auto kind = parse_subgroup_kind(e.args[0]->name);
    if (!kind) throw ExprError("sub: unknown subgroup kind " + e.args[0]->name);
    SubgroupDescriptor d;
    d.kind = *kind;
    d.parent = arg(1).group();
    for (std::size_t i = 2; i < e.args.size(); ++i) {
      const BigInt& x = arg(i).integer();
      if (x > 1000000 || x < -1000000) throw ExprError("sub: parameter out of range");
      d.params.push_back(static_cast<long long>(x));
    }
    try {
      auto o = subgroup_order(d);
      return Value::of(o.value, o.exact);
    } catch (const std::invalid_argument& ex) {
      throw ExprError(ex.what());
    }
  }
  throw ExprError("unknown function " + f);
}

}  // namespace detail

inline Value Env::lookup(const std::string& name) {
  if (auto it = values_.find(name); it != values_.end()) return it->second;
  auto it = lazy_.find(name);
  if (it == lazy_.end()) throw ExprError("unbound variable " + name);
  for (const auto& s : evaluating_)
    if (s == name) throw ExprError("cyclic definition of " + name);
  evaluating_.push_back(name);
  Value v;
  try {
    v = eval(it->second, *this);
  } catch (...) {
    evaluating_.pop_back();
    throw;
  }
  evaluating_.pop_back();
  values_[name] = v;
  return v;
}

inline Value eval(const ExprPtr& ep, Env& env) {
  const Expr& e = *ep;
  using Op = Expr::Op;
  switch (e.op) {
    case Op::Num: return Value::of(e.num);
    case Op::Var: return env.lookup(e.name);
    case Op::Call: return detail::call(e, env);
    case Op::Neg: {
      Value v = eval(e.args[0], env);
      v.i = -v.integer();
      return v;
    }
    case Op::Not: {
      Value v = eval(e.args[0], env);
      v.b = !v.boolean();
      return v;
    }
    case Op::And: case Op::Or: {
      Value l = eval(e.args[0], env);
      const bool lb = l.boolean();
      if (e.op == Op::And && !lb) return l;
      if (e.op == Op::Or && lb) return l;
      Value r = eval(e.args[1], env);
      r.boolean();
      r.exact = r.exact && l.exact;
      return r;
    }
    default: break;
  }
  const Value l = eval(e.args[0], env), r = eval(e.args[1], env);
  const BigInt &a = l.integer(), &b = r.integer();
  const bool exact = l.exact && r.exact;
  switch (e.op) {
    case Op::Add: return Value::of(a + b, exact);
    case Op::Sub: return Value::of(a - b, exact);
    case Op::Mul: return Value::of(a * b, exact);
    case Op::Div:
      if (b == 0) throw ExprError("division by zero");
      if (a % b != 0) throw ExprError("non-integral quotient " + to_string(a) + " / " + to_string(b));
      return Value::of(a / b, exact);
    case Op::Mod:
      if (b <= 0) throw ExprError("modulus must be positive");
      return Value::of(((a % b) + b) % b, exact);
    case Op::Pow:
      return Value::of(ipow(a, detail::small(r, "exponent")), exact);
    case Op::Eq: return Value::of_bool(a == b, exact);
    case Op::Ne: return Value::of_bool(a != b, exact);
    case Op::Lt: return Value::of_bool(a < b, exact);
    case Op::Le: return Value::of_bool(a <= b, exact);
    case Op::Gt: return Value::of_bool(a > b, exact);
    case Op::Ge: return Value::of_bool(a >= b, exact);
    default: throw ExprError("bad operator");
  }
}

/// Infix rendering with full parenthesisation of compound subterms.
inline std::string render(const ExprPtr& ep) {
  const Expr& e = *ep;
  using Op = Expr::Op;
  auto wrap = [](const ExprPtr& x) {
    const bool atom = x->op == Op::Num || x->op == Op::Var || x->op == Op::Call;
    return atom ? render(x) : "(" + render(x) + ")";
  };
  switch (e.op) {
    case Op::Num: return to_string(e.num);
    case Op::Var: return e.name;
    case Op::Call: {
      std::string s = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + render(e.args[i]);
      return s + ")";
    }
    case Op::Neg: return "-" + wrap(e.args[0]);
    case Op::Not: return "!" + wrap(e.args[0]);
    default: break;
  }
  static const std::map<Op, std::string> sym = {
      {Op::Add, " + "}, {Op::Sub, " - "}, {Op::Mul, "*"},    {Op::Div, "/"},    {Op::Mod, " % "},
      {Op::Pow, "^"},   {Op::Eq, " == "}, {Op::Ne, " != "},  {Op::Lt, " < "},   {Op::Le, " <= "},
      {Op::Gt, " > "},  {Op::Ge, " >= "}, {Op::And, " && "}, {Op::Or, " || "}};
  return wrap(e.args[0]) + sym.at(e.op) + wrap(e.args[1]);
}

}  // namespace cover2
