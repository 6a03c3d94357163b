#include "barrec/hdsl.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "barrec/arith.hpp"

namespace barrec::hdsl {

namespace {

std::string describe_expected(const std::set<std::string>& expected) {
  std::string out;
  for (const auto& e : expected) {
    if (!out.empty()) out += ", ";
    out += e;
  }
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"g",  "prod", "sum",  "least", "greatest", "st",
                                       "else", "if", "then", "and",   "or",       "not"};
  return k;
}

enum class Tok { number, ident, keyword, symbol, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
  Nat value = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = s[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(c)) {
      Nat v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = sat_add(sat_mul(v, 10), static_cast<Nat>(s[i] - '0'));
        ++i;
      }
      out.push_back({Tok::number, s.substr(start, i - start), start, v});
    } else if (c >= 'a' && c <= 'z') {
      while (i < s.size() && (std::islower(static_cast<unsigned char>(s[i])) ||
                              std::isdigit(static_cast<unsigned char>(s[i]))))
        ++i;
      std::string word = s.substr(start, i - start);
      out.push_back({keywords().count(word) ? Tok::keyword : Tok::ident, word, start});
    } else if ((c == '<' || c == '!') && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::symbol, s.substr(i, 2), start});
      i += 2;
    } else if (std::string("+-*^():<=").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Tok::symbol, std::string(1, static_cast<char>(c)), start});
      ++i;
    } else {
      throw ParseError(start, {"number", "identifier", "operator"}, std::string(1, static_cast<char>(c)));
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

const std::set<std::string>& atom_start() {
  static const std::set<std::string> a{"number", "identifier", "g", "(", "prod", "sum", "least", "greatest", "if"};
  return a;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::end) fail({"+", "-", "*", "^", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  bool is(const std::string& text) const {
    const Token& t = peek();
    return (t.kind == Tok::symbol || t.kind == Tok::keyword) && t.text == text;
  }

  bool accept(const std::string& text) {
    if (!is(text)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.offset, std::move(expected), t.kind == Tok::end ? "end of input" : t.text);
  }

  void expect(const std::string& text) {
    if (!accept(text)) fail({text});
  }

  std::string binder_name() {
    if (peek().kind != Tok::ident) fail({"identifier"});
    return toks_[pos_++].text;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (accept("+"))
        e = binop(BinOpKind::add, e, term());
      else if (accept("-"))
        e = binop(BinOpKind::sub, e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (accept("*")) e = binop(BinOpKind::mul, e, factor());
    return e;
  }

  ExprPtr factor() {
    ExprPtr e = atom();
    while (accept("^")) e = binop(BinOpKind::pow, e, atom());
    return e;
  }

  ExprPtr atom() {
    const Token& t = peek();
    if (t.kind == Tok::number) {
      ++pos_;
      return lit(t.value);
    }
    if (t.kind == Tok::ident) {
      ++pos_;
      for (std::size_t k = scope_.size(); k-- > 0;)
        if (scope_[k] == t.text) return var(t.text, k);
      throw UnboundVariable(t.text, t.offset);
    }
    if (accept("g")) {
      expect("(");
      ExprPtr a = expr();
      expect(")");
      return gamma(a);
    }
    if (accept("(")) {
      ExprPtr e = expr();
      expect(")");
      return e;
    }
    if (is("prod") || is("sum")) {
      bool is_prod = is("prod");
      ++pos_;
      std::string v = binder_name();
      expect("<");
      ExprPtr bound = expr();
      expect(":");
      scope_.push_back(v);
      ExprPtr body = expr();
      scope_.pop_back();
      return is_prod ? prod(v, bound, body) : sum(v, bound, body);
    }
    if (is("least") || is("greatest")) {
      bool is_least = is("least");
      ++pos_;
      std::string v = binder_name();
      expect("<=");
      ExprPtr bound = expr();
      expect("st");
      scope_.push_back(v);
      CondPtr c = cond();
      scope_.pop_back();
      expect("else");
      ExprPtr other = expr();
      return is_least ? least(v, bound, c, other) : greatest(v, bound, c, other);
    }
    if (accept("if")) {
      CondPtr c = cond();
      expect("then");
      ExprPtr a = expr();
      expect("else");
      ExprPtr b = expr();
      return if_then_else(c, a, b);
    }
    fail(atom_start());
  }

  CondPtr cond() {
    if (accept("not")) return not_(cond());
    CondPtr c = ccmp();
    for (;;) {
      if (accept("and"))
        c = and_(c, ccmp());
      else if (accept("or"))
        c = or_(c, ccmp());
      else
        return c;
    }
  }

  CondPtr ccmp() {
    ExprPtr l = expr();
    CmpKind op;
    if (accept("<"))
      op = CmpKind::lt;
    else if (accept("<="))
      op = CmpKind::le;
    else if (accept("="))
      op = CmpKind::eq;
    else if (accept("!="))
      op = CmpKind::ne;
    else
      fail({"<", "<=", "=", "!=", "+", "-", "*", "^"});
    return cmp(op, l, expr());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

const char* op_text(BinOpKind op) {
  switch (op) {
    case BinOpKind::add: return "+";
    case BinOpKind::sub: return "-";
    case BinOpKind::mul: return "*";
    case BinOpKind::pow: return "^";
  }
  return "?";
}

const char* op_text(CmpKind op) {
  switch (op) {
    case CmpKind::lt: return "<";
    case CmpKind::le: return "<=";
    case CmpKind::eq: return "=";
    case CmpKind::ne: return "!=";
  }
  return "?";
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void print_expr(std::ostream& os, const Expr& e);
void print_cond(std::ostream& os, const Cond& c);

// A chain element: anything but a negation, and on the right only a comparison.
void print_chain(std::ostream& os, const Cond& c, bool rightmost_ok) {
  if (std::holds_alternative<Not>(c.node)) throw Unprintable("negation inside an and/or chain");
  if (!rightmost_ok && !std::holds_alternative<Cmp>(c.node))
    throw Unprintable("compound condition on the right of and/or");
  print_cond(os, c);
}

void print_cond(std::ostream& os, const Cond& c) {
  std::visit(overloaded{
                 [&](const Cmp& x) {
                   print_expr(os, *x.lhs);
                   os << ' ' << op_text(x.op) << ' ';
                   print_expr(os, *x.rhs);
                 },
                 [&](const And& x) {
                   print_chain(os, *x.lhs, true);
                   os << " and ";
                   print_chain(os, *x.rhs, false);
                 },
                 [&](const Or& x) {
                   print_chain(os, *x.lhs, true);
                   os << " or ";
                   print_chain(os, *x.rhs, false);
                 },
                 [&](const Not& x) {
                   os << "not ";
                   print_cond(os, *x.arg);
                 },
             },
             c.node);
}

void print_expr(std::ostream& os, const Expr& e) {
  std::visit(overloaded{
                 [&](const NatLit& x) { os << x.value; },
                 [&](const Var& x) { os << x.name; },
                 [&](const GammaApp& x) {
                   os << "g(";
                   print_expr(os, *x.arg);
                   os << ')';
                 },
                 [&](const BinOp& x) {
                   os << '(';
                   print_expr(os, *x.lhs);
                   os << ' ' << op_text(x.op) << ' ';
                   print_expr(os, *x.rhs);
                   os << ')';
                 },
                 [&](const Prod& x) {
                   os << "(prod " << x.var << " < ";
                   print_expr(os, *x.bound);
                   os << " : ";
                   print_expr(os, *x.body);
                   os << ')';
                 },
                 [&](const Sum& x) {
                   os << "(sum " << x.var << " < ";
                   print_expr(os, *x.bound);
                   os << " : ";
                   print_expr(os, *x.body);
                   os << ')';
                 },
                 [&](const Least& x) {
                   os << "(least " << x.var << " <= ";
                   print_expr(os, *x.bound);
                   os << " st ";
                   print_cond(os, *x.cond);
                   os << " else ";
                   print_expr(os, *x.otherwise);
                   os << ')';
                 },
                 [&](const Greatest& x) {
                   os << "(greatest " << x.var << " <= ";
                   print_expr(os, *x.bound);
                   os << " st ";
                   print_cond(os, *x.cond);
                   os << " else ";
                   print_expr(os, *x.otherwise);
                   os << ')';
                 },
                 [&](const If& x) {
                   os << "(if ";
                   print_cond(os, *x.cond);
                   os << " then ";
                   print_expr(os, *x.then);
                   os << " else ";
                   print_expr(os, *x.otherwise);
                   os << ')';
                 },
             },
             e.node);
}

class Evaluator {
 public:
  explicit Evaluator(const NatSeq& gamma) : gamma_(gamma) {}

  Nat expr(const Expr& e) {
    return std::visit(
        overloaded{
            [&](const NatLit& x) { return x.value; },
            [&](const Var& x) { return env_.at(x.slot); },
            [&](const GammaApp& x) { return gamma_(expr(*x.arg)); },
            [&](const BinOp& x) {
              Nat a = expr(*x.lhs);
              Nat b = expr(*x.rhs);
              switch (x.op) {
                case BinOpKind::add: return sat_add(a, b);
                case BinOpKind::sub: return sat_sub(a, b);
                case BinOpKind::mul: return sat_mul(a, b);
                case BinOpKind::pow: return sat_pow(a, b);
              }
              return Nat{0};
            },
            [&](const Prod& x) {
              Nat bound = expr(*x.bound);
              Nat r = 1;
              for (Nat i = 0; i < bound; ++i) r = sat_mul(r, bound_expr(i, *x.body));
              return r;
            },
            [&](const Sum& x) {
              Nat bound = expr(*x.bound);
              Nat r = 0;
              for (Nat i = 0; i < bound; ++i) r = sat_add(r, bound_expr(i, *x.body));
              return r;
            },
            [&](const Least& x) {
              Nat bound = expr(*x.bound);
              for (Nat i = 0;; ++i) {
                if (bound_cond(i, *x.cond)) return i;
                if (i == bound) break;
              }
              return expr(*x.otherwise);
            },
            [&](const Greatest& x) {
              Nat bound = expr(*x.bound);
              for (Nat i = bound;; --i) {
                if (bound_cond(i, *x.cond)) return i;
                if (i == 0) break;
              }
              return expr(*x.otherwise);
            },
            [&](const If& x) { return cond(*x.cond) ? expr(*x.then) : expr(*x.otherwise); },
        },
        e.node);
  }

  bool cond(const Cond& c) {
    return std::visit(overloaded{
                          [&](const Cmp& x) {
                            Nat a = expr(*x.lhs);
                            Nat b = expr(*x.rhs);
                            switch (x.op) {
                              case CmpKind::lt: return a < b;
                              case CmpKind::le: return a <= b;
                              case CmpKind::eq: return a == b;
                              case CmpKind::ne: return a != b;
                            }
                            return false;
                          },
                          [&](const And& x) { return cond(*x.lhs) && cond(*x.rhs); },
                          [&](const Or& x) { return cond(*x.lhs) || cond(*x.rhs); },
                          [&](const Not& x) { return !cond(*x.arg); },
                      },
                      c.node);
  }

 private:
  Nat bound_expr(Nat i, const Expr& e) {
    env_.push_back(i);
    Nat r = expr(e);
    env_.pop_back();
    return r;
  }

  bool bound_cond(Nat i, const Cond& c) {
    env_.push_back(i);
    bool r = cond(c);
    env_.pop_back();
    return r;
  }

  const NatSeq& gamma_;
  std::vector<Nat> env_;
};

template <class T>
bool same(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b) {
  if (!a || !b) return a == b;
  return *a == *b;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::set<std::string> expected, const std::string& found)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": expected one of {" +
                         describe_expected(expected) + "}, found '" + found + "'"),
      offset_(offset),
      expected_(std::move(expected)) {}

UnboundVariable::UnboundVariable(std::string name, std::size_t offset)
    : std::runtime_error("unbound variable '" + name + "' at offset " + std::to_string(offset)),
      name_(std::move(name)),
      offset_(offset) {}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const NatLit& x) { return x.value == std::get<NatLit>(b.node).value; },
          [&](const Var& x) {
            const auto& y = std::get<Var>(b.node);
            return x.name == y.name && x.slot == y.slot;
          },
          [&](const GammaApp& x) { return same(x.arg, std::get<GammaApp>(b.node).arg); },
          [&](const BinOp& x) {
            const auto& y = std::get<BinOp>(b.node);
            return x.op == y.op && same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
          },
          [&](const Prod& x) {
            const auto& y = std::get<Prod>(b.node);
            return x.var == y.var && same(x.bound, y.bound) && same(x.body, y.body);
          },
          [&](const Sum& x) {
            const auto& y = std::get<Sum>(b.node);
            return x.var == y.var && same(x.bound, y.bound) && same(x.body, y.body);
          },
          [&](const Least& x) {
            const auto& y = std::get<Least>(b.node);
            return x.var == y.var && same(x.bound, y.bound) && same(x.cond, y.cond) &&
                   same(x.otherwise, y.otherwise);
          },
          [&](const Greatest& x) {
            const auto& y = std::get<Greatest>(b.node);
            return x.var == y.var && same(x.bound, y.bound) && same(x.cond, y.cond) &&
                   same(x.otherwise, y.otherwise);
          },
          [&](const If& x) {
            const auto& y = std::get<If>(b.node);
            return same(x.cond, y.cond) && same(x.then, y.then) && same(x.otherwise, y.otherwise);
          },
      },
      a.node);
}

bool operator==(const Cond& a, const Cond& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(overloaded{
                        [&](const Cmp& x) {
                          const auto& y = std::get<Cmp>(b.node);
                          return x.op == y.op && same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
                        },
                        [&](const And& x) {
                          const auto& y = std::get<And>(b.node);
                          return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
                        },
                        [&](const Or& x) {
                          const auto& y = std::get<Or>(b.node);
                          return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
                        },
                        [&](const Not& x) { return same(x.arg, std::get<Not>(b.node).arg); },
                    },
                    a.node);
}

bool equal(const ExprPtr& a, const ExprPtr& b) { return same(a, b); }

ExprPtr parse(const std::string& text) { return Parser(text).parse_all(); }

std::string print(const ExprPtr& e) {
  std::ostringstream os;
  print_expr(os, *e);
  return os.str();
}

std::string print(const CondPtr& c) {
  std::ostringstream os;
  print_cond(os, *c);
  return os.str();
}

Nat eval(const ExprPtr& e, const NatSeq& g) { return Evaluator(g).expr(*e); }

Functional as_functional(ExprPtr e) {
  return [e = std::move(e)](const NatSeq& g) { return eval(e, g); };
}

std::string family_source(HFamily family, Nat n) {
  std::string k = std::to_string(n);
  switch (family) {
    case HFamily::prod: return "prod i < " + k + " : 1 + g(i)";
    case HFamily::prodpow: return "prod i < " + k + " : (1 + i) ^ (1 + g(i))";
    case HFamily::leastinc: return "least i <= " + k + " st g(i) < g(i + 1) else " + k;
    case HFamily::contrived:
      return "if g(0) = 2 and g(1) = 2 then (greatest i <= " + k + " st g(i) = 1 else " + k +
             ") else if g(0) = 1 and g(1) = 2 then 0 else if g(0) = 2 and g(1) = 1 then 0 else 1";
  }
  return "0";
}

ExprPtr lit(Nat v) { return std::make_shared<const Expr>(Expr{NatLit{v}}); }
ExprPtr var(std::string name, std::size_t slot) {
  return std::make_shared<const Expr>(Expr{Var{std::move(name), slot}});
}
ExprPtr gamma(ExprPtr arg) { return std::make_shared<const Expr>(Expr{GammaApp{std::move(arg)}}); }
ExprPtr binop(BinOpKind op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{BinOp{op, std::move(lhs), std::move(rhs)}});
}
ExprPtr prod(std::string v, ExprPtr bound, ExprPtr body) {
  return std::make_shared<const Expr>(Expr{Prod{std::move(v), std::move(bound), std::move(body)}});
}
ExprPtr sum(std::string v, ExprPtr bound, ExprPtr body) {
  return std::make_shared<const Expr>(Expr{Sum{std::move(v), std::move(bound), std::move(body)}});
}
ExprPtr least(std::string v, ExprPtr bound, CondPtr cond, ExprPtr otherwise) {
  return std::make_shared<const Expr>(
      Expr{Least{std::move(v), std::move(bound), std::move(cond), std::move(otherwise)}});
}
ExprPtr greatest(std::string v, ExprPtr bound, CondPtr cond, ExprPtr otherwise) {
  return std::make_shared<const Expr>(
      Expr{Greatest{std::move(v), std::move(bound), std::move(cond), std::move(otherwise)}});
}
ExprPtr if_then_else(CondPtr cond, ExprPtr then, ExprPtr otherwise) {
  return std::make_shared<const Expr>(Expr{If{std::move(cond), std::move(then), std::move(otherwise)}});
}
CondPtr cmp(CmpKind op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Cond>(Cond{Cmp{op, std::move(lhs), std::move(rhs)}});
}
CondPtr and_(CondPtr lhs, CondPtr rhs) { return std::make_shared<const Cond>(Cond{And{std::move(lhs), std::move(rhs)}}); }
CondPtr or_(CondPtr lhs, CondPtr rhs) { return std::make_shared<const Cond>(Cond{Or{std::move(lhs), std::move(rhs)}}); }
CondPtr not_(CondPtr arg) { return std::make_shared<const Cond>(Cond{Not{std::move(arg)}}); }

}  // namespace barrec::hdsl
