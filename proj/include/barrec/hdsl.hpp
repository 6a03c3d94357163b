#pragma once

// A small language for functionals H : (N→N) → N.
//
//   expr  := term (("+"|"-") term)*
//   term  := factor ("*" factor)*
//   factor:= atom ("^" atom)*
//   atom  := NAT | IDENT | "g" "(" expr ")" | "(" expr ")"
//          | "prod" IDENT "<" expr ":" expr | "sum" IDENT "<" expr ":" expr
//          | "least" IDENT "<=" expr "st" cond "else" expr
//          | "greatest" IDENT "<=" expr "st" cond "else" expr
//          | "if" cond "then" expr "else" expr
//   cond  := ccmp (("and"|"or") ccmp)* | "not" cond
//   ccmp  := expr ("<"|"<="|"="|"!=") expr
//
// All operators associate to the left, including "^" and the and/or chain.
// Arithmetic saturates; "-" truncates at 0.

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>

#include "barrec/noinjection.hpp"

namespace barrec::hdsl {

struct Expr;
struct Cond;
using ExprPtr = std::shared_ptr<const Expr>;
using CondPtr = std::shared_ptr<const Cond>;

enum class BinOpKind { add, sub, mul, pow };
enum class CmpKind { lt, le, eq, ne };

struct NatLit {
  Nat value;
};
/// slot is the binder depth counted from the outermost binder.
struct Var {
  std::string name;
  std::size_t slot;
};
struct GammaApp {
  ExprPtr arg;
};
struct BinOp {
  BinOpKind op;
  ExprPtr lhs, rhs;
};
/// Π_{var < bound} body
struct Prod {
  std::string var;
  ExprPtr bound, body;
};
struct Sum {
  std::string var;
  ExprPtr bound, body;
};
/// least var ≤ bound with cond, else otherwise; var is in scope in cond only.
struct Least {
  std::string var;
  ExprPtr bound;
  CondPtr cond;
  ExprPtr otherwise;
};
struct Greatest {
  std::string var;
  ExprPtr bound;
  CondPtr cond;
  ExprPtr otherwise;
};
struct If {
  CondPtr cond;
  ExprPtr then, otherwise;
};

struct Expr {
  std::variant<NatLit, Var, GammaApp, BinOp, Prod, Sum, Least, Greatest, If> node;
};

struct Cmp {
  CmpKind op;
  ExprPtr lhs, rhs;
};
struct And {
  CondPtr lhs, rhs;
};
struct Or {
  CondPtr lhs, rhs;
};
struct Not {
  CondPtr arg;
};

struct Cond {
  std::variant<Cmp, And, Or, Not> node;
};

bool operator==(const Expr& a, const Expr& b);
bool operator==(const Cond& a, const Cond& b);
bool equal(const ExprPtr& a, const ExprPtr& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::set<std::string> expected, const std::string& found);
  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::set<std::string> expected_;
};

class UnboundVariable : public std::runtime_error {
 public:
  UnboundVariable(std::string name, std::size_t offset);
  const std::string& name() const { return name_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

/// Raised by print() for trees the grammar has no spelling for, such as a
/// negation on the right of "and".
class Unprintable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ExprPtr parse(const std::string& text);

/// Fully parenthesized form; parse(print(e)) == e.
std::string print(const ExprPtr& e);
std::string print(const CondPtr& c);

Nat eval(const ExprPtr& e, const NatSeq& gamma);

Functional as_functional(ExprPtr e);

/// DSL spellings of the built-in families.
std::string family_source(HFamily family, Nat n);

// Constructors, mainly for generated trees.
ExprPtr lit(Nat v);
ExprPtr var(std::string name, std::size_t slot);
ExprPtr gamma(ExprPtr arg);
ExprPtr binop(BinOpKind op, ExprPtr lhs, ExprPtr rhs);
ExprPtr prod(std::string v, ExprPtr bound, ExprPtr body);
ExprPtr sum(std::string v, ExprPtr bound, ExprPtr body);
ExprPtr least(std::string v, ExprPtr bound, CondPtr cond, ExprPtr otherwise);
ExprPtr greatest(std::string v, ExprPtr bound, CondPtr cond, ExprPtr otherwise);
ExprPtr if_then_else(CondPtr cond, ExprPtr then, ExprPtr otherwise);
CondPtr cmp(CmpKind op, ExprPtr lhs, ExprPtr rhs);
CondPtr and_(CondPtr lhs, CondPtr rhs);
CondPtr or_(CondPtr lhs, CondPtr rhs);
CondPtr not_(CondPtr arg);

}  // namespace barrec::hdsl
