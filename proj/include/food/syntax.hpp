#pragma once

// Abstract syntax of FOOD programs.
//
// Every node is immutable once built. Expressions are shared, so copying a
// Program is cheap and never deep-copies bodies. Equality is structural and
// ignores source positions.

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace food {

struct SourcePos {
  int line = 0;
  int column = 0;
};

// ---------------------------------------------------------------------------
// Types

struct Type {
  enum class Kind { Named, Arrow, Int, Bool };

  Kind kind = Kind::Int;
  std::string name;               // Named
  std::vector<Type> params;       // Arrow
  std::shared_ptr<const Type> ret;  // Arrow

  static Type named(std::string name);
  static Type integer();
  static Type boolean();
  static Type arrow(std::vector<Type> params, Type ret);

  bool isNamed() const { return kind == Kind::Named; }
  bool isArrow() const { return kind == Kind::Arrow; }
  const Type& result() const { return *ret; }

  std::string str() const;

  friend bool operator==(const Type& a, const Type& b);
};

// ---------------------------------------------------------------------------
// Runtime values

struct Object;

class Value {
 public:
  static Value integer(std::int64_t i);
  static Value boolean(bool b);
  static Value object(std::string ctor, std::vector<Value> fields);

  bool isInt() const { return std::holds_alternative<std::int64_t>(rep_); }
  bool isBool() const { return std::holds_alternative<bool>(rep_); }
  bool isObject() const;

  std::int64_t asInt() const { return std::get<std::int64_t>(rep_); }
  bool asBool() const { return std::get<bool>(rep_); }
  const Object& asObject() const;

  /// `3`, `true`, `obj(Insert, obj(Empty), 3)`.
  std::string str() const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  using Rep = std::variant<std::int64_t, bool, std::shared_ptr<const Object>>;
  explicit Value(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

struct Object {
  std::string ctor;
  std::vector<Value> fields;

  bool operator==(const Object&) const = default;
};

// ---------------------------------------------------------------------------
// Expressions

struct ExprNode;

/// Shared, immutable expression handle. A default-constructed Expr is null
/// and is used for "no body" (destructor declarations).
class Expr {
 public:
  Expr() = default;
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  explicit operator bool() const { return static_cast<bool>(node_); }
  const ExprNode& operator*() const { return *node_; }
  const ExprNode* operator->() const { return node_.get(); }
  const ExprNode* get() const { return node_.get(); }

  template <class T>
  const T* as() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const ExprNode> node_;
};

enum class BinOp { Add, Sub, Mul, And, Or, Eq, Le, Lt };

const char* spelling(BinOp op);

namespace ast {

struct Var {
  std::string name;
  bool operator==(const Var&) const = default;
};

/// e.f(args)
struct Sel {
  Expr receiver;
  std::string method;
  std::vector<Expr> args;
  bool operator==(const Sel&) const = default;
};

/// f(self)(args)
struct App {
  std::string consumer;
  Expr self;
  std::vector<Expr> args;
  bool operator==(const App&) const = default;
};

/// C(args)
struct CtrCall {
  std::string ctor;
  std::vector<Expr> args;
  bool operator==(const CtrCall&) const = default;
};

/// new C(args)
struct New {
  std::string ctor;
  std::vector<Expr> args;
  bool operator==(const New&) const = default;
};

/// Runtime object obj(C, v...). Never produced by the parser.
struct Obj {
  Value value;
  bool operator==(const Obj&) const = default;
};

struct IntLit {
  std::int64_t value;
  bool operator==(const IntLit&) const = default;
};

struct BoolLit {
  bool value;
  bool operator==(const BoolLit&) const = default;
};

struct Prim {
  BinOp op;
  Expr lhs;
  Expr rhs;
  bool operator==(const Prim&) const = default;
};

struct If {
  Expr cond;
  Expr then;
  Expr otherwise;
  bool operator==(const If&) const = default;
};

}  // namespace ast

struct ExprNode {
  std::variant<ast::Var, ast::Sel, ast::App, ast::CtrCall, ast::New, ast::Obj,
               ast::IntLit, ast::BoolLit, ast::Prim, ast::If>
      node;
};

template <class T>
const T* Expr::as() const {
  return node_ ? std::get_if<T>(&node_->node) : nullptr;
}

Expr var(std::string name);
Expr sel(Expr receiver, std::string method, std::vector<Expr> args);
Expr app(std::string consumer, Expr self, std::vector<Expr> args);
Expr ctrCall(std::string ctor, std::vector<Expr> args);
Expr newObj(std::string ctor, std::vector<Expr> args);
Expr intLit(std::int64_t value);
Expr boolLit(bool value);
Expr prim(BinOp op, Expr lhs, Expr rhs);
Expr ifExpr(Expr cond, Expr then, Expr otherwise);

/// Embeds a value as an expression: IntLit, BoolLit or Obj.
Expr fromValue(const Value& v);
bool isValue(const Expr& e);
/// Precondition: isValue(e).
Value toValue(const Expr& e);

/// Replaces free occurrences of variables. Expressions have no binders, so
/// this is plain renaming/replacement.
Expr substitute(const Expr& e, const std::vector<std::pair<std::string, Expr>>& bindings);
Expr rename(const Expr& e, const std::string& from, const std::string& to);

bool mentions(const Expr& e, const std::string& name);
bool containsRuntimeForms(const Expr& e);

/// Number of nodes; used by the shrinker and tests.
std::size_t size(const Expr& e);

std::set<std::string> freeVars(const Expr& e);

/// Every node of `e` in preorder, `e` first.
std::vector<Expr> subterms(const Expr& e);

/// Immediate subexpressions, left to right.
std::vector<Expr> children(const Expr& e);
/// `e` with the node at preorder position `index` (as in subterms) replaced.
Expr replaceSubterm(const Expr& e, std::size_t index, const Expr& with);
/// Applies `f` to every node, children first.
Expr rewriteBottomUp(const Expr& e, const std::function<Expr(const Expr&)>& f);

// ---------------------------------------------------------------------------
// Definitions

struct Param {
  std::string name;
  Type type;
  bool operator==(const Param&) const = default;
};

/// A destructor. A null body makes it a declaration.
struct Method {
  std::string name;
  std::vector<Param> params;
  Type ret;
  Expr body;

  bool hasBody() const { return static_cast<bool>(body); }
  bool operator==(const Method&) const = default;
};

struct Pattern {
  bool wildcard = false;
  std::string ctor;
  std::vector<std::string> vars;

  static Pattern any() { return Pattern{true, {}, {}}; }
  static Pattern of(std::string ctor, std::vector<std::string> vars) {
    return Pattern{false, std::move(ctor), std::move(vars)};
  }
  bool operator==(const Pattern&) const = default;
};

struct Clause {
  Pattern pattern;
  Expr body;
  bool operator==(const Clause&) const = default;
};

namespace ast {

struct Datatype {
  std::string name;
  bool operator==(const Datatype&) const = default;
};

struct Interface {
  std::string name;
  std::vector<Method> methods;
  bool operator==(const Interface&) const = default;
};

struct Constructor {
  std::string name;
  std::vector<Param> fields;
  std::string parent;
  bool operator==(const Constructor&) const = default;
};

struct Generator {
  std::string name;
  std::vector<Param> fields;
  std::string parent;
  std::vector<Method> methods;
  bool operator==(const Generator&) const = default;
};

/// def f(self: D)(params): ret = match { clauses }
///
/// A consumer written with a bare expression body is stored as a single
/// wildcard clause with `bare` set; desugar clears the flag.
struct Consumer {
  std::string name;
  std::string selfType;
  std::vector<Param> params;
  Type ret;
  std::vector<Clause> clauses;
  bool bare = false;

  const Clause* wildcard() const;
  const Clause* clauseFor(const std::string& ctor) const;
  bool operator==(const Consumer&) const = default;
};

}  // namespace ast

struct Def {
  std::variant<ast::Datatype, ast::Interface, ast::Constructor, ast::Generator, ast::Consumer>
      node;
  SourcePos pos;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  /// D for types, C for classes, f for consumers.
  const std::string& name() const;

  friend bool operator==(const Def& a, const Def& b) { return a.node == b.node; }
};

struct Program {
  std::vector<Def> defs;
  Expr main;

  bool operator==(const Program&) const = default;
};

// ---------------------------------------------------------------------------
// Passes

/// Rewrites bare consumer bodies into `case _ => e`. Everything else unchanged.
Program desugar(const Program& program);

/// Places every consumer of a declared datatype right after its `data`
/// declaration (source order), orders its constructor clauses by constructor
/// declaration order, and orders generator methods by interface order.
Program canonicalize(const Program& program);

}  // namespace food
