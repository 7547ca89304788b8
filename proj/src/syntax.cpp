#include "food/syntax.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "food/diagnostic.hpp"

namespace food {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Diagnostics

std::string Diagnostic::str() const {
  if (line <= 0) return message;
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

namespace {
std::string joinMessages(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "\n";
    out += d.str();
  }
  return out;
}
}  // namespace

Error::Error(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(joinMessages(diagnostics)), diagnostics_(std::move(diagnostics)) {}

Error::Error(const std::string& message)
    : std::runtime_error(message), diagnostics_{Diagnostic{message, 0, 0}} {}

// ---------------------------------------------------------------------------
// Types

Type Type::named(std::string name) {
  Type t;
  t.kind = Kind::Named;
  t.name = std::move(name);
  return t;
}

Type Type::integer() { return Type{}; }

Type Type::boolean() {
  Type t;
  t.kind = Kind::Bool;
  return t;
}

Type Type::arrow(std::vector<Type> params, Type ret) {
  Type t;
  t.kind = Kind::Arrow;
  t.params = std::move(params);
  t.ret = std::make_shared<const Type>(std::move(ret));
  return t;
}

std::string Type::str() const {
  switch (kind) {
    case Kind::Int: return "Int";
    case Kind::Bool: return "Bool";
    case Kind::Named: return name;
    case Kind::Arrow: {
      std::string out = "(";
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ", ";
        out += params[i].str();
      }
      return out + ") -> " + ret->str();
    }
  }
  return "?";
}

bool operator==(const Type& a, const Type& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Type::Kind::Int:
    case Type::Kind::Bool: return true;
    case Type::Kind::Named: return a.name == b.name;
    case Type::Kind::Arrow: return a.params == b.params && *a.ret == *b.ret;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Values

Value Value::integer(std::int64_t i) { return Value(Rep(i)); }
Value Value::boolean(bool b) { return Value(Rep(b)); }
Value Value::object(std::string ctor, std::vector<Value> fields) {
  return Value(Rep(std::make_shared<const Object>(Object{std::move(ctor), std::move(fields)})));
}

bool Value::isObject() const {
  return std::holds_alternative<std::shared_ptr<const Object>>(rep_);
}

const Object& Value::asObject() const { return *std::get<std::shared_ptr<const Object>>(rep_); }

std::string Value::str() const {
  if (isInt()) return std::to_string(asInt());
  if (isBool()) return asBool() ? "true" : "false";
  const Object& o = asObject();
  std::string out = "obj(" + o.ctor;
  for (const auto& f : o.fields) out += ", " + f.str();
  return out + ")";
}

bool operator==(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  if (a.isInt()) return a.asInt() == b.asInt();
  if (a.isBool()) return a.asBool() == b.asBool();
  const auto& pa = std::get<std::shared_ptr<const Object>>(a.rep_);
  const auto& pb = std::get<std::shared_ptr<const Object>>(b.rep_);
  return pa == pb || *pa == *pb;
}

// ---------------------------------------------------------------------------
// Expressions

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->node == b.node_->node;
}

const char* spelling(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
    case BinOp::Eq: return "==";
    case BinOp::Le: return "<=";
    case BinOp::Lt: return "<";
  }
  return "?";
}

namespace {
template <class T>
Expr make(T node) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{std::move(node)}));
}
}  // namespace

Expr var(std::string name) { return make(ast::Var{std::move(name)}); }
Expr sel(Expr receiver, std::string method, std::vector<Expr> args) {
  return make(ast::Sel{std::move(receiver), std::move(method), std::move(args)});
}
Expr app(std::string consumer, Expr self, std::vector<Expr> args) {
  return make(ast::App{std::move(consumer), std::move(self), std::move(args)});
}
Expr ctrCall(std::string ctor, std::vector<Expr> args) {
  return make(ast::CtrCall{std::move(ctor), std::move(args)});
}
Expr newObj(std::string ctor, std::vector<Expr> args) {
  return make(ast::New{std::move(ctor), std::move(args)});
}
Expr intLit(std::int64_t value) { return make(ast::IntLit{value}); }
Expr boolLit(bool value) { return make(ast::BoolLit{value}); }
Expr prim(BinOp op, Expr lhs, Expr rhs) { return make(ast::Prim{op, std::move(lhs), std::move(rhs)}); }
Expr ifExpr(Expr cond, Expr then, Expr otherwise) {
  return make(ast::If{std::move(cond), std::move(then), std::move(otherwise)});
}

Expr fromValue(const Value& v) {
  if (v.isInt()) return intLit(v.asInt());
  if (v.isBool()) return boolLit(v.asBool());
  return make(ast::Obj{v});
}

bool isValue(const Expr& e) {
  return e.as<ast::Obj>() || e.as<ast::IntLit>() || e.as<ast::BoolLit>();
}

Value toValue(const Expr& e) {
  if (const auto* i = e.as<ast::IntLit>()) return Value::integer(i->value);
  if (const auto* b = e.as<ast::BoolLit>()) return Value::boolean(b->value);
  return e.as<ast::Obj>()->value;
}

namespace {

std::vector<Expr> mapArgs(const std::vector<Expr>& args, const auto& f, bool& changed) {
  std::vector<Expr> out;
  out.reserve(args.size());
  for (const auto& a : args) {
    out.push_back(f(a));
    if (!(out.back().get() == a.get())) changed = true;
  }
  return out;
}

/// Rebuilds `e` with `f` applied to each direct child, sharing the node when
/// nothing changed.
template <class F>
Expr mapChildren(const Expr& e, const F& f) {
  bool changed = false;
  auto child = [&](const Expr& c) {
    Expr r = f(c);
    if (r.get() != c.get()) changed = true;
    return r;
  };
  Expr out = std::visit(
      overloaded{
          [&](const ast::Sel& n) {
            Expr r = child(n.receiver);
            auto args = mapArgs(n.args, f, changed);
            return sel(r, n.method, std::move(args));
          },
          [&](const ast::App& n) {
            Expr s = child(n.self);
            auto args = mapArgs(n.args, f, changed);
            return app(n.consumer, s, std::move(args));
          },
          [&](const ast::CtrCall& n) { return ctrCall(n.ctor, mapArgs(n.args, f, changed)); },
          [&](const ast::New& n) { return newObj(n.ctor, mapArgs(n.args, f, changed)); },
          [&](const ast::Prim& n) {
            Expr l = child(n.lhs);
            Expr r = child(n.rhs);
            return prim(n.op, l, r);
          },
          [&](const ast::If& n) {
            Expr c = child(n.cond);
            Expr t = child(n.then);
            Expr o = child(n.otherwise);
            return ifExpr(c, t, o);
          },
          [&](const auto&) { return e; },
      },
      e->node);
  return changed ? out : e;
}

template <class F>
void forEachChild(const Expr& e, const F& f) {
  std::visit(overloaded{
                 [&](const ast::Sel& n) {
                   f(n.receiver);
                   for (const auto& a : n.args) f(a);
                 },
                 [&](const ast::App& n) {
                   f(n.self);
                   for (const auto& a : n.args) f(a);
                 },
                 [&](const ast::CtrCall& n) {
                   for (const auto& a : n.args) f(a);
                 },
                 [&](const ast::New& n) {
                   for (const auto& a : n.args) f(a);
                 },
                 [&](const ast::Prim& n) {
                   f(n.lhs);
                   f(n.rhs);
                 },
                 [&](const ast::If& n) {
                   f(n.cond);
                   f(n.then);
                   f(n.otherwise);
                 },
                 [&](const auto&) {},
             },
             e->node);
}

}  // namespace

Expr substitute(const Expr& e, const std::vector<std::pair<std::string, Expr>>& bindings) {
  if (const auto* v = e.as<ast::Var>()) {
    for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
      if (it->first == v->name) return it->second;
    }
    return e;
  }
  return mapChildren(e, [&](const Expr& c) { return substitute(c, bindings); });
}

Expr rename(const Expr& e, const std::string& from, const std::string& to) {
  return substitute(e, {{from, var(to)}});
}

bool mentions(const Expr& e, const std::string& name) {
  if (const auto* v = e.as<ast::Var>()) return v->name == name;
  bool found = false;
  forEachChild(e, [&](const Expr& c) { found = found || mentions(c, name); });
  return found;
}

bool containsRuntimeForms(const Expr& e) {
  if (e.as<ast::Obj>()) return true;
  bool found = false;
  forEachChild(e, [&](const Expr& c) { found = found || containsRuntimeForms(c); });
  return found;
}

std::size_t size(const Expr& e) {
  std::size_t n = 1;
  forEachChild(e, [&](const Expr& c) { n += size(c); });
  return n;
}

std::set<std::string> freeVars(const Expr& e) {
  std::set<std::string> out;
  for (const auto& x : subterms(e)) {
    if (const auto* v = x.as<ast::Var>()) out.insert(v->name);
  }
  return out;
}

std::vector<Expr> subterms(const Expr& e) {
  std::vector<Expr> out;
  auto visit = [&](auto&& self, const Expr& x) -> void {
    out.push_back(x);
    forEachChild(x, [&](const Expr& c) { self(self, c); });
  };
  visit(visit, e);
  return out;
}

std::vector<Expr> children(const Expr& e) {
  std::vector<Expr> out;
  forEachChild(e, [&](const Expr& c) { out.push_back(c); });
  return out;
}

Expr replaceSubterm(const Expr& e, std::size_t index, const Expr& with) {
  std::size_t next = 0;
  auto go = [&](auto&& self, const Expr& x) -> Expr {
    if (next++ == index) return with;
    if (next > index) return x;
    return mapChildren(x, [&](const Expr& c) { return self(self, c); });
  };
  return go(go, e);
}

Expr rewriteBottomUp(const Expr& e, const std::function<Expr(const Expr&)>& f) {
  return f(mapChildren(e, [&](const Expr& c) { return rewriteBottomUp(c, f); }));
}

// ---------------------------------------------------------------------------
// Definitions

namespace ast {

const Clause* Consumer::wildcard() const {
  for (const auto& c : clauses) {
    if (c.pattern.wildcard) return &c;
  }
  return nullptr;
}

const Clause* Consumer::clauseFor(const std::string& ctor) const {
  for (const auto& c : clauses) {
    if (!c.pattern.wildcard && c.pattern.ctor == ctor) return &c;
  }
  return nullptr;
}

}  // namespace ast

const std::string& Def::name() const {
  return std::visit([](const auto& d) -> const std::string& { return d.name; }, node);
}

// ---------------------------------------------------------------------------
// Passes

Program desugar(const Program& program) {
  Program out = program;
  for (auto& d : out.defs) {
    if (auto* c = std::get_if<ast::Consumer>(&d.node)) c->bare = false;
  }
  return out;
}

Program canonicalize(const Program& program) {
  std::set<std::string> datatypes;
  std::map<std::string, std::vector<std::string>> ctorOrder;
  std::map<std::string, std::vector<std::string>> dtrOrder;
  for (const auto& d : program.defs) {
    if (const auto* dt = d.as<ast::Datatype>()) datatypes.insert(dt->name);
    if (const auto* c = d.as<ast::Constructor>()) ctorOrder[c->parent].push_back(c->name);
    if (const auto* it = d.as<ast::Interface>()) {
      for (const auto& m : it->methods) dtrOrder[it->name].push_back(m.name);
    }
  }

  auto rank = [](const std::vector<std::string>& order, const std::string& name) {
    auto it = std::find(order.begin(), order.end(), name);
    return static_cast<std::size_t>(it - order.begin());
  };

  auto canonicalConsumer = [&](ast::Consumer c) {
    const auto& order = ctorOrder[c.selfType];
    std::stable_sort(c.clauses.begin(), c.clauses.end(), [&](const Clause& a, const Clause& b) {
      if (a.pattern.wildcard != b.pattern.wildcard) return b.pattern.wildcard;
      if (a.pattern.wildcard) return false;
      return rank(order, a.pattern.ctor) < rank(order, b.pattern.ctor);
    });
    return c;
  };

  std::map<std::string, std::vector<Def>> consumersOf;
  for (const auto& d : program.defs) {
    if (const auto* c = d.as<ast::Consumer>(); c && datatypes.count(c->selfType)) {
      consumersOf[c->selfType].push_back(Def{canonicalConsumer(*c), d.pos});
    }
  }

  Program out;
  out.main = program.main;
  for (const auto& d : program.defs) {
    if (const auto* c = d.as<ast::Consumer>()) {
      if (!datatypes.count(c->selfType)) out.defs.push_back(Def{canonicalConsumer(*c), d.pos});
      continue;
    }
    if (const auto* g = d.as<ast::Generator>()) {
      ast::Generator gen = *g;
      const auto& order = dtrOrder[gen.parent];
      std::stable_sort(gen.methods.begin(), gen.methods.end(), [&](const Method& a, const Method& b) {
        return rank(order, a.name) < rank(order, b.name);
      });
      out.defs.push_back(Def{std::move(gen), d.pos});
      continue;
    }
    out.defs.push_back(d);
    if (const auto* dt = d.as<ast::Datatype>()) {
      for (auto& c : consumersOf[dt->name]) out.defs.push_back(std::move(c));
      consumersOf.erase(dt->name);
    }
  }
  return out;
}

}  // namespace food
