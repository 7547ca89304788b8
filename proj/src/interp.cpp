#include "food/interp.hpp"

#include <algorithm>

#include "food/pretty.hpp"

namespace food {

namespace {

using Reduced = std::variant<Expr, Stuck>;

std::vector<std::string> namesOf(const std::vector<Param>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.name);
  return out;
}

std::int64_t wrap(std::uint64_t x) { return static_cast<std::int64_t>(x); }

class Stepper {
 public:
  explicit Stepper(const GlobalCtx& ctx) : ctx_(ctx) {}

  // Precondition: !isValue(e).
  Reduced reduce(const Expr& e) {
    if (const auto* v = e.as<ast::Var>()) return Stuck{"free variable '" + v->name + "'"};
    if (const auto* s = e.as<ast::Sel>()) {
      if (!isValue(s->receiver)) {
        return congruence(s->receiver, [&](Expr r) { return sel(std::move(r), s->method, s->args); });
      }
      if (auto i = firstNonValue(s->args)) {
        return congruence(s->args[*i], [&](Expr a) { return sel(s->receiver, s->method, replace(s->args, *i, a)); });
      }
      return destructor(*s);
    }
    if (const auto* a = e.as<ast::App>()) {
      if (!isValue(a->self)) {
        return congruence(a->self, [&](Expr r) { return app(a->consumer, std::move(r), a->args); });
      }
      if (auto i = firstNonValue(a->args)) {
        return congruence(a->args[*i], [&](Expr x) { return app(a->consumer, a->self, replace(a->args, *i, x)); });
      }
      return consumer(*a);
    }
    if (const auto* c = e.as<ast::CtrCall>()) {
      if (auto i = firstNonValue(c->args)) {
        return congruence(c->args[*i], [&](Expr x) { return ctrCall(c->ctor, replace(c->args, *i, x)); });
      }
      return fromValue(Value::object(c->ctor, values(c->args)));  // E-Ctr
    }
    if (const auto* n = e.as<ast::New>()) {
      if (auto i = firstNonValue(n->args)) {
        return congruence(n->args[*i], [&](Expr x) { return newObj(n->ctor, replace(n->args, *i, x)); });
      }
      return fromValue(Value::object(n->ctor, values(n->args)));  // E-New
    }
    if (const auto* p = e.as<ast::Prim>()) return primitive(*p);
    const auto& i = std::get<ast::If>(e->node);
    if (!isValue(i.cond)) {
      return congruence(i.cond, [&](Expr c) { return ifExpr(std::move(c), i.then, i.otherwise); });
    }
    Value c = toValue(i.cond);
    if (!c.isBool()) return Stuck{"if condition " + c.str() + " is not a Bool"};
    return c.asBool() ? i.then : i.otherwise;
  }

 private:
  template <class Rebuild>
  Reduced congruence(const Expr& sub, Rebuild rebuild) {
    Reduced r = reduce(sub);
    if (auto* s = std::get_if<Stuck>(&r)) return *s;
    return rebuild(std::get<Expr>(std::move(r)));
  }

  static std::optional<std::size_t> firstNonValue(const std::vector<Expr>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!isValue(xs[i])) return i;
    }
    return std::nullopt;
  }

  static std::vector<Expr> replace(std::vector<Expr> xs, std::size_t i, Expr x) {
    xs[i] = std::move(x);
    return xs;
  }

  static std::vector<Value> values(const std::vector<Expr>& xs) {
    std::vector<Value> out;
    for (const auto& x : xs) out.push_back(toValue(x));
    return out;
  }

  // [self/this ↦ obj, ȳ ↦ v̄₁, x̄ ↦ v̄₂]
  static Reduced instantiate(const Lookup& l, const char* selfName, const Value& obj,
                             const std::vector<Expr>& args) {
    const Object& o = obj.asObject();
    if (l.paramNames.size() != args.size()) return Stuck{"wrong number of arguments"};
    if (!l.fieldNames.empty() && l.fieldNames.size() != o.fields.size()) {
      return Stuck{"object " + obj.str() + " has the wrong number of fields"};
    }
    std::vector<std::pair<std::string, Expr>> bindings{{selfName, fromValue(obj)}};
    for (std::size_t i = 0; i < l.fieldNames.size(); ++i) {
      bindings.emplace_back(l.fieldNames[i], fromValue(o.fields[i]));
    }
    for (std::size_t i = 0; i < args.size(); ++i) bindings.emplace_back(l.paramNames[i], args[i]);
    return substitute(l.body, bindings);
  }

  Reduced destructor(const ast::Sel& s) {  // E-Dtr
    Value recv = toValue(s.receiver);
    if (!recv.isObject()) return Stuck{"selection '" + s.method + "' on non-object " + recv.str()};
    auto l = dtrBody(s.method, recv.asObject().ctor, ctx_);
    if (!l) return Stuck{"no destructor '" + s.method + "' for " + recv.asObject().ctor};
    return instantiate(*l, "this", recv, s.args);
  }

  Reduced consumer(const ast::App& a) {  // E-Csm
    Value self = toValue(a.self);
    if (!self.isObject()) return Stuck{"consumer '" + a.consumer + "' applied to non-object " + self.str()};
    auto l = csmBody(a.consumer, self.asObject().ctor, ctx_);
    if (!l) return Stuck{"no consumer '" + a.consumer + "' clause for " + self.asObject().ctor};
    return instantiate(*l, "self", self, a.args);
  }

  Reduced primitive(const ast::Prim& p) {
    if (!isValue(p.lhs)) {
      return congruence(p.lhs, [&](Expr l) { return prim(p.op, std::move(l), p.rhs); });
    }
    Value lhs = toValue(p.lhs);
    if (p.op == BinOp::And || p.op == BinOp::Or) {
      if (!lhs.isBool()) return Stuck{std::string("operand of '") + spelling(p.op) + "' is not a Bool"};
      bool shortCircuit = (p.op == BinOp::And) != lhs.asBool();
      return shortCircuit ? boolLit(lhs.asBool()) : p.rhs;
    }
    if (!isValue(p.rhs)) {
      return congruence(p.rhs, [&](Expr r) { return prim(p.op, p.lhs, std::move(r)); });
    }
    Value rhs = toValue(p.rhs);
    if (p.op == BinOp::Eq) {
      if (lhs.isInt() && rhs.isInt()) return boolLit(lhs.asInt() == rhs.asInt());
      if (lhs.isBool() && rhs.isBool()) return boolLit(lhs.asBool() == rhs.asBool());
      return Stuck{"'==' on " + lhs.str() + " and " + rhs.str()};
    }
    if (!lhs.isInt() || !rhs.isInt()) {
      return Stuck{std::string("operands of '") + spelling(p.op) + "' are not Ints"};
    }
    auto a = static_cast<std::uint64_t>(lhs.asInt());
    auto b = static_cast<std::uint64_t>(rhs.asInt());
    switch (p.op) {
      case BinOp::Add: return intLit(wrap(a + b));
      case BinOp::Sub: return intLit(wrap(a - b));
      case BinOp::Mul: return intLit(wrap(a * b));
      case BinOp::Le: return boolLit(lhs.asInt() <= rhs.asInt());
      case BinOp::Lt: return boolLit(lhs.asInt() < rhs.asInt());
      default: return Stuck{"unknown operator"};
    }
  }

  const GlobalCtx& ctx_;
};

}  // namespace

StepOutcome step(const Expr& e, const GlobalCtx& ctx) {
  if (isValue(e)) return Done{toValue(e)};
  Reduced r = Stepper(ctx).reduce(e);
  if (auto* s = std::get_if<Stuck>(&r)) return *s;
  return Stepped{std::get<Expr>(std::move(r))};
}

std::optional<Lookup> dtrBody(const std::string& f, const std::string& c, const GlobalCtx& ctx) {
  const ast::Generator* g = ctx.generator(c);
  if (!g) return std::nullopt;
  for (const auto& m : g->methods) {
    if (m.name == f) return Lookup{namesOf(g->fields), namesOf(m.params), m.body};  // DtrGen
  }
  if (const ast::Interface* it = ctx.interface(g->parent)) {
    for (const auto& m : it->methods) {
      if (m.name == f && m.hasBody()) return Lookup{{}, namesOf(m.params), m.body};  // DtrIt
    }
  }
  return std::nullopt;
}

std::optional<Lookup> csmBody(const std::string& f, const std::string& c, const GlobalCtx& ctx) {
  const ast::Constructor* k = ctx.constructor(c);
  if (!k) return std::nullopt;
  const ast::Consumer* consumer = ctx.consumer(f, k->parent);
  if (!consumer) return std::nullopt;
  if (const Clause* cl = consumer->clauseFor(c)) {
    return Lookup{cl->pattern.vars, namesOf(consumer->params), cl->body};  // CsmCtr
  }
  if (const Clause* w = consumer->wildcard()) return Lookup{{}, namesOf(consumer->params), w->body};  // CsmDt
  return std::nullopt;
}

std::string EvalResult::str() const {
  switch (status) {
    case Status::Value: return value->str();
    case Status::FuelExhausted: return "fuel exhausted after " + std::to_string(steps) + " steps";
    case Status::Stuck: return "stuck: " + reason;
  }
  return {};
}

bool EvalResult::agrees(const EvalResult& other) const {
  if (status != other.status) return false;
  return status != Status::Value || *value == *other.value;
}

namespace {

template <class OnStep>
EvalResult run(Expr e, const GlobalCtx& ctx, std::size_t fuel, OnStep onStep) {
  EvalResult r;
  onStep(e);
  for (;;) {
    StepOutcome out = step(e, ctx);
    if (auto* d = std::get_if<Done>(&out)) {
      r.status = EvalResult::Status::Value;
      r.value = d->value;
      break;
    }
    if (auto* s = std::get_if<Stuck>(&out)) {
      r.status = EvalResult::Status::Stuck;
      r.reason = s->reason;
      break;
    }
    if (r.steps == fuel) {
      r.status = EvalResult::Status::FuelExhausted;
      break;
    }
    e = std::get<Stepped>(std::move(out)).next;
    ++r.steps;
    onStep(e);
  }
  r.last = e;
  return r;
}

}  // namespace

EvalResult evalExpr(const Expr& e, const GlobalCtx& ctx, std::size_t fuel) {
  return run(e, ctx, fuel, [](const Expr&) {});
}

EvalResult eval(const Program& program, std::size_t fuel) {
  Program p = desugar(program);
  return evalExpr(p.main, preprocess(p), fuel);
}

Trace traceExpr(const Expr& e, const GlobalCtx& ctx, std::size_t fuel) {
  Trace t;
  t.outcome = run(e, ctx, fuel, [&](const Expr& x) { t.steps.push_back(x); });
  return t;
}

Trace trace(const Program& program, std::size_t fuel) {
  Program p = desugar(program);
  return traceExpr(p.main, preprocess(p), fuel);
}

}  // namespace food
