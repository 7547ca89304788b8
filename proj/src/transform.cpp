#include "food/transform.hpp"

#include <algorithm>

#include "food/pretty.hpp"

namespace food {

namespace {

bool contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

std::vector<std::string> paramNames(const std::vector<Param>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.name);
  return out;
}

class Translator {
 public:
  // With `rewrite` off every rule degenerates to its skip variant, which is
  // exactly the typing judgment.
  Translator(const GlobalCtx& ctx, bool rewrite) : ctx_(ctx), rewrite_(rewrite) {}

  Translated expr(const Expr& e, const TypeEnv& env) {
    if (const auto* v = e.as<ast::Var>()) {
      const Type* t = env.lookup(v->name);
      if (!t) fail("unbound variable '" + v->name + "'");
      return {e, *t};
    }
    if (const auto* s = e.as<ast::Sel>()) return selection(*s, env);
    if (const auto* a = e.as<ast::App>()) return application(*a, env);
    if (const auto* c = e.as<ast::CtrCall>()) {
      const auto* def = ctx_.constructor(c->ctor);
      if (!def) {
        fail(ctx_.generator(c->ctor) ? "class " + c->ctor + " must be instantiated with new"
                                     : "unknown constructor '" + c->ctor + "'");
      }
      auto args = arguments(c->ctor, c->args, def->fields, env);
      Type t = Type::named(def->parent);
      // Obj2New / Obj2Obj
      if (rewrite_ && contains(ctx_.ctrOf(def->parent), c->ctor)) return {newObj(c->ctor, args), t};
      return {ctrCall(c->ctor, args), t};
    }
    if (const auto* n = e.as<ast::New>()) {
      const auto* def = ctx_.generator(n->ctor);
      if (!def) {
        fail(ctx_.constructor(n->ctor) ? "constructor " + n->ctor + " cannot be used with new"
                                       : "unknown class '" + n->ctor + "'");
      }
      auto args = arguments(n->ctor, n->args, def->fields, env);
      Type t = Type::named(def->parent);
      // New2Obj / New2New
      if (rewrite_ && contains(ctx_.genOf(def->parent), n->ctor)) return {ctrCall(n->ctor, args), t};
      return {newObj(n->ctor, args), t};
    }
    if (const auto* o = e.as<ast::Obj>()) return {e, valueType(o->value)};
    if (e.as<ast::IntLit>()) return {e, Type::integer()};
    if (e.as<ast::BoolLit>()) return {e, Type::boolean()};
    if (const auto* p = e.as<ast::Prim>()) return primitive(*p, env);
    const auto& i = std::get<ast::If>(e->node);
    Expr cond = expect(i.cond, env, Type::boolean());
    Translated then = expr(i.then, env);
    Expr otherwise = expect(i.otherwise, env, then.type);
    return {ifExpr(cond, then.expr, otherwise), then.type};
  }

  Expr expect(const Expr& e, const TypeEnv& env, const Type& want) {
    Translated t = expr(e, env);
    if (!(t.type == want)) {
      fail("expression `" + show(e) + "` has type " + t.type.str() + ", expected " + want.str());
    }
    return t.expr;
  }

  [[noreturn]] void fail(const std::string& message) const { throw TypeError(message); }

 private:
  std::vector<Expr> arguments(const std::string& callee, const std::vector<Expr>& args,
                              const std::vector<Type>& want, const TypeEnv& env) {
    if (args.size() != want.size()) {
      fail("'" + callee + "' expects " + std::to_string(want.size()) + " argument(s), got " +
           std::to_string(args.size()));
    }
    std::vector<Expr> out;
    for (std::size_t i = 0; i < args.size(); ++i) out.push_back(expect(args[i], env, want[i]));
    return out;
  }

  std::vector<Expr> arguments(const std::string& callee, const std::vector<Expr>& args,
                              const std::vector<Param>& want, const TypeEnv& env) {
    std::vector<Type> types;
    for (const auto& p : want) types.push_back(p.type);
    return arguments(callee, args, types, env);
  }

  Translated selection(const ast::Sel& s, const TypeEnv& env) {
    Translated recv = expr(s.receiver, env);
    if (!recv.type.isNamed()) {
      fail("cannot select '" + s.method + "' on a value of type " + recv.type.str());
    }
    const std::string& d = recv.type.name;
    auto sig = ctx_.dtrSig.find(SigKey::member(s.method, d));
    if (sig == ctx_.dtrSig.end()) fail(d + " has no destructor '" + s.method + "'");
    auto args = arguments(s.method, s.args, sig->second.params, env);
    const Type& ret = sig->second.result();
    // Sel2App / Sel2Sel
    if (rewrite_ && ctx_.it.count(d) && contains(ctx_.dtrOf(d), s.method)) {
      return {app(s.method, recv.expr, args), ret};
    }
    return {sel(recv.expr, s.method, args), ret};
  }

  Translated application(const ast::App& a, const TypeEnv& env) {
    Translated self = expr(a.self, env);
    if (!self.type.isNamed()) {
      fail("cannot apply consumer '" + a.consumer + "' to a value of type " + self.type.str());
    }
    const std::string& d = self.type.name;
    auto sig = ctx_.sig.find(SigKey::member(a.consumer, d));
    if (sig == ctx_.sig.end()) fail(d + " has no consumer '" + a.consumer + "'");
    const Type& inner = sig->second.result();
    auto args = arguments(a.consumer, a.args, inner.params, env);
    // App2Sel / App2App
    if (rewrite_ && ctx_.dt.count(d) && contains(ctx_.csmOf(d), a.consumer)) {
      return {sel(self.expr, a.consumer, args), inner.result()};
    }
    return {app(a.consumer, self.expr, args), inner.result()};
  }

  Translated primitive(const ast::Prim& p, const TypeEnv& env) {
    switch (p.op) {
      case BinOp::Add:
      case BinOp::Sub:
      case BinOp::Mul:
        return {prim(p.op, expect(p.lhs, env, Type::integer()), expect(p.rhs, env, Type::integer())),
                Type::integer()};
      case BinOp::Le:
      case BinOp::Lt:
        return {prim(p.op, expect(p.lhs, env, Type::integer()), expect(p.rhs, env, Type::integer())),
                Type::boolean()};
      case BinOp::And:
      case BinOp::Or:
        return {prim(p.op, expect(p.lhs, env, Type::boolean()), expect(p.rhs, env, Type::boolean())),
                Type::boolean()};
      case BinOp::Eq: {
        Translated lhs = expr(p.lhs, env);
        if (lhs.type.isNamed() || lhs.type.isArrow()) {
          fail("'==' compares Int or Bool values, not " + lhs.type.str());
        }
        return {prim(p.op, lhs.expr, expect(p.rhs, env, lhs.type)), Type::boolean()};
      }
    }
    fail("unknown operator");
  }

  Type valueType(const Value& v) {
    if (v.isInt()) return Type::integer();
    if (v.isBool()) return Type::boolean();
    const Object& o = v.asObject();
    auto sig = ctx_.sig.find(SigKey::global(o.ctor));
    if (sig == ctx_.sig.end()) fail("object of unknown class '" + o.ctor + "'");
    const auto& want = sig->second.params;
    if (want.size() != o.fields.size()) fail("object " + v.str() + " has the wrong number of fields");
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (!(valueType(o.fields[i]) == want[i])) fail("object " + v.str() + " has an ill-typed field");
    }
    return sig->second.result();
  }

  const GlobalCtx& ctx_;
  bool rewrite_;
};

/// Program-level rules. Holds the restricted context.
class ProgramTranslator {
 public:
  explicit ProgramTranslator(const GlobalCtx& ctx) : ctx_(ctx), tr_(ctx, true) {}

  TransformResult run(const Program& p) {
    TransformResult out{{}, Type::integer()};
    for (const auto& d : p.defs) {
      current_ = &d;
      try {
        definition(d, out.program.defs);
      } catch (const TypeError& e) {
        rethrow(e, "in " + d.name());
      }
    }
    current_ = nullptr;
    try {
      Translated main = tr_.expr(p.main, {});
      out.program.main = main.expr;
      out.programType = main.type;
    } catch (const TypeError& e) {
      rethrow(e, "in main expression");
    }
    return out;
  }

 private:
  [[noreturn]] void rethrow(const TypeError& e, const std::string& where) const {
    std::vector<Diagnostic> ds;
    for (auto d : e.diagnostics()) {
      d.message = where + ": " + d.message;
      if (current_ && d.line == 0) {
        d.line = current_->pos.line;
        d.column = current_->pos.column;
      }
      ds.push_back(std::move(d));
    }
    throw TypeError(std::move(ds));
  }

  Expr body(const Expr& e, const TypeEnv& env, const Type& ret) { return tr_.expect(e, env, ret); }

  void emit(std::vector<Def>& out, auto node) { out.push_back(Def{std::move(node), current_->pos}); }

  void definition(const Def& d, std::vector<Def>& out) {
    if (const auto* it = d.as<ast::Interface>()) {
      if (ctx_.it.count(it->name)) return interfaceToDatatype(*it, out);
      ast::Interface kept = *it;  // It2It
      TypeEnv self = TypeEnv{{"this", Type::named(it->name)}};
      for (auto& m : kept.methods) {
        if (m.hasBody()) m.body = body(m.body, self.with(m.params), m.ret);
      }
      return emit(out, std::move(kept));
    }
    if (const auto* g = d.as<ast::Generator>()) {
      if (contains(ctx_.genOf(g->parent), g->name)) {  // Gen2Ctr
        return emit(out, ast::Constructor{g->name, g->fields, g->parent});
      }
      ast::Generator kept = *g;  // Gen2Gen
      TypeEnv self = TypeEnv{{"this", Type::named(g->parent)}}.with(g->fields);
      for (auto& m : kept.methods) m.body = body(m.body, self.with(m.params), m.ret);
      return emit(out, std::move(kept));
    }
    if (const auto* dt = d.as<ast::Datatype>()) {
      if (ctx_.dt.count(dt->name)) return datatypeToInterface(*dt, out);
      return emit(out, *dt);  // Dt2Dt
    }
    if (const auto* c = d.as<ast::Constructor>()) {
      if (contains(ctx_.ctrOf(c->parent), c->name)) return constructorToGenerator(*c, out);
      return emit(out, *c);  // Ctr2Ctr
    }
    const auto& f = std::get<ast::Consumer>(d.node);
    if (ctx_.dt.count(f.selfType)) return;  // CsmElim
    ast::Consumer kept = f;  // Csm2Csm
    TypeEnv self = TypeEnv{{"self", Type::named(f.selfType)}}.with(f.params);
    for (auto& cl : kept.clauses) cl.body = body(cl.body, patternEnv(self, cl.pattern), f.ret);
    emit(out, std::move(kept));
  }

  TypeEnv patternEnv(const TypeEnv& env, const Pattern& p) {
    if (p.wildcard) return env;
    auto fields = ctx_.fieldsOf(p.ctor);
    if (!fields) tr_.fail("unknown constructor '" + p.ctor + "' in pattern");
    if (fields->size() != p.vars.size()) tr_.fail("pattern " + p.ctor + " has the wrong arity");
    TypeEnv out = env;
    for (std::size_t i = 0; i < p.vars.size(); ++i) out = out.with(p.vars[i], (*fields)[i].type);
    return out;
  }

  // It2Dt with Dec2Csm / Fun2Csm / Fun2Case.
  void interfaceToDatatype(const ast::Interface& it, std::vector<Def>& out) {
    emit(out, ast::Datatype{it.name});
    TypeEnv self = TypeEnv{{"this", Type::named(it.name)}};
    for (const auto& m : it.methods) {
      ast::Consumer c{m.name, it.name, m.params, m.ret, {}, false};
      for (const auto& gname : ctx_.genOf(it.name)) {
        const ast::Generator* g = ctx_.generator(gname);
        auto impl = std::find_if(g->methods.begin(), g->methods.end(),
                                 [&](const Method& x) { return x.name == m.name; });
        if (impl == g->methods.end()) {
          if (!m.hasBody()) tr_.fail("class " + gname + " does not implement '" + m.name + "'");
          continue;
        }
        Expr e = body(impl->body, self.with(g->fields).with(impl->params), m.ret);
        c.clauses.push_back(Clause{Pattern::of(gname, paramNames(g->fields)), rename(e, "this", "self")});
      }
      if (m.hasBody()) {
        Expr e = body(m.body, self.with(m.params), m.ret);
        c.clauses.push_back(Clause{Pattern::any(), rename(e, "this", "self")});
      }
      emit(out, std::move(c));
    }
  }

  // Dt2It with Csm2Dec / Csm2Fun.
  void datatypeToInterface(const ast::Datatype& dt, std::vector<Def>& out) {
    ast::Interface it{dt.name, {}};
    TypeEnv self = TypeEnv{{"self", Type::named(dt.name)}};
    for (const auto& fname : ctx_.csmOf(dt.name)) {
      const ast::Consumer* f = ctx_.consumer(fname, dt.name);
      Method m{f->name, f->params, f->ret, Expr()};
      if (const Clause* w = f->wildcard()) {
        m.body = rename(body(w->body, self.with(f->params), f->ret), "self", "this");
      }
      it.methods.push_back(std::move(m));
    }
    emit(out, std::move(it));
  }

  // Ctr2Gen with Case2Fun.
  void constructorToGenerator(const ast::Constructor& c, std::vector<Def>& out) {
    ast::Generator g{c.name, c.fields, c.parent, {}};
    TypeEnv self = TypeEnv{{"self", Type::named(c.parent)}};
    for (const auto& fname : ctx_.csmOf(c.parent)) {
      const ast::Consumer* f = ctx_.consumer(fname, c.parent);
      const Clause* cl = f->clauseFor(c.name);
      if (!cl) continue;
      Expr e = body(cl->body, patternEnv(self, cl->pattern).with(f->params), f->ret);
      g.methods.push_back(Method{f->name, f->params, f->ret, rename(e, "self", "this")});
    }
    emit(out, std::move(g));
  }

  const GlobalCtx& ctx_;
  Translator tr_;
  const Def* current_ = nullptr;
};

}  // namespace

TransformResult transform(const Program& program, const std::set<std::string>& selected) {
  GlobalCtx ctx = restrict(preprocess(program), selected);
  return ProgramTranslator(ctx).run(program);
}

TransformResult transform(const Program& program) {
  return transform(program, declaredTypes(program));
}

Translated transformExpr(const Expr& e, const GlobalCtx& ctx, const TypeEnv& env) {
  return Translator(ctx, true).expr(e, env);
}

Type typecheck(const Program& program) { return transform(program, {}).programType; }

Type typeOf(const Expr& e, const GlobalCtx& ctx, const TypeEnv& env) {
  return Translator(ctx, false).expr(e, env).type;
}

}  // namespace food
