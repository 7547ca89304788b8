#include "food/wellformed.hpp"

#include <algorithm>
#include <set>

namespace food {

namespace {

class Checker {
 public:
  Checker(const GlobalCtx& ctx, std::vector<Diagnostic>& out) : ctx_(ctx), out_(out) {}

  void definition(const Def& d) {
    pos_ = d.pos;
    where_ = d.name();
    if (const auto* it = d.as<ast::Interface>()) interface(*it);
    if (const auto* c = d.as<ast::Constructor>()) fields(c->fields);
    if (const auto* g = d.as<ast::Generator>()) generator(*g);
    if (const auto* f = d.as<ast::Consumer>()) consumer(*f);
  }

  void main(const Expr& e) {
    pos_ = {};
    where_ = "main expression";
    expr(e, {});
  }

 private:
  void report(std::string message) {
    out_.push_back(Diagnostic{"in " + where_ + ": " + message, pos_.line, pos_.column});
  }

  void type(const Type& t) {
    if (t.isNamed() && !ctx_.declaresType(t.name)) report("unknown type '" + t.name + "'");
  }

  void fields(const std::vector<Param>& ps) {
    std::set<std::string> seen;
    for (const auto& p : ps) {
      type(p.type);
      if (!seen.insert(p.name).second) report("duplicate binder '" + p.name + "'");
    }
  }

  static std::set<std::string> names(const std::vector<Param>& ps) {
    std::set<std::string> out;
    for (const auto& p : ps) out.insert(p.name);
    return out;
  }

  void interface(const ast::Interface& it) {
    for (const auto& m : it.methods) {
      fields(m.params);
      type(m.ret);
      if (!m.hasBody()) continue;
      auto scope = names(m.params);
      scope.insert("this");
      expr(m.body, scope);
    }
  }

  void generator(const ast::Generator& g) {
    fields(g.fields);
    const ast::Interface* it = ctx_.interface(g.parent);
    std::set<std::string> implemented;
    for (const auto& m : g.methods) {
      if (!implemented.insert(m.name).second) {
        report("method '" + m.name + "' is implemented twice");
        continue;
      }
      const Method* decl = nullptr;
      if (it) {
        for (const auto& x : it->methods) {
          if (x.name == m.name) decl = &x;
        }
      }
      if (it && !decl) {
        report("method '" + m.name + "' is not a destructor of " + g.parent);
      } else if (decl && (decl->params != m.params || !(decl->ret == m.ret))) {
        report("method '" + m.name + "' does not match the signature declared by " + g.parent);
      }
      auto scope = names(g.fields);
      for (const auto& p : m.params) {
        if (scope.count(p.name)) report("parameter '" + p.name + "' of '" + m.name + "' shadows a field");
      }
      for (const auto& p : m.params) scope.insert(p.name);
      scope.insert("this");
      expr(m.body, scope);
    }
    if (!it) return;
    for (const auto& decl : it->methods) {
      if (!decl.hasBody() && !implemented.count(decl.name)) {
        report("class " + g.name + " does not implement '" + decl.name + "'");
      }
    }
  }

  void consumer(const ast::Consumer& f) {
    fields(f.params);
    type(f.ret);
    if (f.params.end() != std::find_if(f.params.begin(), f.params.end(),
                                       [](const Param& p) { return p.name == "self"; })) {
      report("'self' cannot be redeclared");
    }
    const auto& ctors = ctx_.ctrOf(f.selfType);
    std::set<std::string> covered;
    bool wildcard = false;
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
      const Clause& cl = f.clauses[i];
      auto scope = names(f.params);
      scope.insert("self");
      if (cl.pattern.wildcard) {
        if (wildcard) report("more than one wildcard clause");
        if (i + 1 != f.clauses.size()) report("wildcard must be last");
        wildcard = true;
      } else {
        const auto& p = cl.pattern;
        if (std::find(ctors.begin(), ctors.end(), p.ctor) == ctors.end()) {
          report("pattern " + p.ctor + " is not a constructor of " + f.selfType);
        } else if (!covered.insert(p.ctor).second) {
          report("duplicate clause for " + p.ctor);
        } else {
          auto fs = ctx_.fieldsOf(p.ctor);
          std::vector<std::string> expected;
          for (const auto& x : *fs) expected.push_back(x.name);
          if (expected != p.vars) {
            std::string want;
            for (const auto& x : expected) want += (want.empty() ? "" : ", ") + x;
            report("pattern variables of " + p.ctor + " must be the field names (" + want + ")");
          }
        }
        for (const auto& v : p.vars) {
          if (scope.count(v)) report("pattern variable '" + v + "' shadows a parameter or self");
          scope.insert(v);
        }
      }
      expr(cl.body, scope);
    }
    if (!wildcard) {
      for (const auto& c : ctors) {
        if (!covered.count(c)) report("non-exhaustive match: missing a clause for " + c);
      }
    }
  }

  void args(const std::vector<Expr>& xs, const std::set<std::string>& scope) {
    for (const auto& a : xs) expr(a, scope);
  }

  void expr(const Expr& e, const std::set<std::string>& scope) {
    if (const auto* v = e.as<ast::Var>()) {
      if (!scope.count(v->name)) report("unbound variable '" + v->name + "'");
    } else if (const auto* s = e.as<ast::Sel>()) {
      expr(s->receiver, scope);
      args(s->args, scope);
      bool known = false, arity = false;
      for (const auto& [key, t] : ctx_.dtrSig) {
        if (key.name != s->method) continue;
        known = true;
        arity = arity || t.params.size() == s->args.size();
      }
      if (!known) report("no destructor named '" + s->method + "'");
      else if (!arity) report("wrong number of arguments to destructor '" + s->method + "'");
    } else if (const auto* a = e.as<ast::App>()) {
      expr(a->self, scope);
      args(a->args, scope);
      bool known = false, arity = false;
      for (const auto& [key, t] : ctx_.sig) {
        if (key.owner.empty() || key.name != a->consumer) continue;
        known = true;
        arity = arity || t.result().params.size() == a->args.size();
      }
      if (!known) report("no consumer named '" + a->consumer + "'");
      else if (!arity) report("wrong number of arguments to consumer '" + a->consumer + "'");
    } else if (const auto* c = e.as<ast::CtrCall>()) {
      args(c->args, scope);
      if (!ctx_.constructor(c->ctor)) {
        report(ctx_.generator(c->ctor) ? "class " + c->ctor + " must be instantiated with new"
                                       : "no constructor named '" + c->ctor + "'");
      } else if (ctx_.constructor(c->ctor)->fields.size() != c->args.size()) {
        report("wrong number of arguments to constructor " + c->ctor);
      }
    } else if (const auto* n = e.as<ast::New>()) {
      args(n->args, scope);
      if (!ctx_.generator(n->ctor)) {
        report(ctx_.constructor(n->ctor) ? "constructor " + n->ctor + " cannot be used with new"
                                         : "no class named '" + n->ctor + "'");
      } else if (ctx_.generator(n->ctor)->fields.size() != n->args.size()) {
        report("wrong number of arguments to class " + n->ctor);
      }
    } else if (e.as<ast::Obj>()) {
      report("runtime object in source program");
    } else if (const auto* p = e.as<ast::Prim>()) {
      expr(p->lhs, scope);
      expr(p->rhs, scope);
    } else if (const auto* i = e.as<ast::If>()) {
      expr(i->cond, scope);
      expr(i->then, scope);
      expr(i->otherwise, scope);
    }
  }

  const GlobalCtx& ctx_;
  std::vector<Diagnostic>& out_;
  SourcePos pos_;
  std::string where_;
};

}  // namespace

std::vector<Diagnostic> check(const Program& program, const GlobalCtx& ctx) {
  std::vector<Diagnostic> out;
  Checker checker(ctx, out);
  for (const auto& d : program.defs) checker.definition(d);
  checker.main(program.main);
  return out;
}

}  // namespace food
