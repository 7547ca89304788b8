#include "food/fuzz.hpp"

#include <algorithm>
#include <map>
#include <type_traits>

#include <json.hpp>

#include "food/context.hpp"
#include "food/pretty.hpp"
#include "food/transform.hpp"
#include "food/wellformed.hpp"

namespace food {

namespace {

std::string joinDiagnostics(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) out += (out.empty() ? "" : "; ") + d.str();
  return out;
}

bool anyMention(const Program& p, bool inConsumers, const std::string& name) {
  for (const auto& d : p.defs) {
    if (inConsumers) {
      if (const auto* f = d.as<ast::Consumer>()) {
        for (const auto& cl : f->clauses) {
          if (mentions(cl.body, name)) return true;
        }
      }
      continue;
    }
    const std::vector<Method>* ms = nullptr;
    if (const auto* it = d.as<ast::Interface>()) ms = &it->methods;
    if (const auto* g = d.as<ast::Generator>()) ms = &g->methods;
    if (!ms) continue;
    for (const auto& m : *ms) {
      if (m.hasBody() && mentions(m.body, name)) return true;
    }
  }
  return false;
}

class PropertyRun {
 public:
  PropertyRun(const std::set<std::string>& selected, const PropertyOptions& opts)
      : selected_(selected), opts_(opts) {}

  PropertyReport run(const Program& input) {
    Program p = desugar(input);
    GlobalCtx ctx;
    try {
      ctx = preprocess(p);
      auto ds = check(p, ctx);
      if (!ds.empty()) return fail("wellformed", joinDiagnostics(ds));
    } catch (const Error& e) {
      return fail("wellformed", e.what());
    }
    Type type;
    try {
      type = typecheck(p);
    } catch (const Error& e) {
      return fail("typecheck", e.what());
    }
    GlobalCtx restricted = restrict(ctx, selected_);

    Program once;
    try {
      once = transformOnce(p);
    } catch (const Error& e) {
      return fail("transform", e.what());
    }

    std::optional<GlobalCtx> onceCtx;
    try {
      onceCtx = preprocess(once);
      auto ds = check(once, *onceCtx);
      if (!ds.empty()) fail("wellformed-preservation", joinDiagnostics(ds));
    } catch (const Error& e) {
      fail("wellformed-preservation", e.what());
    }
    try {
      Type after = typecheck(once);
      if (!(after == type)) fail("type-preservation", "type " + type.str() + " became " + after.str());
    } catch (const Error& e) {
      fail("type-preservation", e.what());
    }
    if (anyMention(once, true, "this")) fail("hygiene", "a consumer clause mentions 'this'");
    if (anyMention(once, false, "self")) fail("hygiene", "a destructor body mentions 'self'");

    roundTrip(p, once, type);
    if (onceCtx) {
      contextDuality(restricted, *onceCtx);
      lookupDuality(ctx, restricted, *onceCtx);
    }
    differential(p, ctx, once, onceCtx);
    typeSafety("original", p, ctx);
    if (onceCtx) typeSafety("transformed", once, *onceCtx);
    return std::move(report_);
  }

 private:
  PropertyReport fail(std::string property, std::string detail) {
    report_.failures.push_back({std::move(property), std::move(detail)});
    return report_;
  }

  Program transformOnce(const Program& p) {
    Program out = transform(p, selected_).program;
    if (opts_.mutator) out = opts_.mutator(p, selected_, out);
    return out;
  }

  void roundTrip(const Program& p, const Program& once, const Type& type) {
    try {
      Program twice = transformOnce(once);
      if (!(canonicalize(twice) == canonicalize(p))) {
        fail("roundtrip", "transforming twice does not give back the input");
        return;
      }
      Type t = typecheck(twice);
      if (!(t == type)) fail("roundtrip", "type " + type.str() + " became " + t.str());
    } catch (const Error& e) {
      fail("roundtrip", e.what());
    }
  }

  void contextDuality(const GlobalCtx& restricted, const GlobalCtx& onceCtx) {
    if (!(restrict(onceCtx, selected_) == translateCtx(restricted))) {
      fail("context-duality", "context of the output differs from the translated context");
    }
  }

  // dtrBody before the transform corresponds to csmBody after it, and dually.
  void lookupDuality(const GlobalCtx& ctx, const GlobalCtx& restricted, const GlobalCtx& after) {
    for (const auto& d : selected_) {
      bool oo = ctx.it.count(d) > 0;
      const auto& classes = oo ? ctx.genOf(d) : ctx.ctrOf(d);
      const auto& ops = oo ? ctx.dtrOf(d) : ctx.csmOf(d);
      for (const auto& c : classes) {
        for (const auto& f : ops) {
          auto before = oo ? dtrBody(f, c, ctx) : csmBody(f, c, ctx);
          if (!before) {
            fail("lookup-duality", "no body for (" + f + ", " + c + ") before the transform");
            continue;
          }
          auto now = oo ? csmBody(f, c, after) : dtrBody(f, c, after);
          std::string where = "(" + f + ", " + c + ")";
          if (!now) {
            fail("lookup-duality", "no body for " + where + " after the transform");
            continue;
          }
          const char* self = oo ? "this" : "self";
          const char* other = oo ? "self" : "this";
          TypeEnv env{{self, Type::named(d)}};
          if (!before->fieldNames.empty()) {
            auto fields = *ctx.fieldsOf(c);
            for (std::size_t i = 0; i < fields.size(); ++i) env = env.with(before->fieldNames[i], fields[i].type);
          }
          const Type& sig = oo ? ctx.dtrSig.at(SigKey::member(f, d))
                               : ctx.sig.at(SigKey::member(f, d)).result();
          auto paramTypes = sig.params;
          for (std::size_t i = 0; i < paramTypes.size(); ++i) env = env.with(before->paramNames[i], paramTypes[i]);
          try {
            Expr expected = rename(transformExpr(before->body, restricted, env).expr, self, other);
            if (now->fieldNames != before->fieldNames || now->paramNames != before->paramNames ||
                !(now->body == expected)) {
              fail("lookup-duality", "body of " + where + " does not correspond");
            }
          } catch (const Error& e) {
            fail("lookup-duality", e.what());
          }
        }
      }
    }
  }

  void differential(const Program& p, const GlobalCtx& ctx, const Program& once,
                    const std::optional<GlobalCtx>& onceCtx) {
    report_.original = evalExpr(p.main, ctx, opts_.fuel);
    if (!onceCtx) {
      fail("differential", "transformed program has no valid context");
      return;
    }
    report_.transformed = evalExpr(once.main, *onceCtx, opts_.fuel);
    if (!report_.original->agrees(*report_.transformed)) {
      fail("differential", report_.original->str() + " vs " + report_.transformed->str());
    }
  }

  void typeSafety(const std::string& which, const Program& p, const GlobalCtx& ctx) {
    Type type;
    try {
      type = typeOf(p.main, ctx);
    } catch (const Error& e) {
      fail("preservation", which + ": main expression is not typeable: " + e.what());
      return;
    }
    Trace t = traceExpr(p.main, ctx, opts_.safetyFuel);
    for (std::size_t i = 1; i < t.steps.size(); ++i) {
      try {
        Type now = typeOf(t.steps[i], ctx);
        if (!(now == type)) {
          fail("preservation", which + ": step " + std::to_string(i) + " has type " + now.str() +
                                   ", expected " + type.str());
          return;
        }
      } catch (const Error& e) {
        fail("preservation", which + ": step " + std::to_string(i) + ": " + e.what());
        return;
      }
    }
    if (t.outcome.status == EvalResult::Status::Stuck) {
      fail("progress", which + ": " + t.outcome.reason + " at `" + show(t.outcome.last) + "`");
    }
  }

  const std::set<std::string>& selected_;
  const PropertyOptions& opts_;
  PropertyReport report_;
};

// Shrinking ----------------------------------------------------------------

bool valid(const Program& p) {
  try {
    Program q = desugar(p);
    if (!check(q, preprocess(q)).empty()) return false;
    typecheck(q);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// A method or clause body: definition index and method or clause index.
struct BodyRef {
  std::size_t def;
  std::size_t item;
};

template <class F>
void forEachBody(const Program& p, const F& f) {
  for (std::size_t i = 0; i < p.defs.size(); ++i) {
    const auto& d = p.defs[i];
    const std::vector<Method>* methods = nullptr;
    if (const auto* it = d.as<ast::Interface>()) methods = &it->methods;
    if (const auto* g = d.as<ast::Generator>()) methods = &g->methods;
    if (methods) {
      for (std::size_t k = 0; k < methods->size(); ++k) {
        const Method& m = (*methods)[k];
        if (!m.hasBody()) continue;
        std::vector<std::string> scope{"this"};
        if (const auto* g = d.as<ast::Generator>()) {
          for (const auto& x : g->fields) scope.push_back(x.name);
        }
        for (const auto& x : m.params) scope.push_back(x.name);
        f(BodyRef{i, k}, m.body, scope);
      }
    }
    if (const auto* c = d.as<ast::Consumer>()) {
      for (std::size_t k = 0; k < c->clauses.size(); ++k) {
        std::vector<std::string> scope{"self"};
        for (const auto& x : c->params) scope.push_back(x.name);
        for (const auto& v : c->clauses[k].pattern.vars) scope.push_back(v);
        f(BodyRef{i, k}, c->clauses[k].body, scope);
      }
    }
  }
}

Program withBody(const Program& p, const BodyRef& at, const Expr& body) {
  Program q = p;
  std::visit(
      [&](auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ast::Interface> || std::is_same_v<N, ast::Generator>) {
          n.methods[at.item].body = body;
        } else if constexpr (std::is_same_v<N, ast::Consumer>) {
          n.clauses[at.item].body = body;
        }
      },
      q.defs[at.def].node);
  return q;
}

Program withoutField(const Program& p, const std::string& ctor, std::size_t k) {
  auto dropArg = [&](const Expr& e) {
    return rewriteBottomUp(e, [&](const Expr& x) -> Expr {
      if (const auto* c = x.as<ast::CtrCall>(); c && c->ctor == ctor && k < c->args.size()) {
        auto args = c->args;
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
        return ctrCall(ctor, std::move(args));
      }
      if (const auto* n = x.as<ast::New>(); n && n->ctor == ctor && k < n->args.size()) {
        auto args = n->args;
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
        return newObj(ctor, std::move(args));
      }
      return x;
    });
  };
  Program q = p;
  q.main = dropArg(q.main);
  for (auto& d : q.defs) {
    std::visit(
        [&](auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, ast::Constructor>) {
            if (n.name == ctor) n.fields.erase(n.fields.begin() + static_cast<std::ptrdiff_t>(k));
          } else if constexpr (std::is_same_v<N, ast::Generator>) {
            if (n.name == ctor) n.fields.erase(n.fields.begin() + static_cast<std::ptrdiff_t>(k));
            for (auto& m : n.methods) m.body = dropArg(m.body);
          } else if constexpr (std::is_same_v<N, ast::Interface>) {
            for (auto& m : n.methods) {
              if (m.hasBody()) m.body = dropArg(m.body);
            }
          } else if constexpr (std::is_same_v<N, ast::Consumer>) {
            for (auto& cl : n.clauses) {
              if (!cl.pattern.wildcard && cl.pattern.ctor == ctor) {
                cl.pattern.vars.erase(cl.pattern.vars.begin() + static_cast<std::ptrdiff_t>(k));
              }
              cl.body = dropArg(cl.body);
            }
          }
        },
        d.node);
  }
  return q;
}

// Drops parameter k of every operation named f, and argument k of its calls.
Program withoutParam(const Program& p, const std::string& f, std::size_t k) {
  auto erase = [&](auto& xs) {
    if (k < xs.size()) xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(k));
  };
  auto dropArg = [&](const Expr& e) {
    return rewriteBottomUp(e, [&](const Expr& x) -> Expr {
      if (const auto* s = x.as<ast::Sel>(); s && s->method == f) {
        auto args = s->args;
        erase(args);
        return sel(s->receiver, f, std::move(args));
      }
      if (const auto* a = x.as<ast::App>(); a && a->consumer == f) {
        auto args = a->args;
        erase(args);
        return app(f, a->self, std::move(args));
      }
      return x;
    });
  };
  Program q = p;
  q.main = dropArg(q.main);
  for (auto& d : q.defs) {
    std::visit(
        [&](auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, ast::Interface> || std::is_same_v<N, ast::Generator>) {
            for (auto& m : n.methods) {
              if (m.name == f) erase(m.params);
              if (m.hasBody()) m.body = dropArg(m.body);
            }
          } else if constexpr (std::is_same_v<N, ast::Consumer>) {
            if (n.name == f) erase(n.params);
            for (auto& cl : n.clauses) cl.body = dropArg(cl.body);
          }
        },
        d.node);
  }
  return q;
}

std::vector<Program> candidates(const Program& p) {
  std::vector<Program> out;
  auto without = [&](auto keep) {
    Program q;
    q.main = p.main;
    for (const auto& d : p.defs) {
      if (keep(d)) q.defs.push_back(d);
    }
    return q;
  };
  // Whole type groups.
  for (const auto& d : declaredTypes(p)) {
    out.push_back(without([&](const Def& x) {
      if (x.name() == d) return false;
      if (const auto* c = x.as<ast::Constructor>()) return c->parent != d;
      if (const auto* g = x.as<ast::Generator>()) return g->parent != d;
      if (const auto* f = x.as<ast::Consumer>()) return f->selfType != d;
      return true;
    }));
  }
  // Single definitions.
  for (std::size_t i = 0; i < p.defs.size(); ++i) {
    if (p.defs[i].as<ast::Datatype>() || p.defs[i].as<ast::Interface>()) continue;
    Program q = p;
    q.defs.erase(q.defs.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(std::move(q));
  }
  for (std::size_t i = 0; i < p.defs.size(); ++i) {
    // Interface operations, together with their implementations.
    if (const auto* it = p.defs[i].as<ast::Interface>()) {
      for (const auto& m : it->methods) {
        Program q = p;
        for (auto& d : q.defs) {
          if (auto* x = std::get_if<ast::Interface>(&d.node); x && x->name == it->name) {
            std::erase_if(x->methods, [&](const Method& y) { return y.name == m.name; });
          }
          if (auto* g = std::get_if<ast::Generator>(&d.node); g && g->parent == it->name) {
            std::erase_if(g->methods, [&](const Method& y) { return y.name == m.name; });
          }
        }
        out.push_back(std::move(q));
      }
    }
    // Single methods and clauses.
    if (const auto* g = p.defs[i].as<ast::Generator>()) {
      for (std::size_t k = 0; k < g->methods.size(); ++k) {
        Program q = p;
        auto& x = std::get<ast::Generator>(q.defs[i].node);
        x.methods.erase(x.methods.begin() + static_cast<std::ptrdiff_t>(k));
        out.push_back(std::move(q));
      }
    }
    if (const auto* f = p.defs[i].as<ast::Consumer>()) {
      for (std::size_t k = 0; k < f->clauses.size(); ++k) {
        Program q = p;
        auto& x = std::get<ast::Consumer>(q.defs[i].node);
        x.clauses.erase(x.clauses.begin() + static_cast<std::ptrdiff_t>(k));
        x.bare = false;
        out.push_back(std::move(q));
      }
    }
  }
  // Single fields, with the matching arguments and pattern variables.
  for (const auto& d : p.defs) {
    const auto* c = d.as<ast::Constructor>();
    const auto* g = d.as<ast::Generator>();
    std::size_t arity = c ? c->fields.size() : g ? g->fields.size() : 0;
    for (std::size_t k = 0; k < arity; ++k) out.push_back(withoutField(p, d.name(), k));
  }
  // Single parameters, with the matching arguments.
  std::map<std::string, std::size_t> arity;
  for (const auto& d : p.defs) {
    if (const auto* c = d.as<ast::Consumer>()) arity[c->name] = std::max(arity[c->name], c->params.size());
    if (const auto* it = d.as<ast::Interface>()) {
      for (const auto& m : it->methods) arity[m.name] = std::max(arity[m.name], m.params.size());
    }
  }
  for (const auto& [f, n] : arity) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(withoutParam(p, f, k));
  }
  // Smaller main expressions.
  auto subs = subterms(p.main);
  for (std::size_t i = 1; i < subs.size(); ++i) {
    Program q = p;
    q.main = subs[i];
    out.push_back(std::move(q));
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (const auto& c : children(subs[i])) {
      Program q = p;
      q.main = replaceSubterm(p.main, i, c);
      out.push_back(std::move(q));
    }
    for (const auto& lit : {intLit(0), boolLit(false), boolLit(true)}) {
      if (size(subs[i]) == 1) break;
      Program q = p;
      q.main = replaceSubterm(p.main, i, lit);
      out.push_back(std::move(q));
    }
  }
  // Smaller bodies: a variable in scope, or some node replaced by one of its
  // children or by a literal.
  const std::vector<Expr> literals{intLit(0), boolLit(false), boolLit(true)};
  std::vector<Expr> closed;
  forEachBody(p, [&](const BodyRef& at, const Expr& body, const std::vector<std::string>& scope) {
    for (const auto& v : scope) {
      if (!(body == var(v))) out.push_back(withBody(p, at, var(v)));
    }
    auto nodes = subterms(body);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (const auto& c : children(nodes[i])) out.push_back(withBody(p, at, replaceSubterm(body, i, c)));
      if (size(nodes[i]) > 1) {
        for (const auto& lit : literals) out.push_back(withBody(p, at, replaceSubterm(body, i, lit)));
      }
      if (freeVars(nodes[i]).empty() && size(nodes[i]) > 1) closed.push_back(nodes[i]);
    }
  });
  // The main expression replaced by a closed expression found in a body.
  for (const auto& e : closed) {
    Program q = p;
    q.main = e;
    out.push_back(std::move(q));
  }
  return out;
}

// Definitions, fields, parameters, clauses and expression nodes.
std::size_t weight(const Program& p) {
  std::size_t n = size(p.main) + p.defs.size();
  forEachBody(p, [&](const BodyRef&, const Expr& body, const std::vector<std::string>& scope) {
    n += size(body) + scope.size();
  });
  for (const auto& d : p.defs) {
    if (const auto* it = d.as<ast::Interface>()) n += it->methods.size();
    if (const auto* c = d.as<ast::Constructor>()) n += c->fields.size();
  }
  return n;
}

std::set<std::string> keepDeclared(const std::set<std::string>& selected, const Program& p) {
  std::set<std::string> all = declaredTypes(p), out;
  for (const auto& d : selected) {
    if (all.count(d)) out.insert(d);
  }
  return out;
}

}  // namespace

bool PropertyReport::failed(const std::string& property) const {
  for (const auto& f : failures) {
    if (f.property == property) return true;
  }
  return false;
}

PropertyReport checkProgram(const Program& program, const std::set<std::string>& selected,
                            const PropertyOptions& opts) {
  return PropertyRun(selected, opts).run(program);
}

Shrunk shrink(const Program& program, const std::set<std::string>& selected, const std::string& property,
              const PropertyOptions& opts) {
  Shrunk best{desugar(program), selected};
  // Candidates may not grow the program, and equal-weight moves may not revisit
  // a program, so the search terminates.
  std::set<std::string> seen{pretty(best.program)};
  // Candidates are screened with a step budget scaled to the input, then
  // confirmed with the full options.
  PropertyOptions quick = opts;
  if (auto r = checkProgram(best.program, best.selected, opts); r.original && r.original->ok()) {
    std::size_t budget = std::max<std::size_t>(1000, 4 * r.original->steps);
    quick.fuel = std::min(quick.fuel, budget);
    quick.safetyFuel = std::min(quick.safetyFuel, budget);
  }
  bool progress = true;
  while (progress) {
    progress = false;
    std::size_t limit = weight(best.program);
    for (auto& c : candidates(best.program)) {
      if (weight(c) > limit || !valid(c)) continue;
      std::string key = pretty(c);
      if (seen.count(key)) continue;
      auto s = keepDeclared(best.selected, c);
      if (!checkProgram(c, s, quick).failed(property)) continue;
      if (!checkProgram(c, s, opts).failed(property)) continue;
      seen.insert(std::move(key));
      best = Shrunk{std::move(c), std::move(s)};
      progress = true;
      break;
    }
  }
  return best;
}

std::string TrialResult::json(bool withProgram) const {
  nlohmann::ordered_json j;
  j["trial"] = index;
  j["seed"] = seed;
  j["selected"] = selected;
  j["defs"] = program.defs.size();
  j["ok"] = report.ok();
  if (report.original) {
    j["result"] = report.original->str();
    j["steps"] = report.original->steps;
  }
  auto failures = nlohmann::ordered_json::array();
  for (const auto& f : report.failures) failures.push_back({{"property", f.property}, {"detail", f.detail}});
  j["failures"] = failures;
  if (withProgram) j["program"] = pretty(program);
  if (witness) {
    j["witness"] = pretty(witness->program);
    j["witness_selected"] = witness->selected;
  }
  return j.dump();
}

std::size_t FuzzReport::failures() const {
  std::size_t n = 0;
  for (const auto& t : trials) n += t.report.ok() ? 0 : 1;
  return n;
}

std::string FuzzReport::summary() const {
  nlohmann::ordered_json j;
  j["summary"] = true;
  j["trials"] = trials.size();
  j["failures"] = failures();
  std::size_t values = 0, exhausted = 0;
  for (const auto& t : trials) {
    if (!t.report.original) continue;
    values += t.report.original->ok() ? 1 : 0;
    exhausted += t.report.original->status == EvalResult::Status::FuelExhausted ? 1 : 0;
  }
  j["terminated"] = values;
  j["fuel_exhausted"] = exhausted;
  return j.dump();
}

FuzzReport runProperties(const GenConfig& cfg, std::size_t trials, const PropertyOptions& opts,
                         bool shrinkFailures, const std::function<void(const TrialResult&)>& onTrial) {
  cfg.validate();
  FuzzReport report;
  for (std::size_t i = 0; i < trials; ++i) {
    GenConfig c = cfg;
    c.seed = cfg.seed + i;
    TrialResult t;
    t.index = i;
    t.seed = c.seed;
    t.program = genProgram(c);
    t.selected = genSelection(t.program, c);
    t.report = checkProgram(t.program, t.selected, opts);
    if (!t.report.ok() && shrinkFailures) {
      t.witness = shrink(t.program, t.selected, t.report.failures.front().property, opts);
    }
    if (onTrial) onTrial(t);
    report.trials.push_back(std::move(t));
  }
  return report;
}

}  // namespace food
