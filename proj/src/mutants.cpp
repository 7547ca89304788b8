#include "food/mutants.hpp"

#include <algorithm>
#include <map>

namespace food {

namespace {

struct Origin {
  std::set<std::string> fromInterfaces;  // selected interfaces, now datatypes
  std::set<std::string> fromDatatypes;   // selected datatypes, now interfaces

  Origin(const Program& input, const std::set<std::string>& selected) {
    for (const auto& d : input.defs) {
      if (!selected.count(d.name())) continue;
      if (d.as<ast::Interface>()) fromInterfaces.insert(d.name());
      if (d.as<ast::Datatype>()) fromDatatypes.insert(d.name());
    }
  }

  bool generatedConsumer(const Def& d) const {
    const auto* f = d.as<ast::Consumer>();
    return f && fromInterfaces.count(f->selfType);
  }
  bool generatedClass(const Def& d) const {
    const auto* g = d.as<ast::Generator>();
    return g && fromDatatypes.count(g->parent);
  }
  bool generatedInterface(const Def& d) const { return d.as<ast::Interface>() && fromDatatypes.count(d.name()); }
  bool generated(const Def& d) const {
    return generatedConsumer(d) || generatedClass(d) || generatedInterface(d);
  }
};

using ExprFn = std::function<Expr(const Expr&)>;

Def mapBodies(const Def& d, const ExprFn& f) {
  Def out = d;
  std::visit(
      [&](auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ast::Interface> || std::is_same_v<N, ast::Generator>) {
          for (auto& m : n.methods) {
            if (m.hasBody()) m.body = f(m.body);
          }
        } else if constexpr (std::is_same_v<N, ast::Consumer>) {
          for (auto& cl : n.clauses) cl.body = f(cl.body);
        }
      },
      out.node);
  return out;
}

Program mapGenerated(const Program& input, const std::set<std::string>& selected, const Program& output,
                     const ExprFn& f) {
  Origin origin(input, selected);
  Program out = output;
  for (auto& d : out.defs) {
    if (origin.generated(d)) d = mapBodies(d, f);
  }
  return out;
}

using Scope = std::map<std::string, Type>;

std::map<std::string, std::vector<Param>> fieldTable(const Program& p) {
  std::map<std::string, std::vector<Param>> out;
  for (const auto& d : p.defs) {
    if (const auto* c = d.as<ast::Constructor>()) out[c->name] = c->fields;
    if (const auto* g = d.as<ast::Generator>()) out[g->name] = g->fields;
  }
  return out;
}

Scope scopeOf(const ast::Consumer& f, const Clause& cl, const std::map<std::string, std::vector<Param>>& fields) {
  Scope s{{"self", Type::named(f.selfType)}};
  for (const auto& p : f.params) s[p.name] = p.type;
  if (!cl.pattern.wildcard) {
    const auto& fs = fields.at(cl.pattern.ctor);
    for (std::size_t i = 0; i < cl.pattern.vars.size() && i < fs.size(); ++i) s[cl.pattern.vars[i]] = fs[i].type;
  }
  return s;
}

Scope scopeOf(const ast::Generator& g, const Method& m) {
  Scope s{{"this", Type::named(g.parent)}};
  for (const auto& x : g.fields) s[x.name] = x.type;
  for (const auto& p : m.params) s[p.name] = p.type;
  return s;
}

// Every free variable of `body` is bound in both scopes with the same type,
// so moving the body keeps the program well typed.
bool fits(const Expr& body, const Scope& from, const Scope& to) {
  for (const auto& v : freeVars(body)) {
    auto a = from.find(v);
    auto b = to.find(v);
    if (a == from.end() || b == to.end() || !(a->second == b->second)) return false;
  }
  return true;
}

Program swapClauseBodies(const Program& input, const std::set<std::string>& selected, const Program& output) {
  Origin origin(input, selected);
  Program out = output;
  auto fields = fieldTable(output);
  for (auto& d : out.defs) {
    if (!origin.generatedConsumer(d)) continue;
    auto& f = std::get<ast::Consumer>(d.node);
    for (std::size_t i = 0; i + 1 < f.clauses.size(); ++i) {
      auto& a = f.clauses[i];
      auto& b = f.clauses[i + 1];
      Scope sa = scopeOf(f, a, fields), sb = scopeOf(f, b, fields);
      if (a.body == b.body || !fits(a.body, sa, sb) || !fits(b.body, sb, sa)) continue;
      std::swap(a.body, b.body);
      break;
    }
  }
  return out;
}

Program swapMethodBodies(const Program& input, const std::set<std::string>& selected, const Program& output) {
  Origin origin(input, selected);
  Program out = output;
  for (auto& d : out.defs) {
    if (!origin.generatedClass(d)) continue;
    auto& g = std::get<ast::Generator>(d.node);
    bool done = false;
    for (std::size_t i = 0; i < g.methods.size() && !done; ++i) {
      for (std::size_t j = i + 1; j < g.methods.size() && !done; ++j) {
        auto& a = g.methods[i];
        auto& b = g.methods[j];
        if (!(a.ret == b.ret) || a.body == b.body) continue;
        Scope sa = scopeOf(g, a), sb = scopeOf(g, b);
        if (!fits(a.body, sa, sb) || !fits(b.body, sb, sa)) continue;
        std::swap(a.body, b.body);
        done = true;
      }
    }
  }
  return out;
}

Program dropWildcard(const Program& input, const std::set<std::string>& selected, const Program& output) {
  Origin origin(input, selected);
  Program out = output;
  for (auto& d : out.defs) {
    if (!origin.generatedConsumer(d)) continue;
    auto& f = std::get<ast::Consumer>(d.node);
    std::erase_if(f.clauses, [](const Clause& c) { return c.pattern.wildcard; });
  }
  return out;
}

Program dropOverride(const Program& input, const std::set<std::string>& selected, const Program& output) {
  Origin origin(input, selected);
  Program out = output;
  std::map<std::string, std::set<std::string>> defaults;  // interface -> destructors with a default
  for (const auto& d : out.defs) {
    if (const auto* it = d.as<ast::Interface>()) {
      for (const auto& m : it->methods) {
        if (m.hasBody()) defaults[it->name].insert(m.name);
      }
    }
  }
  for (auto& d : out.defs) {
    if (origin.generatedConsumer(d)) {
      auto& f = std::get<ast::Consumer>(d.node);
      if (f.wildcard() && f.clauses.size() > 1) f.clauses.erase(f.clauses.begin());
    } else if (origin.generatedClass(d)) {
      auto& g = std::get<ast::Generator>(d.node);
      const auto& withDefault = defaults[g.parent];
      auto it = std::find_if(g.methods.begin(), g.methods.end(),
                             [&](const Method& m) { return withDefault.count(m.name); });
      if (it != g.methods.end()) g.methods.erase(it);
    }
  }
  return out;
}

Program swapCtorArgs(const Program&, const std::set<std::string>&, const Program& output) {
  std::map<std::string, std::vector<Param>> fields;
  for (const auto& d : output.defs) {
    if (const auto* c = d.as<ast::Constructor>()) fields[c->name] = c->fields;
    if (const auto* g = d.as<ast::Generator>()) fields[g->name] = g->fields;
  }
  auto swapFirstPair = [&](const std::string& ctor, std::vector<Expr> args) -> std::optional<std::vector<Expr>> {
    auto it = fields.find(ctor);
    if (it == fields.end() || args.size() < 2) return std::nullopt;
    const auto& fs = it->second;
    for (std::size_t i = 0; i < fs.size() && i < args.size(); ++i) {
      for (std::size_t j = i + 1; j < fs.size() && j < args.size(); ++j) {
        if (fs[i].type == fs[j].type && !(args[i] == args[j])) {
          std::swap(args[i], args[j]);
          return args;
        }
      }
    }
    return std::nullopt;
  };
  ExprFn f = [&](const Expr& e) -> Expr {
    if (const auto* c = e.as<ast::CtrCall>()) {
      if (auto args = swapFirstPair(c->ctor, c->args)) return ctrCall(c->ctor, *args);
    }
    if (const auto* n = e.as<ast::New>()) {
      if (auto args = swapFirstPair(n->ctor, n->args)) return newObj(n->ctor, *args);
    }
    return e;
  };
  Program out = output;
  for (auto& d : out.defs) d = mapBodies(d, [&](const Expr& e) { return rewriteBottomUp(e, f); });
  out.main = rewriteBottomUp(out.main, f);
  return out;
}

Program ignoreSelection(const Program& input, const std::set<std::string>& selected, const Program& output) {
  Origin origin(input, selected);
  std::set<std::string> names;
  for (const auto& d : input.defs) {
    if (const auto* it = d.as<ast::Interface>(); it && origin.fromInterfaces.count(it->name)) {
      for (const auto& m : it->methods) names.insert(m.name);
    }
  }
  ExprFn f = [&](const Expr& e) -> Expr {
    if (const auto* a = e.as<ast::App>(); a && names.count(a->consumer)) return sel(a->self, a->consumer, a->args);
    return e;
  };
  Program out = output;
  for (auto& d : out.defs) d = mapBodies(d, [&](const Expr& e) { return rewriteBottomUp(e, f); });
  out.main = rewriteBottomUp(out.main, f);
  return out;
}

}  // namespace

const std::vector<Mutant>& allMutants() {
  static const std::vector<Mutant> all{
      Mutant::SwapClauseBodies, Mutant::DropWildcard,     Mutant::WrongSubstOoToFp, Mutant::WrongSubstFpToOo,
      Mutant::SwapMethodBodies, Mutant::DropOverride,     Mutant::SwapCtorArgs,     Mutant::FlipBoolLiteral,
      Mutant::BumpIntLiteral,   Mutant::IgnoreSelection,
  };
  return all;
}

std::string name(Mutant m) {
  switch (m) {
    case Mutant::SwapClauseBodies: return "swap-clause-bodies";
    case Mutant::DropWildcard: return "drop-wildcard";
    case Mutant::WrongSubstOoToFp: return "wrong-subst-oo-to-fp";
    case Mutant::WrongSubstFpToOo: return "wrong-subst-fp-to-oo";
    case Mutant::SwapMethodBodies: return "swap-method-bodies";
    case Mutant::DropOverride: return "drop-override";
    case Mutant::SwapCtorArgs: return "swap-ctor-args";
    case Mutant::FlipBoolLiteral: return "flip-bool-literal";
    case Mutant::BumpIntLiteral: return "bump-int-literal";
    case Mutant::IgnoreSelection: return "ignore-selection";
  }
  return "unknown";
}

Mutator mutator(Mutant m) {
  switch (m) {
    case Mutant::SwapClauseBodies: return swapClauseBodies;
    case Mutant::DropWildcard: return dropWildcard;
    case Mutant::WrongSubstOoToFp:
      return [](const Program& in, const std::set<std::string>& s, const Program& out) {
        Origin origin(in, s);
        Program p = out;
        for (auto& d : p.defs) {
          if (origin.generatedConsumer(d)) d = mapBodies(d, [](const Expr& e) { return rename(e, "self", "this"); });
        }
        return p;
      };
    case Mutant::WrongSubstFpToOo:
      return [](const Program& in, const std::set<std::string>& s, const Program& out) {
        Origin origin(in, s);
        Program p = out;
        for (auto& d : p.defs) {
          if (origin.generatedClass(d) || origin.generatedInterface(d)) {
            d = mapBodies(d, [](const Expr& e) { return rename(e, "this", "self"); });
          }
        }
        return p;
      };
    case Mutant::SwapMethodBodies: return swapMethodBodies;
    case Mutant::DropOverride: return dropOverride;
    case Mutant::SwapCtorArgs: return swapCtorArgs;
    case Mutant::FlipBoolLiteral:
      return [](const Program& in, const std::set<std::string>& s, const Program& out) {
        return mapGenerated(in, s, out, [](const Expr& e) {
          return rewriteBottomUp(e, [](const Expr& x) {
            if (const auto* b = x.as<ast::BoolLit>()) return boolLit(!b->value);
            return x;
          });
        });
      };
    case Mutant::BumpIntLiteral:
      return [](const Program& in, const std::set<std::string>& s, const Program& out) {
        return mapGenerated(in, s, out, [](const Expr& e) {
          return rewriteBottomUp(e, [](const Expr& x) {
            if (const auto* i = x.as<ast::IntLit>()) {
              return intLit(static_cast<std::int64_t>(static_cast<std::uint64_t>(i->value) + 1));
            }
            return x;
          });
        });
      };
    case Mutant::IgnoreSelection: return ignoreSelection;
  }
  return {};
}

}  // namespace food
