#include "food/context.hpp"

#include <algorithm>
#include <sstream>

#include "food/diagnostic.hpp"

namespace food {

namespace {

const std::vector<std::string>& listOf(const std::map<std::string, std::vector<std::string>>& m,
                                       const std::string& d) {
  static const std::vector<std::string> empty;
  auto it = m.find(d);
  return it == m.end() ? empty : it->second;
}

std::vector<Type> paramTypes(const std::vector<Param>& ps) {
  std::vector<Type> out;
  for (const auto& p : ps) out.push_back(p.type);
  return out;
}

Diagnostic at(const Def& d, std::string message) {
  return Diagnostic{std::move(message), d.pos.line, d.pos.column};
}

}  // namespace

const std::vector<std::string>& GlobalCtx::ctrOf(const std::string& d) const { return listOf(ctr, d); }
const std::vector<std::string>& GlobalCtx::genOf(const std::string& d) const { return listOf(gen, d); }
const std::vector<std::string>& GlobalCtx::dtrOf(const std::string& d) const { return listOf(dtr, d); }
const std::vector<std::string>& GlobalCtx::csmOf(const std::string& d) const { return listOf(csm, d); }

const Def* GlobalCtx::def(const SigKey& key) const {
  auto it = defs.find(key);
  return it == defs.end() ? nullptr : &it->second;
}

const ast::Interface* GlobalCtx::interface(const std::string& d) const {
  const Def* x = def(SigKey::global(d));
  return x ? x->as<ast::Interface>() : nullptr;
}

const ast::Generator* GlobalCtx::generator(const std::string& c) const {
  const Def* x = def(SigKey::global(c));
  return x ? x->as<ast::Generator>() : nullptr;
}

const ast::Constructor* GlobalCtx::constructor(const std::string& c) const {
  const Def* x = def(SigKey::global(c));
  return x ? x->as<ast::Constructor>() : nullptr;
}

const ast::Consumer* GlobalCtx::consumer(const std::string& f, const std::string& d) const {
  const Def* x = def(SigKey::member(f, d));
  return x ? x->as<ast::Consumer>() : nullptr;
}

std::optional<std::string> GlobalCtx::parentOf(const std::string& c) const {
  if (const auto* g = generator(c)) return g->parent;
  if (const auto* k = constructor(c)) return k->parent;
  return std::nullopt;
}

std::optional<std::vector<Param>> GlobalCtx::fieldsOf(const std::string& c) const {
  if (const auto* g = generator(c)) return g->fields;
  if (const auto* k = constructor(c)) return k->fields;
  return std::nullopt;
}

bool GlobalCtx::declaresType(const std::string& d) const {
  const Def* x = def(SigKey::global(d));
  return x && (x->as<ast::Datatype>() || x->as<ast::Interface>());
}

bool GlobalCtx::operator==(const GlobalCtx& o) const {
  return dt == o.dt && it == o.it && ctr == o.ctr && gen == o.gen && dtr == o.dtr && csm == o.csm &&
         sig == o.sig && dtrSig == o.dtrSig;
}

TypeEnv TypeEnv::with(std::string name, Type type) const {
  TypeEnv out = *this;
  out.entries_.emplace_back(std::move(name), std::move(type));
  return out;
}

TypeEnv TypeEnv::with(const std::vector<Param>& params) const {
  TypeEnv out = *this;
  for (const auto& p : params) out.entries_.emplace_back(p.name, p.type);
  return out;
}

const Type* TypeEnv::lookup(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

GlobalCtx preprocess(const Program& program) {
  GlobalCtx ctx;
  std::vector<Diagnostic> errors;

  // Pass 1: names of types and classes, plus consumers keyed by (f, D).
  for (const auto& d : program.defs) {
    SigKey key = SigKey::global(d.name());
    if (const auto* c = d.as<ast::Consumer>()) key = SigKey::member(c->name, c->selfType);
    if (!ctx.defs.emplace(key, d).second) {
      errors.push_back(at(d, "duplicate definition '" + key.str() + "'"));
      continue;
    }
    if (d.as<ast::Datatype>()) ctx.dt.insert(d.name());
    if (d.as<ast::Interface>()) ctx.it.insert(d.name());
  }

  auto kindOf = [&](const std::string& name) -> const Def* { return ctx.def(SigKey::global(name)); };

  // Pass 2: membership lists and signatures, in source order.
  for (const auto& d : program.defs) {
    if (const auto* it = d.as<ast::Interface>()) {
      std::set<std::string> seen;
      for (const auto& m : it->methods) {
        if (!seen.insert(m.name).second) {
          errors.push_back(at(d, "duplicate destructor '" + m.name + "' in interface " + it->name));
          continue;
        }
        ctx.dtr[it->name].push_back(m.name);
        ctx.dtrSig[SigKey::member(m.name, it->name)] = Type::arrow(paramTypes(m.params), m.ret);
      }
    } else if (const auto* c = d.as<ast::Constructor>()) {
      const Def* parent = kindOf(c->parent);
      if (!parent) {
        errors.push_back(at(d, "constructor " + c->name + " extends undeclared type " + c->parent));
      } else if (!parent->as<ast::Datatype>()) {
        errors.push_back(at(d, "constructor " + c->name + " must extend a datatype, " + c->parent +
                                   " is an interface"));
      } else {
        ctx.ctr[c->parent].push_back(c->name);
      }
      ctx.sig[SigKey::global(c->name)] = Type::arrow(paramTypes(c->fields), Type::named(c->parent));
    } else if (const auto* g = d.as<ast::Generator>()) {
      const Def* parent = kindOf(g->parent);
      if (!parent) {
        errors.push_back(at(d, "class " + g->name + " implements undeclared type " + g->parent));
      } else if (!parent->as<ast::Interface>()) {
        errors.push_back(at(d, "class " + g->name + " must implement an interface, " + g->parent +
                                   " is a datatype"));
      } else {
        ctx.gen[g->parent].push_back(g->name);
      }
      ctx.sig[SigKey::global(g->name)] = Type::arrow(paramTypes(g->fields), Type::named(g->parent));
    } else if (const auto* f = d.as<ast::Consumer>()) {
      const Def* self = kindOf(f->selfType);
      if (!self) {
        errors.push_back(at(d, "consumer " + f->name + " is defined on undeclared type " + f->selfType));
      } else if (!self->as<ast::Datatype>()) {
        errors.push_back(at(d, "consumer " + f->name + " must be defined on a datatype, " +
                                   f->selfType + " is an interface"));
      } else {
        ctx.csm[f->selfType].push_back(f->name);
      }
      ctx.sig[SigKey::member(f->name, f->selfType)] = Type::arrow(
          {Type::named(f->selfType)}, Type::arrow(paramTypes(f->params), f->ret));
    }
  }

  if (!errors.empty()) throw Error(std::move(errors));
  return ctx;
}

GlobalCtx restrict(const GlobalCtx& ctx, const std::set<std::string>& selected) {
  for (const auto& d : selected) {
    if (!ctx.dt.count(d) && !ctx.it.count(d)) {
      throw Error("selected type '" + d + "' is not a declared datatype or interface");
    }
  }
  GlobalCtx out = ctx;
  for (const auto& d : ctx.dt) {
    if (selected.count(d)) continue;
    out.dt.erase(d);
    out.ctr.erase(d);
    out.csm.erase(d);
  }
  for (const auto& d : ctx.it) {
    if (selected.count(d)) continue;
    out.it.erase(d);
    out.gen.erase(d);
    out.dtr.erase(d);
  }
  return out;
}

GlobalCtx translateCtx(const GlobalCtx& ctx) {
  GlobalCtx out = ctx;
  std::swap(out.dt, out.it);
  std::swap(out.ctr, out.gen);
  std::swap(out.dtr, out.csm);
  for (const auto& [d, fs] : ctx.dtr) {
    for (const auto& f : fs) {
      SigKey key = SigKey::member(f, d);
      auto found = ctx.dtrSig.find(key);
      if (found == ctx.dtrSig.end()) continue;
      out.dtrSig.erase(key);
      out.sig[key] = Type::arrow({Type::named(d)}, found->second);
    }
  }
  for (const auto& [d, fs] : ctx.csm) {
    for (const auto& f : fs) {
      SigKey key = SigKey::member(f, d);
      auto found = ctx.sig.find(key);
      if (found == ctx.sig.end()) continue;
      out.sig.erase(key);
      out.dtrSig[key] = found->second.result();
    }
  }
  return out;
}

std::string dump(const GlobalCtx& ctx) {
  std::ostringstream os;
  auto set = [&](const char* label, const std::set<std::string>& s) {
    os << label << " = {";
    bool first = true;
    for (const auto& x : s) {
      os << (first ? "" : ", ") << x;
      first = false;
    }
    os << "}\n";
  };
  auto lists = [&](const char* label, const std::map<std::string, std::vector<std::string>>& m) {
    for (const auto& [d, xs] : m) {
      os << label << "(" << d << ") = [";
      for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
      os << "]\n";
    }
  };
  set("dt", ctx.dt);
  set("it", ctx.it);
  lists("ctr", ctx.ctr);
  lists("gen", ctx.gen);
  lists("dtr", ctx.dtr);
  lists("csm", ctx.csm);
  for (const auto& [k, t] : ctx.sig) os << "sig(" << k.str() << ") = " << t.str() << "\n";
  for (const auto& [k, t] : ctx.dtrSig) os << "dtrSig(" << k.str() << ") = " << t.str() << "\n";
  return os.str();
}

std::set<std::string> declaredTypes(const Program& program) {
  std::set<std::string> out;
  for (const auto& d : program.defs) {
    if (d.as<ast::Datatype>() || d.as<ast::Interface>()) out.insert(d.name());
  }
  return out;
}

}  // namespace food
