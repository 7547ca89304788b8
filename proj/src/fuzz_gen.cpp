#include <random>

#include "food/diagnostic.hpp"
#include "food/fuzz.hpp"

namespace food {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
  bool chance(double p) { return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 eng_;
};

struct CtorModel {
  std::string name;
  std::vector<Param> fields;
};

struct OpModel {
  std::string name;
  std::vector<Param> params;
  Type ret;
  bool hasDefault = false;
  Expr defaultBody;
  std::vector<Expr> bodies;  // per constructor; null means "use the default"
};

struct TypeModel {
  std::string name;
  bool oo = true;
  std::vector<CtorModel> ctors;
  std::vector<OpModel> ops;
};

// Where an expression is being generated.
struct Scope {
  int type = -1;  // -1: the main expression
  int op = 0;
  std::string self;
  std::vector<Param> vars;
  std::vector<std::string> recursiveFields;
};

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  Program run() {
    signatures();
    for (int i = 0; i < static_cast<int>(types_.size()); ++i) bodies(i);
    Expr main = loopingMain();
    if (!main) {
      // Prefer a call at the root so that evaluation goes through dispatch.
      Type ground = rng_.chance(0.5) ? Type::integer() : Type::boolean();
      if (rng_.chance(0.8)) main = genCall(ground, cfg_.maxExprDepth + 1, Scope{}).value_or(Expr());
      if (!main) main = gen(ground, cfg_.maxExprDepth + 1, Scope{});
    }
    return assemble(main);
  }

 private:
  Type typeRef(int j) const { return Type::named(types_[j].name); }

  Type groundOrLower(int i, bool includeOwn) {
    std::vector<Type> options{Type::integer(), Type::boolean()};
    for (int j = 0; j < i; ++j) options.push_back(typeRef(j));
    if (includeOwn) options.push_back(typeRef(i));
    return rng_.pick(options);
  }

  void signatures() {
    int nTypes = rng_.range(1, cfg_.maxTypes);
    int nextCtor = 0, nextOp = 0;
    for (int i = 0; i < nTypes; ++i) {
      TypeModel t;
      t.name = "T" + std::to_string(i);
      t.oo = rng_.chance(cfg_.styleMix);
      types_.push_back(t);
    }
    for (int i = 0; i < nTypes; ++i) {
      TypeModel& t = types_[i];
      int nCtors = rng_.range(1, cfg_.maxCtorsPerType);
      for (int c = 0; c < nCtors; ++c) {
        CtorModel k{"C" + std::to_string(nextCtor++), {}};
        int arity = rng_.range(0, cfg_.maxFieldArity);
        for (int f = 0; f < arity; ++f) {
          // Constructor 0 is never self-recursive, so every type has finite values.
          bool own = c > 0 && rng_.chance(cfg_.recursionBias);
          k.fields.push_back(Param{"x" + std::to_string(f), own ? typeRef(i) : groundOrLower(i, false)});
        }
        t.ctors.push_back(std::move(k));
      }
      int nOps = rng_.range(1, cfg_.maxOpsPerType);
      std::set<std::string> used;
      for (int k = 0; k < nOps; ++k) {
        OpModel op;
        if (i > 0 && rng_.chance(cfg_.overloadFraction)) {
          const TypeModel& earlier = types_[rng_.below(static_cast<std::size_t>(i))];
          const std::string& name = rng_.pick(earlier.ops).name;
          if (!used.count(name)) op.name = name;
        }
        if (op.name.empty()) op.name = "f" + std::to_string(nextOp++);
        used.insert(op.name);
        int nParams = rng_.range(0, 2);
        for (int p = 0; p < nParams; ++p) op.params.push_back(Param{"p" + std::to_string(p), groundOrLower(i, true)});
        op.ret = groundOrLower(i, true);
        op.hasDefault = rng_.chance(cfg_.defaultFraction);
        op.bodies.resize(t.ctors.size());
        t.ops.push_back(std::move(op));
      }
    }
  }

  void bodies(int i) {
    TypeModel& t = types_[i];
    std::string self = t.oo ? "this" : "self";
    for (int k = 0; k < static_cast<int>(t.ops.size()); ++k) {
      OpModel& op = t.ops[k];
      if (op.hasDefault) {
        Scope s{i, k, self, {}, {}};
        s.vars.push_back(Param{self, typeRef(i)});
        for (const auto& p : op.params) s.vars.push_back(p);
        op.defaultBody = gen(op.ret, cfg_.maxExprDepth, s);
      }
      for (std::size_t c = 0; c < t.ctors.size(); ++c) {
        if (op.hasDefault && rng_.chance(0.5)) continue;
        Scope s{i, k, self, {}, {}};
        s.vars.push_back(Param{self, typeRef(i)});
        for (const auto& f : t.ctors[c].fields) {
          s.vars.push_back(f);
          if (f.type == typeRef(i)) s.recursiveFields.push_back(f.name);
        }
        for (const auto& p : op.params) s.vars.push_back(p);
        op.bodies[c] = gen(op.ret, cfg_.maxExprDepth, s);
      }
    }
  }

  Expr call(int j, const OpModel& op, Expr receiver, std::vector<Expr> args) const {
    if (types_[j].oo) return sel(std::move(receiver), op.name, std::move(args));
    return app(op.name, std::move(receiver), std::move(args));
  }

  Expr construct(int j, const CtorModel& k, std::vector<Expr> args) const {
    if (types_[j].oo) return newObj(k.name, std::move(args));
    return ctrCall(k.name, std::move(args));
  }

  // Makes one operation diverge and points the main expression at it.
  Expr loopingMain() {
    if (!rng_.chance(cfg_.loopFraction)) return Expr();
    std::vector<std::pair<int, int>> candidates;
    for (int j = 0; j < static_cast<int>(types_.size()); ++j) {
      for (int k = 0; k < static_cast<int>(types_[j].ops.size()); ++k) {
        if (!types_[j].ops[k].ret.isNamed()) candidates.emplace_back(j, k);
      }
    }
    if (candidates.empty()) return Expr();
    auto [j, k] = rng_.pick(candidates);
    OpModel& op = types_[j].ops[k];
    std::vector<Expr> params;
    for (const auto& p : op.params) params.push_back(var(p.name));
    Expr loop = call(j, op, var(types_[j].oo ? "this" : "self"), params);
    op.hasDefault = false;
    op.defaultBody = Expr();
    for (auto& b : op.bodies) b = loop;
    std::vector<Expr> args;
    for (const auto& p : op.params) args.push_back(gen(p.type, 1, Scope{}));
    return call(j, op, gen(typeRef(j), 2, Scope{}), std::move(args));
  }

  std::vector<Expr> genArgs(const std::vector<Param>& ps, int depth, const Scope& s) {
    std::vector<Expr> out;
    for (const auto& p : ps) out.push_back(gen(p.type, depth, s));
    return out;
  }

  std::optional<Expr> varOf(const Type& t, const Scope& s) {
    std::vector<std::string> names;
    for (const auto& v : s.vars) {
      if (v.type == t) names.push_back(v.name);
    }
    if (names.empty()) return std::nullopt;
    return var(rng_.pick(names));
  }

  // A call returning `want`, respecting the termination discipline.
  std::optional<Expr> genCall(const Type& want, int depth, const Scope& s) {
    struct Candidate {
      int type;
      int op;
      std::string receiver;  // empty: any expression of the type
    };
    std::vector<Candidate> recursive, other;
    for (int j = 0; j < static_cast<int>(types_.size()); ++j) {
      for (int k = 0; k < static_cast<int>(types_[j].ops.size()); ++k) {
        if (!(types_[j].ops[k].ret == want)) continue;
        if (s.type < 0 || j < s.type) {
          other.push_back({j, k, {}});
        } else if (j == s.type) {
          for (const auto& f : s.recursiveFields) recursive.push_back({j, k, f});
          if (k < s.op) other.push_back({j, k, s.self});
        }
      }
    }
    if (recursive.empty() && other.empty()) return std::nullopt;
    bool preferRecursive = !recursive.empty() && (other.empty() || rng_.chance(cfg_.recursionBias));
    const Candidate& c = rng_.pick(preferRecursive ? recursive : other);
    const OpModel& op = types_[c.type].ops[c.op];
    Expr receiver = c.receiver.empty() ? gen(typeRef(c.type), depth - 1, s) : var(c.receiver);
    return call(c.type, op, receiver, genArgs(op.params, depth - 1, s));
  }

  Expr gen(const Type& want, int depth, const Scope& s) {
    if (want.isNamed()) return genObject(want, depth, s);
    bool isInt = want == Type::integer();
    int choice = static_cast<int>(rng_.below(depth > 0 ? 6 : 2));
    if (choice == 1) {
      if (auto v = varOf(want, s)) return *v;
      choice = 0;
    }
    if (choice >= 4) {
      if (auto c = genCall(want, depth, s)) return *c;
      choice = 2;
    }
    if (choice == 0) return isInt ? intLit(rng_.range(-3, 9)) : boolLit(rng_.chance(0.5));
    if (choice == 3) {
      return ifExpr(gen(Type::boolean(), depth - 1, s), gen(want, depth - 1, s), gen(want, depth - 1, s));
    }
    if (isInt) {
      static const BinOp ops[] = {BinOp::Add, BinOp::Sub, BinOp::Mul};
      return prim(ops[rng_.below(3)], gen(want, depth - 1, s), gen(want, depth - 1, s));
    }
    switch (rng_.below(4)) {
      case 0:
        return prim(BinOp::Le, gen(Type::integer(), depth - 1, s), gen(Type::integer(), depth - 1, s));
      case 1:
        return prim(BinOp::Eq, gen(Type::integer(), depth - 1, s), gen(Type::integer(), depth - 1, s));
      case 2:
        return prim(BinOp::Lt, gen(Type::integer(), depth - 1, s), gen(Type::integer(), depth - 1, s));
      default:
        return prim(rng_.chance(0.5) ? BinOp::And : BinOp::Or, gen(want, depth - 1, s), gen(want, depth - 1, s));
    }
  }

  Expr genObject(const Type& want, int depth, const Scope& s) {
    int j = 0;
    while (types_[j].name != want.name) ++j;
    const TypeModel& t = types_[j];
    if (depth <= 0) {
      if (rng_.chance(0.5)) {
        if (auto v = varOf(want, s)) return *v;
      }
      return construct(j, t.ctors[0], genArgs(t.ctors[0].fields, 0, s));
    }
    switch (rng_.below(5)) {
      case 0:
        if (auto v = varOf(want, s)) return *v;
        break;
      case 1:
        return ifExpr(gen(Type::boolean(), depth - 1, s), gen(want, depth - 1, s), gen(want, depth - 1, s));
      case 2:
        if (auto c = genCall(want, depth, s)) return *c;
        break;
      default:
        break;
    }
    const CtorModel& k = rng_.pick(t.ctors);
    return construct(j, k, genArgs(k.fields, depth - 1, s));
  }

  Program assemble(Expr main) const {
    Program p;
    auto add = [&](auto node) { p.defs.push_back(Def{std::move(node), {}}); };
    for (const auto& t : types_) {
      if (t.oo) {
        ast::Interface it{t.name, {}};
        for (const auto& op : t.ops) it.methods.push_back(Method{op.name, op.params, op.ret, op.defaultBody});
        add(std::move(it));
        for (std::size_t c = 0; c < t.ctors.size(); ++c) {
          ast::Generator g{t.ctors[c].name, t.ctors[c].fields, t.name, {}};
          for (const auto& op : t.ops) {
            if (op.bodies[c]) g.methods.push_back(Method{op.name, op.params, op.ret, op.bodies[c]});
          }
          add(std::move(g));
        }
      } else {
        add(ast::Datatype{t.name});
        for (const auto& op : t.ops) {
          ast::Consumer f{op.name, t.name, op.params, op.ret, {}, false};
          for (std::size_t c = 0; c < t.ctors.size(); ++c) {
            if (!op.bodies[c]) continue;
            std::vector<std::string> vars;
            for (const auto& x : t.ctors[c].fields) vars.push_back(x.name);
            f.clauses.push_back(Clause{Pattern::of(t.ctors[c].name, vars), op.bodies[c]});
          }
          if (op.hasDefault) f.clauses.push_back(Clause{Pattern::any(), op.defaultBody});
          add(std::move(f));
        }
        for (const auto& k : t.ctors) add(ast::Constructor{k.name, k.fields, t.name});
      }
    }
    p.main = std::move(main);
    return p;
  }

  const GenConfig& cfg_;
  Rng rng_;
  std::vector<TypeModel> types_;
};

}  // namespace

void GenConfig::validate() const {
  auto bound = [](int v, const char* name) {
    if (v < 1) throw Error(std::string(name) + " must be at least 1");
  };
  auto probability = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(std::string(name) + " must be within [0, 1]");
  };
  bound(maxTypes, "maxTypes");
  bound(maxCtorsPerType, "maxCtorsPerType");
  bound(maxOpsPerType, "maxOpsPerType");
  bound(maxFieldArity, "maxFieldArity");
  bound(maxExprDepth, "maxExprDepth");
  probability(styleMix, "styleMix");
  probability(recursionBias, "recursionBias");
  probability(loopFraction, "loopFraction");
  probability(overloadFraction, "overloadFraction");
  probability(defaultFraction, "defaultFraction");
  probability(partialSelection, "partialSelection");
}

Program genProgram(const GenConfig& cfg) {
  cfg.validate();
  return Generator(cfg).run();
}

std::set<std::string> genSelection(const Program& program, const GenConfig& cfg) {
  std::set<std::string> all = declaredTypes(program);
  Rng rng(cfg.seed ^ 0x5e1ec7edULL);
  if (!rng.chance(cfg.partialSelection) || all.size() < 2) return all;
  std::set<std::string> out;
  for (const auto& d : all) {
    if (rng.chance(0.5)) out.insert(d);
  }
  if (out.empty()) out.insert(*all.begin());
  return out;
}

}  // namespace food
