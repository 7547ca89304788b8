#include "food/pretty.hpp"

#include "food/diagnostic.hpp"

namespace food {

namespace {

int precedence(BinOp op) {
  switch (op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Eq:
    case BinOp::Le:
    case BinOp::Lt: return 3;
    case BinOp::Add:
    case BinOp::Sub: return 4;
    case BinOp::Mul: return 5;
  }
  return 0;
}

class Printer {
 public:
  explicit Printer(bool runtime) : runtime_(runtime) {}

  std::string expr(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
  }

 private:
  // Operand position: binary operands and selection receivers. If-expressions
  // extend as far right as possible, so they always need parentheses here.
  void operand(const Expr& e, std::string& out, int minPrec) {
    bool parens = false;
    if (e.as<ast::If>()) parens = true;
    if (const auto* p = e.as<ast::Prim>()) parens = precedence(p->op) < minPrec;
    if (parens) out += "(";
    print(e, out);
    if (parens) out += ")";
  }

  void args(const std::vector<Expr>& xs, std::string& out) {
    out += "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ", ";
      print(xs[i], out);
    }
    out += ")";
  }

  void print(const Expr& e, std::string& out) {
    if (const auto* v = e.as<ast::Var>()) {
      out += v->name;
    } else if (const auto* s = e.as<ast::Sel>()) {
      // A negative literal receiver would lex as a binary minus.
      bool parens = s->receiver.as<ast::IntLit>() && s->receiver.as<ast::IntLit>()->value < 0;
      if (parens) out += "(";
      operand(s->receiver, out, 6);
      if (parens) out += ")";
      out += "." + s->method;
      args(s->args, out);
    } else if (const auto* a = e.as<ast::App>()) {
      out += a->consumer + "(";
      print(a->self, out);
      out += ")";
      args(a->args, out);
    } else if (const auto* c = e.as<ast::CtrCall>()) {
      out += c->ctor;
      args(c->args, out);
    } else if (const auto* n = e.as<ast::New>()) {
      out += "new " + n->ctor;
      args(n->args, out);
    } else if (const auto* o = e.as<ast::Obj>()) {
      if (!runtime_) throw Error("runtime object " + o->value.str() + " has no source syntax");
      out += o->value.str();
    } else if (const auto* i = e.as<ast::IntLit>()) {
      out += std::to_string(i->value);
    } else if (const auto* b = e.as<ast::BoolLit>()) {
      out += b->value ? "true" : "false";
    } else if (const auto* p = e.as<ast::Prim>()) {
      int prec = precedence(p->op);
      operand(p->lhs, out, prec);
      out += " ";
      out += spelling(p->op);
      out += " ";
      operand(p->rhs, out, prec + 1);
    } else if (const auto* f = e.as<ast::If>()) {
      out += "if (";
      print(f->cond, out);
      out += ") ";
      print(f->then, out);
      out += " else ";
      print(f->otherwise, out);
    }
  }

  bool runtime_;
};

std::string params(const std::vector<Param>& ps) {
  std::string out = "(";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ", ";
    out += ps[i].name + ": " + ps[i].type.str();
  }
  return out + ")";
}

std::string method(const Method& m) {
  std::string out = "def " + m.name + params(m.params) + ": " + m.ret.str();
  if (m.hasBody()) out += " = " + pretty(m.body);
  return out;
}

std::string methodBlock(const std::vector<Method>& ms) {
  if (ms.empty()) return "{}";
  std::string out = "{\n";
  for (const auto& m : ms) out += "  " + method(m) + "\n";
  return out + "}";
}

std::string pattern(const Pattern& p) {
  if (p.wildcard) return "_";
  std::string out = p.ctor + "(";
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    if (i) out += ", ";
    out += p.vars[i];
  }
  return out + ")";
}

}  // namespace

std::string pretty(const Expr& e) { return Printer(false).expr(e); }

std::string show(const Expr& e) { return Printer(true).expr(e); }

std::string pretty(const Def& def) {
  if (const auto* d = def.as<ast::Datatype>()) return "data " + d->name;
  if (const auto* i = def.as<ast::Interface>()) {
    return "interface " + i->name + " " + methodBlock(i->methods);
  }
  if (const auto* c = def.as<ast::Constructor>()) {
    return "case " + c->name + params(c->fields) + " extends " + c->parent;
  }
  if (const auto* g = def.as<ast::Generator>()) {
    return "class " + g->name + params(g->fields) + " implements " + g->parent + " " +
           methodBlock(g->methods);
  }
  const auto& c = std::get<ast::Consumer>(def.node);
  std::string out = "def " + c.name + "(self: " + c.selfType + ")" + params(c.params) + ": " +
                    c.ret.str() + " = ";
  if (c.bare && c.clauses.size() == 1 && c.clauses[0].pattern.wildcard) {
    return out + pretty(c.clauses[0].body);
  }
  if (c.clauses.empty()) return out + "match {}";
  out += "match {\n";
  for (const auto& cl : c.clauses) {
    out += "  case " + pattern(cl.pattern) + " => " + pretty(cl.body) + "\n";
  }
  return out + "}";
}

std::string pretty(const Program& program) {
  std::string out;
  for (const auto& d : program.defs) out += pretty(d) + "\n";
  if (!program.defs.empty()) out += "\n";
  return out + pretty(program.main) + "\n";
}

}  // namespace food
