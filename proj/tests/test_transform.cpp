#include <doctest.h>

#include "food/parser.hpp"
#include "food/pretty.hpp"
#include "food/transform.hpp"
#include "support.hpp"

using namespace food;
using food::testing::loadCorpus;
using food::testing::readCorpus;

namespace {

Program canon(const Program& p) { return canonicalize(p); }

TypeEnv env(std::initializer_list<std::pair<std::string, Type>> xs) { return TypeEnv(xs); }

Type named(const std::string& n) { return Type::named(n); }

}  // namespace

TEST_CASE("object-oriented sets transform to the functional program") {
  auto r = transform(loadCorpus("sets_oop.food"), {"Set"});
  CHECK(canon(r.program) == canon(loadCorpus("sets_fp.food")));
  CHECK(r.programType == Type::boolean());
}

TEST_CASE("functional sets transform to the object-oriented program") {
  auto r = transform(loadCorpus("sets_fp.food"), {"Set"});
  CHECK(canon(r.program) == canon(loadCorpus("sets_oop.food")));
}

TEST_CASE("the golden functional text is the functional set program") {
  CHECK(parseOrThrow(readCorpus("sets_oop.Set.expected")) == canon(loadCorpus("sets_fp.food")));
}

TEST_CASE("the expression pair transforms both ways") {
  CHECK(canon(transform(loadCorpus("exp_oop.food")).program) == canon(loadCorpus("exp_fp.food")));
  CHECK(canon(transform(loadCorpus("exp_fp.food")).program) == canon(loadCorpus("exp_oop.food")));
}

TEST_CASE("an empty selection skips everything") {
  Program p = loadCorpus("sets_oop.food");
  CHECK(transform(p, {}).program == p);
  Program q = loadCorpus("setlist_fp.food");
  CHECK(transform(q, {}).program == q);
}

TEST_CASE("selecting Set in the mixed program leaves List untouched") {
  Program p = loadCorpus("setlist_oop.food");
  Program out = transform(p, {"Set"}).program;
  std::string text = pretty(canon(out));
  CHECK(text == readCorpus("setlist_oop.Set.expected"));
  for (const char* def : {"List", "Nil", "Cons"}) {
    auto in = std::find_if(p.defs.begin(), p.defs.end(), [&](const Def& d) { return d.name() == def; });
    auto o = std::find_if(out.defs.begin(), out.defs.end(), [&](const Def& d) { return d.name() == def; });
    REQUIRE(in != p.defs.end());
    REQUIRE(o != out.defs.end());
    CHECK(pretty(*o) == pretty(*in));
  }
  CHECK(pretty(canon(transform(loadCorpus("setlist_fp.food"), {"Set"}).program)) ==
        readCorpus("setlist_fp.Set.expected"));
}

TEST_CASE("selections become applications") {
  GlobalCtx ctx = preprocess(loadCorpus("sets_oop.food"));
  Expr e = parseOrThrow("s1.isEmpty() && s2.isEmpty()").main;
  auto t = transformExpr(e, ctx, env({{"s1", named("Set")}, {"s2", named("Set")}}));
  CHECK(pretty(t.expr) == "isEmpty(s1)() && isEmpty(s2)()");
  CHECK(t.type == Type::boolean());
}

TEST_CASE("dispatch follows the receiver type") {
  GlobalCtx ctx = restrict(preprocess(loadCorpus("setlist_oop.food")), {"Set"});
  auto list = transformExpr(parseOrThrow("x.contains(i)").main, ctx, env({{"x", named("List")}, {"i", Type::integer()}}));
  CHECK(pretty(list.expr) == "x.contains(i)");
  CHECK(list.type == Type::boolean());
  auto set = transformExpr(parseOrThrow("s.contains(i)").main, ctx, env({{"s", named("Set")}, {"i", Type::integer()}}));
  CHECK(pretty(set.expr) == "contains(s)(i)");
  CHECK(set.type == Type::boolean());
}

TEST_CASE("object creation becomes a constructor call") {
  GlobalCtx ctx = preprocess(loadCorpus("sets_oop.food"));
  auto t = transformExpr(parseOrThrow("new Insert(this, i)").main, ctx,
                         env({{"this", named("Set")}, {"i", Type::integer()}}));
  CHECK(t.expr == ctrCall("Insert", {var("this"), var("i")}));
  CHECK(t.type == named("Set"));
}

TEST_CASE("typecheck reports the type of the main expression") {
  CHECK(typecheck(loadCorpus("sets_oop.food")) == Type::boolean());
  CHECK(typecheck(loadCorpus("exp_fp.food")) == Type::integer());
  CHECK(typecheck(parseOrThrow("if (true) 1 else 2")) == Type::integer());
  try {
    typecheck(parseOrThrow("f(x)(1)"));
    FAIL("expected a type error");
  } catch (const TypeError& e) {
    CHECK(std::string(e.what()).find("unbound variable 'x'") != std::string::npos);
  }
}

TEST_CASE("ill-typed programs are rejected") {
  CHECK_THROWS_AS(typecheck(parseOrThrow("1 + true")), TypeError);
  CHECK_THROWS_AS(typecheck(parseOrThrow("if (1) 1 else 2")), TypeError);
  CHECK_THROWS_AS(typecheck(parseOrThrow("if (true) 1 else false")), TypeError);
  Program sets = loadCorpus("sets_fp.food");
  sets.main = parseOrThrow("contains(Empty())(true)").main;
  CHECK_THROWS_AS(typecheck(sets), TypeError);
  Program bad = desugar(parseOrThrow("data D\ncase A() extends D\ndef f(self: D)(): Int = match {\n  case A() => true\n}\n1"));
  CHECK_THROWS_AS(transform(bad), TypeError);
}

TEST_CASE("typeOf handles runtime objects") {
  GlobalCtx ctx = preprocess(loadCorpus("sets_fp.food"));
  Expr o = fromValue(Value::object("Insert", {Value::object("Empty", {}), Value::integer(3)}));
  CHECK(typeOf(o, ctx) == named("Set"));
  CHECK(typeOf(app("contains", o, {intLit(3)}), ctx) == Type::boolean());
  Expr bad = fromValue(Value::object("Insert", {Value::integer(3), Value::object("Empty", {})}));
  CHECK_THROWS_AS(typeOf(bad, ctx), TypeError);
}

TEST_CASE("round trip and type preservation on the corpus") {
  for (const char* name : {"sets_oop.food", "sets_fp.food", "exp_oop.food", "exp_fp.food", "setlist_oop.food",
                           "setlist_fp.food", "normalizer_oo.food", "normalizer_fp.food"}) {
    Program p = loadCorpus(name);
    std::set<std::string> all = declaredTypes(p);
    auto once = transform(p, all);
    auto twice = transform(once.program, all);
    CHECK_MESSAGE(canon(twice.program) == canon(p), name);
    CHECK_MESSAGE(once.programType == typecheck(p), name);
    CHECK_MESSAGE(typecheck(once.program) == typecheck(p), name);
    RoundTrip rt = roundTrip(p, all);
    CHECK_MESSAGE(rt.ok(), name);
  }
}
