#include <doctest.h>

#include <limits>

#include "food/interp.hpp"
#include "food/parser.hpp"
#include "food/pretty.hpp"
#include "food/transform.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace food;
using food::testing::loadCorpus;
using food::testing::Oracle;

namespace {

Value obj(const std::string& c, std::vector<Value> fs = {}) { return Value::object(c, std::move(fs)); }

Program withMain(Program p, const std::string& main) {
  p.main = parseOrThrow(main).main;
  return p;
}

Expr stepOnce(const Expr& e, const GlobalCtx& ctx) {
  StepOutcome o = step(e, ctx);
  REQUIRE(std::holds_alternative<Stepped>(o));
  return std::get<Stepped>(o).next;
}

}  // namespace

TEST_CASE("the expression example evaluates to 1") {
  Program p = loadCorpus("exp_oop.food");
  EvalResult r = eval(p);
  REQUIRE(r.ok());
  CHECK(*r.value == Value::integer(1));
  CHECK(Oracle(p).run() == Value::integer(1));
  CHECK(eval(loadCorpus("exp_fp.food")).value == Value::integer(1));
}

TEST_CASE("constructor calls reduce in two steps") {
  Program fp = loadCorpus("sets_fp.food");
  GlobalCtx ctx = preprocess(fp);
  Expr e = parseOrThrow("Insert(Empty(), 3)").main;
  Expr once = stepOnce(e, ctx);
  CHECK(once == ctrCall("Insert", {fromValue(obj("Empty")), intLit(3)}));
  Expr twice = stepOnce(once, ctx);
  Value want = obj("Insert", {obj("Empty"), Value::integer(3)});
  CHECK(twice == fromValue(want));
  StepOutcome done = step(twice, ctx);
  REQUIRE(std::holds_alternative<Done>(done));
  CHECK(std::get<Done>(done).value == want);

  EvalResult r = evalExpr(e, ctx);
  CHECK(r.steps == 2);
  CHECK(r.value == want);
}

TEST_CASE("membership in a union") {
  Program p = withMain(loadCorpus("sets_fp.food"), "contains(Union(Insert(Empty(), 1), Insert(Empty(), 2)))(2)");
  EvalResult r = eval(p);
  REQUIRE(r.ok());
  CHECK(*r.value == Value::boolean(true));
  CHECK(r.steps <= 30);
  CHECK(Oracle(p).run() == Value::boolean(true));
}

TEST_CASE("destructor lookup prefers the class over the interface default") {
  GlobalCtx ctx = preprocess(loadCorpus("sets_oop.food"));

  auto emptyUnion = dtrBody("union", "Empty", ctx);
  REQUIRE(emptyUnion);
  CHECK(emptyUnion->fieldNames.empty());
  CHECK(emptyUnion->paramNames == std::vector<std::string>{"that"});
  CHECK(pretty(emptyUnion->body) == "that");

  auto insertUnion = dtrBody("union", "Insert", ctx);
  REQUIRE(insertUnion);
  CHECK(insertUnion->fieldNames.empty());
  CHECK(insertUnion->paramNames == std::vector<std::string>{"that"});
  CHECK(pretty(insertUnion->body) == "new Union(this, that)");

  auto unionEmpty = dtrBody("isEmpty", "Union", ctx);
  REQUIRE(unionEmpty);
  CHECK(unionEmpty->fieldNames == std::vector<std::string>{"s1", "s2"});
  CHECK(unionEmpty->paramNames.empty());
  CHECK(pretty(unionEmpty->body) == "s1.isEmpty() && s2.isEmpty()");

  CHECK_FALSE(dtrBody("nope", "Insert", ctx));
}

TEST_CASE("consumer lookup prefers the specific clause over the wildcard") {
  GlobalCtx ctx = preprocess(loadCorpus("sets_fp.food"));

  auto emptyUnion = csmBody("union", "Empty", ctx);
  REQUIRE(emptyUnion);
  CHECK(emptyUnion->fieldNames.empty());
  CHECK(emptyUnion->paramNames == std::vector<std::string>{"that"});
  CHECK(pretty(emptyUnion->body) == "that");

  auto insertUnion = csmBody("union", "Insert", ctx);
  REQUIRE(insertUnion);
  CHECK(insertUnion->fieldNames.empty());
  CHECK(insertUnion->paramNames == std::vector<std::string>{"that"});
  CHECK(pretty(insertUnion->body) == "Union(self, that)");

  auto emptyContains = csmBody("contains", "Empty", ctx);
  REQUIRE(emptyContains);
  CHECK(emptyContains->fieldNames.empty());
  CHECK(emptyContains->paramNames == std::vector<std::string>{"i"});
  CHECK(pretty(emptyContains->body) == "false");

  auto insertContains = csmBody("contains", "Insert", ctx);
  REQUIRE(insertContains);
  CHECK(insertContains->fieldNames == std::vector<std::string>{"s", "n"});
}

TEST_CASE("the set mains evaluate to false in both decompositions") {
  Program oo = loadCorpus("sets_oop.food");
  Program fp = loadCorpus("sets_fp.food");
  EvalResult a = eval(oo);
  EvalResult b = eval(fp);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(*a.value == Value::boolean(false));
  CHECK(*b.value == Value::boolean(false));
  CHECK(Oracle(oo).run() == Value::boolean(false));
  CHECK(Oracle(fp).run() == Value::boolean(false));
  CHECK(a.steps == b.steps);
}

TEST_CASE("zero fuel on a non-value exhausts immediately") {
  EvalResult r = eval(loadCorpus("sets_oop.food"), 0);
  CHECK(r.status == EvalResult::Status::FuelExhausted);
  CHECK(r.steps == 0);
  CHECK(r.str() == "fuel exhausted after 0 steps");
  EvalResult v = eval(parseOrThrow("7"), 0);
  CHECK(v.ok());
}

TEST_CASE("a looping program exhausts its fuel") {
  Program p = load("interface I {\n  def f(): Int\n}\nclass K() implements I {\n  def f(): Int = this.f()\n}\nnew K().f()");
  EvalResult r = eval(p, 1000);
  CHECK(r.status == EvalResult::Status::FuelExhausted);
  CHECK(r.steps == 1000);
  EvalResult q = eval(transform(p).program, 1000);
  CHECK(q.status == EvalResult::Status::FuelExhausted);
  CHECK(r.agrees(q));
}

TEST_CASE("evaluation order") {
  GlobalCtx ctx;
  // Receiver and arguments left to right; `&&` short-circuits in one step.
  Expr e = parseOrThrow("(1 + 2) * (3 + 4)").main;
  CHECK(show(stepOnce(e, ctx)) == "3 * (3 + 4)");
  CHECK(show(stepOnce(parseOrThrow("false && 1 == 1").main, ctx)) == "false");
  CHECK(show(stepOnce(parseOrThrow("true || 1 == 1").main, ctx)) == "true");
  CHECK(show(stepOnce(parseOrThrow("true && 1 == 1").main, ctx)) == "1 == 1");
  CHECK(show(stepOnce(parseOrThrow("if (1 <= 2) 3 else 4").main, ctx)) == "if (true) 3 else 4");
}

TEST_CASE("integer arithmetic wraps") {
  GlobalCtx ctx;
  constexpr auto max = std::numeric_limits<std::int64_t>::max();
  Expr e = prim(BinOp::Add, intLit(max), intLit(1));
  CHECK(evalExpr(e, ctx).value == Value::integer(std::numeric_limits<std::int64_t>::min()));
  CHECK(evalExpr(prim(BinOp::Mul, intLit(max), intLit(2)), ctx).value == Value::integer(-2));
}

TEST_CASE("new and constructor calls build the same object") {
  Value a = *eval(parseOrThrow("interface I {\n  def f(): Int\n}\nclass K(n: Int) implements I {\n  def f(): Int = n\n}\nnew K(3)"))
                 .value;
  Value b = *eval(parseOrThrow("data I\ncase K(n: Int) extends I\nK(3)")).value;
  CHECK(a == b);
  CHECK(a.str() == "obj(K, 3)");
}

TEST_CASE("trace of a constructor call") {
  Trace t = trace(parseOrThrow("data Set\ncase Empty() extends Set\nEmpty()"));
  REQUIRE(t.steps.size() == 2);
  CHECK(t.steps[0] == ctrCall("Empty", {}));
  CHECK(t.steps[1] == fromValue(obj("Empty")));
  CHECK(t.outcome.ok());
}

TEST_CASE("trace of the expression example ends in 1") {
  Trace t = trace(loadCorpus("exp_oop.food"));
  REQUIRE(t.outcome.ok());
  CHECK(t.steps.front() == loadCorpus("exp_oop.food").main);
  CHECK(t.steps.back() == intLit(1));
  CHECK(t.steps.size() == t.outcome.steps + 1);
}

TEST_CASE("trace of a stuck program stops at the stuck expression") {
  Trace t = trace(parseOrThrow("(1 + 1) + true"));
  CHECK(t.outcome.status == EvalResult::Status::Stuck);
  REQUIRE(t.steps.size() == 2);
  CHECK(show(t.steps.back()) == "2 + true");
  CHECK(t.outcome.last == t.steps.back());
  CHECK_FALSE(t.outcome.reason.empty());
}

TEST_CASE("a missing method is stuck") {
  GlobalCtx ctx = preprocess(loadCorpus("sets_oop.food"));
  Expr e = sel(fromValue(obj("Empty")), "size", {});
  CHECK(std::holds_alternative<Stuck>(step(e, ctx)));
}

TEST_CASE("the normalizer computes a negation normal form") {
  Value want = obj("ValOr", {obj("ValNegVar", {Value::integer(1)}),
                             obj("ValAnd", {obj("ValNegVar", {Value::integer(2)}), obj("ValPosVar", {Value::integer(3)})})});
  for (const char* name : {"normalizer_oo.food", "normalizer_fp.food"}) {
    Program p = loadCorpus(name);
    EvalResult r = eval(p);
    REQUIRE_MESSAGE(r.ok(), name);
    CHECK_MESSAGE(*r.value == want, name);
    CHECK_MESSAGE(Oracle(p, 100000).run() == want, name);
  }
}
