#include <doctest.h>

#include "food/fuzz.hpp"
#include "food/mutants.hpp"
#include "food/parser.hpp"
#include "food/transform.hpp"
#include "food/wellformed.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace food;
using food::testing::loadCorpus;

TEST_CASE("a single-type configuration yields a checked program") {
  GenConfig cfg;
  cfg.seed = 1;
  cfg.maxTypes = 1;
  Program p = genProgram(cfg);
  CHECK(declaredTypes(p).size() == 1);
  CHECK(check(p, preprocess(p)).empty());
  CHECK_NOTHROW(typecheck(p));
}

TEST_CASE("generation is deterministic per seed") {
  GenConfig cfg;
  cfg.seed = 42;
  CHECK(genProgram(cfg) == genProgram(cfg));
  CHECK(genSelection(genProgram(cfg), cfg) == genSelection(genProgram(cfg), cfg));
  GenConfig other = cfg;
  other.seed = 43;
  CHECK_FALSE(genProgram(cfg) == genProgram(other));
}

TEST_CASE("a thousand seeds all pass the checker") {
  GenConfig cfg;
  std::size_t passed = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    cfg.seed = seed;
    Program p = genProgram(cfg);
    if (check(p, preprocess(p)).empty()) ++passed;
  }
  CHECK(passed == 1000);
}

TEST_CASE("generated programs evaluate like the reference evaluator") {
  GenConfig cfg;
  std::size_t compared = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    cfg.seed = seed;
    Program p = genProgram(cfg);
    auto expected = food::testing::Oracle(p).run();
    if (!expected) continue;
    EvalResult r = eval(p);
    REQUIRE_MESSAGE(r.ok(), "seed " << seed);
    CHECK_MESSAGE(*r.value == *expected, "seed " << seed);
    ++compared;
  }
  CHECK(compared >= 250);
}

TEST_CASE("configuration bounds are validated") {
  GenConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.maxTypes = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = GenConfig{};
  cfg.styleMix = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("the set corpus passes every property") {
  for (const char* name : {"sets_oop.food", "sets_fp.food", "setlist_oop.food", "setlist_fp.food"}) {
    Program p = loadCorpus(name);
    PropertyReport all = checkProgram(p, declaredTypes(p));
    CHECK_MESSAGE(all.ok(), name);
    PropertyReport partial = checkProgram(p, {"Set"});
    CHECK_MESSAGE(partial.ok(), name);
  }
}

TEST_CASE("zero trials give an empty passing report") {
  FuzzReport r = runProperties(GenConfig{}, 0);
  CHECK(r.trials.empty());
  CHECK(r.ok());
  CHECK(r.failures() == 0);
}

TEST_CASE("a short fuzz run passes") {
  GenConfig cfg;
  cfg.seed = 1000;
  std::size_t seen = 0;
  FuzzReport r = runProperties(cfg, 50, {}, true, [&](const TrialResult& t) {
    CHECK(t.seed == cfg.seed + t.index);
    ++seen;
  });
  CHECK(seen == 50);
  CHECK(r.ok());
  CHECK(r.summary().find("\"failures\":0") != std::string::npos);
}

TEST_CASE("swapped clause bodies are caught and shrunk to a small witness") {
  GenConfig cfg;
  cfg.styleMix = 1.0;  // every type starts object-oriented, so consumers are generated
  PropertyOptions opts;
  opts.mutator = mutator(Mutant::SwapClauseBodies);
  std::optional<TrialResult> caught;
  runProperties(cfg, 200, opts, false, [&](const TrialResult& t) {
    if (!caught && t.report.failed("differential")) caught = t;
  });
  REQUIRE(caught);
  Shrunk w = shrink(caught->program, caught->selected, "differential", opts);
  CHECK(w.program.defs.size() <= 3);
  CHECK(checkProgram(w.program, w.selected, opts).failed("differential"));
}

TEST_CASE("shrinking keeps the failing property") {
  Program p = loadCorpus("sets_oop.food");
  PropertyOptions opts;
  opts.mutator = mutator(Mutant::BumpIntLiteral);
  p.main = parseOrThrow("new Insert(new Empty(), 1).contains(1) && new Empty().isEmpty()").main;
  // No integer literal in a generated body: the mutant is invisible here.
  CHECK(checkProgram(p, {"Set"}, opts).ok());

  opts.mutator = mutator(Mutant::FlipBoolLiteral);
  PropertyReport r = checkProgram(p, {"Set"}, opts);
  REQUIRE(r.failed("differential"));
  Shrunk s = shrink(p, {"Set"}, "differential", opts);
  CHECK(checkProgram(s.program, s.selected, opts).failed("differential"));
  CHECK(s.program.defs.size() <= p.defs.size());
}
