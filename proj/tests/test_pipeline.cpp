#include <doctest.h>

#include "food/diagnostic.hpp"
#include "food/pipeline.hpp"
#include "food/pretty.hpp"
#include "support.hpp"

using namespace food;
using food::testing::readCorpus;

TEST_CASE("lineDiff reports removed and added lines") {
  CHECK(lineDiff("a\nb\nc\n", "a\nb\nc\n").empty());
  CHECK(lineDiff("a\nb\nc\n", "a\nx\nc\n") == std::vector<std::string>{"- b", "+ x"});
  CHECK(lineDiff("a\n", "a\nb\n") == std::vector<std::string>{"+ b"});
  CHECK(lineDiff("a\nb\n", "b\n") == std::vector<std::string>{"- a"});
}

TEST_CASE("load stops at the first failing stage") {
  CHECK_NOTHROW(load(readCorpus("sets_oop.food")));
  try {
    load("data D\ncase A() extends D\ndef f(self: D)(): Int = match {\n  case A() => y\n}\n1");
    FAIL("expected an error");
  } catch (const Error& e) {
    REQUIRE(e.diagnostics().size() == 1);
    CHECK(e.diagnostics()[0].message.find("unbound variable 'y'") != std::string::npos);
  }
  CHECK_THROWS_AS(load("1 + true"), TypeError);
  CHECK_THROWS_AS(load("1 +"), Error);
}

TEST_CASE("roundTrip of the mixed program with one type selected") {
  Program p = load(readCorpus("setlist_oop.food"));
  RoundTrip rt = roundTrip(p, {"Set"});
  CHECK(rt.ok());
  CHECK(rt.diff.empty());
  CHECK(pretty(canonicalize(rt.transformed)) == readCorpus("setlist_oop.Set.expected"));
}
