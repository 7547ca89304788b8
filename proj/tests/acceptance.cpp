// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "food/fuzz.hpp"
#include "food/interp.hpp"
#include "food/mutants.hpp"
#include "food/parser.hpp"
#include "food/pretty.hpp"
#include "food/transform.hpp"
#include "support.hpp"

using namespace food;
using food::testing::loadCorpus;
using food::testing::readCorpus;

namespace {

// Pinned thresholds.
constexpr double kGoldenSeconds = 1.0;
constexpr double kFuzzSeconds = 60.0;
constexpr std::size_t kFuzzPrograms = 1000;
constexpr std::size_t kSafetyPrograms = 500;
constexpr std::size_t kMutantTrials = 500;
constexpr std::size_t kWitnessDefs = 3;
constexpr std::uint64_t kSeed = 1;

const std::vector<std::string> kGolden{"sets_oop.food",    "sets_fp.food",       "exp_oop.food",
                                       "exp_fp.food",      "setlist_oop.food",   "setlist_fp.food",
                                       "normalizer_oo.food", "normalizer_fp.food"};

// Properties that make up criteria 2 to 5.
const std::map<std::string, int> kCriterionOf{
    {"roundtrip", 2},   {"type-preservation", 2}, {"differential", 3},    {"preservation", 4},
    {"progress", 4},    {"context-duality", 5},   {"lookup-duality", 5},
};

int failures = 0;

void verdict(int n, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", n, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

const Def* findDef(const Program& p, const std::string& name) {
  for (const auto& d : p.defs) {
    if (d.name() == name) return &d;
  }
  return nullptr;
}

// Every property failure of the golden corpus (all types, and Set alone where declared).
std::vector<std::pair<std::string, PropertyReport>> goldenReports(const PropertyOptions& opts) {
  std::vector<std::pair<std::string, PropertyReport>> out;
  for (const auto& name : kGolden) {
    Program p = loadCorpus(name);
    out.emplace_back(name, checkProgram(p, declaredTypes(p), opts));
    if (declaredTypes(p).count("Set") && declaredTypes(p).size() > 1) {
      out.emplace_back(name + "[Set]", checkProgram(p, {"Set"}, opts));
    }
    if (declaredTypes(p).count("Context")) {
      out.emplace_back(name + "[Context]", checkProgram(p, {"Context"}, opts));
    }
  }
  return out;
}

void criterion1() {
  auto start = std::chrono::steady_clock::now();
  std::vector<std::string> bad;
  auto same = [&](const std::string& from, const std::set<std::string>& sel, const std::string& to) {
    Program out = transform(loadCorpus(from), sel).program;
    if (!(canonicalize(out) == canonicalize(loadCorpus(to)))) bad.push_back(from + " -> " + to);
  };
  same("sets_oop.food", {"Set"}, "sets_fp.food");
  same("sets_fp.food", {"Set"}, "sets_oop.food");
  same("exp_oop.food", {"Exp"}, "exp_fp.food");
  same("exp_fp.food", {"Exp"}, "exp_oop.food");
  for (const std::string stem : {"setlist_oop", "setlist_fp"}) {
    Program in = loadCorpus(stem + ".food");
    Program out = transform(in, {"Set"}).program;
    if (pretty(canonicalize(out)) != readCorpus(stem + ".Set.expected")) bad.push_back(stem + " [Set] text");
    for (const char* listDef : {"List", "Nil", "Cons", "contains"}) {
      const Def* a = nullptr;
      const Def* b = nullptr;
      for (const auto& d : in.defs) {
        if (d.name() == listDef && (!d.as<ast::Consumer>() || d.as<ast::Consumer>()->selfType == "List")) a = &d;
      }
      for (const auto& d : out.defs) {
        if (d.name() == listDef && (!d.as<ast::Consumer>() || d.as<ast::Consumer>()->selfType == "List")) b = &d;
      }
      if (!a) continue;
      if (!b || pretty(*a) != pretty(*b)) bad.push_back(stem + " List half: " + listDef);
    }
  }
  double t = seconds(start);
  std::string detail = "6 golden transforms, " + std::to_string(bad.size()) + " mismatches, " + fmt(t) + " s (limit " +
                       fmt(kGoldenSeconds) + " s)";
  for (const auto& b : bad) detail += "; " + b;
  verdict(1, bad.empty() && t < kGoldenSeconds, "golden transforms", detail);
}

struct FuzzStats {
  std::map<std::string, std::size_t> failed;  // property -> failing trials
  std::size_t programs = 0;
  std::size_t values = 0;
  std::size_t bothExhausted = 0;
  double seconds = 0;
};

FuzzStats fuzzRun() {
  GenConfig cfg;
  cfg.seed = kSeed;
  PropertyOptions opts;
  opts.fuel = kDefaultFuel;
  FuzzStats s;
  auto start = std::chrono::steady_clock::now();
  runProperties(cfg, kFuzzPrograms, opts, false, [&](const TrialResult& t) {
    ++s.programs;
    std::set<std::string> props;
    for (const auto& f : t.report.failures) props.insert(f.property);
    for (const auto& p : props) ++s.failed[p];
    if (t.report.original && t.report.transformed) {
      if (t.report.original->ok() && t.report.transformed->ok()) ++s.values;
      if (t.report.original->status == EvalResult::Status::FuelExhausted &&
          t.report.transformed->status == EvalResult::Status::FuelExhausted) {
        ++s.bothExhausted;
      }
    }
  });
  s.seconds = seconds(start);
  return s;
}

std::size_t count(const FuzzStats& s, std::initializer_list<const char*> props) {
  std::size_t n = 0;
  for (const char* p : props) {
    auto it = s.failed.find(p);
    if (it != s.failed.end()) n += it->second;
  }
  return n;
}

std::size_t count(const std::vector<std::pair<std::string, PropertyReport>>& golden,
                  std::initializer_list<const char*> props, std::string* where) {
  std::size_t n = 0;
  for (const auto& [name, r] : golden) {
    for (const char* p : props) {
      if (r.failed(p)) {
        ++n;
        *where += " " + name + ":" + p;
      }
    }
  }
  return n;
}

void criteria2to5() {
  auto golden = goldenReports({});
  FuzzStats fuzz = fuzzRun();
  const auto stages = {"wellformed", "typecheck", "transform"};
  std::size_t broken = count(fuzz, stages);
  std::string where;
  std::size_t goldenBroken = count(golden, stages, &where);

  {
    std::string w = where;
    std::size_t g = goldenBroken + count(golden, {"roundtrip", "type-preservation"}, &w);
    std::size_t f = broken + count(fuzz, {"roundtrip", "type-preservation"});
    verdict(2, g == 0 && f == 0 && fuzz.programs >= kFuzzPrograms, "round trip",
            std::to_string(golden.size()) + " golden runs, " + std::to_string(fuzz.programs) + " fuzz programs, " +
                std::to_string(g + f) + " failures" + w);
  }
  {
    std::string w = where;
    std::size_t g = goldenBroken + count(golden, {"differential"}, &w);
    std::size_t f = broken + count(fuzz, {"differential"});
    // The golden corpus must also reach values, not just agree.
    for (const auto& name : kGolden) {
      EvalResult a = eval(loadCorpus(name));
      if (!a.ok()) {
        ++g;
        w += " " + name + ":" + a.str();
      }
    }
    verdict(3, g == 0 && f == 0 && fuzz.programs >= kFuzzPrograms && fuzz.seconds <= kFuzzSeconds,
            "semantics preservation",
            std::to_string(fuzz.programs) + " fuzz programs at fuel " + std::to_string(kDefaultFuel) + ": " +
                std::to_string(fuzz.values) + " equal values, " + std::to_string(fuzz.bothExhausted) +
                " both exhausted, " + std::to_string(g + f) + " disagreements; fuzz run " + fmt(fuzz.seconds) +
                " s (limit " + fmt(kFuzzSeconds) + " s)" + w);
  }
  {
    std::string w = where;
    std::size_t g = goldenBroken + count(golden, {"preservation", "progress"}, &w);
    std::size_t f = broken + count(fuzz, {"preservation", "progress"});
    verdict(4, g == 0 && f == 0 && fuzz.programs >= kSafetyPrograms, "type safety",
            std::to_string(fuzz.programs) + " fuzz programs, every step of both traces typed (step budget " +
                std::to_string(PropertyOptions{}.safetyFuel) + "), " + std::to_string(g + f) + " failures" + w);
  }
  {
    std::string w = where;
    std::size_t g = goldenBroken + count(golden, {"context-duality", "lookup-duality"}, &w);
    std::size_t f = broken + count(fuzz, {"context-duality", "lookup-duality"});
    verdict(5, g == 0 && f == 0 && fuzz.programs >= kSafetyPrograms, "context and lookup duality",
            std::to_string(golden.size()) + " golden runs, " + std::to_string(fuzz.programs) + " fuzz programs, " +
                std::to_string(g + f) + " failures" + w);
  }
}

void criterion6() {
  Program in = loadCorpus("setlist_oop.food");
  Program out = transform(in, {"Set"}).program;
  std::string cons = pretty(*findDef(out, "Cons"));
  const std::string wantCons =
      "class Cons(n: Int, x: List) implements List {\n  def contains(i: Int): Bool = i == n || x.contains(i)\n}";
  std::string insertClause;
  for (const auto& d : out.defs) {
    const auto* c = d.as<ast::Consumer>();
    if (!c || c->name != "contains" || c->selfType != "Set") continue;
    if (const Clause* cl = c->clauseFor("Insert")) insertClause = pretty(cl->body);
  }
  const std::string wantInsert = "i == n || contains(s)(i)";
  bool ok = cons == wantCons && insertClause == wantInsert;
  verdict(6, ok, "type-directed dispatch",
          "List: `" + std::string(ok ? "x.contains(i)" : cons) + "`, Set: `" + insertClause + "`");
}

struct Caught {
  std::string by;  // "corpus <file>" or "trial <seed>"
  std::set<int> criteria;
};

std::optional<Caught> caughtBy(const PropertyReport& r, const std::string& by) {
  Caught c{by, {}};
  for (const auto& f : r.failures) {
    auto it = kCriterionOf.find(f.property);
    if (it != kCriterionOf.end()) c.criteria.insert(it->second);
  }
  if (c.criteria.empty()) return std::nullopt;
  return c;
}

void criterion7() {
  std::vector<std::string> lines;
  bool ok = true;
  for (Mutant m : allMutants()) {
    PropertyOptions opts;
    opts.mutator = mutator(m);
    std::optional<Caught> caught;
    for (const auto& [name, r] : goldenReports(opts)) {
      if ((caught = caughtBy(r, "corpus " + name))) break;
    }
    std::optional<TrialResult> witnessTrial;
    GenConfig cfg;
    cfg.seed = kSeed;
    for (std::size_t i = 0; i < kMutantTrials && (!caught || (m == Mutant::SwapClauseBodies && !witnessTrial)); ++i) {
      cfg.seed = kSeed + i;
      Program p = genProgram(cfg);
      auto sel = genSelection(p, cfg);
      PropertyReport r = checkProgram(p, sel, opts);
      if (!caught) caught = caughtBy(r, "trial seed " + std::to_string(cfg.seed));
      if (m == Mutant::SwapClauseBodies && r.failed("differential")) {
        witnessTrial = TrialResult{i, cfg.seed, p, sel, r, std::nullopt};
      }
    }
    std::string line = name(m) + ": ";
    if (!caught) {
      ok = false;
      line += "NOT CAUGHT";
    } else {
      line += "caught by criteria";
      for (int c : caught->criteria) line += " " + std::to_string(c);
      line += " (" + caught->by + ")";
    }
    if (m == Mutant::SwapClauseBodies) {
      if (!witnessTrial) {
        ok = false;
        line += ", no differential failure to shrink";
      } else {
        Shrunk s = shrink(witnessTrial->program, witnessTrial->selected, "differential", opts);
        bool small = s.program.defs.size() <= kWitnessDefs && checkProgram(s.program, s.selected, opts).failed("differential");
        ok = ok && small;
        line += ", differential witness from seed " + std::to_string(witnessTrial->seed) + " shrunk to " +
                std::to_string(s.program.defs.size()) + " definitions (limit " + std::to_string(kWitnessDefs) + ")";
      }
    }
    lines.push_back(line);
  }
  std::string detail = std::to_string(allMutants().size()) + " mutants";
  for (const auto& l : lines) detail += "\n       " + l;
  verdict(7, ok && allMutants().size() == 10, "mutants caught", detail);
}

void criterion8() {
  std::vector<std::string> bad;
  Program oo = loadCorpus("normalizer_oo.food");
  Program fp = loadCorpus("normalizer_fp.food");
  EvalResult want = eval(oo);
  if (!want.ok()) bad.push_back("object-oriented normalizer: " + want.str());
  for (const auto& [label, p] : {std::pair{"oo", oo}, std::pair{"fp", fp}}) {
    for (const std::set<std::string>& sel : {std::set<std::string>{"Context"}, declaredTypes(p)}) {
      std::string tag = std::string(label) + (sel.size() == 1 ? "[Context]" : "[all]");
      RoundTrip rt = roundTrip(p, sel);
      if (!rt.ok()) bad.push_back(tag + " round trip");
      EvalResult before = eval(p);
      EvalResult after = eval(rt.transformed);
      if (!before.ok() || !(before.value == want.value) || !before.agrees(after) || before.steps != after.steps) {
        bad.push_back(tag + " evaluation: " + before.str() + " vs " + after.str());
      }
    }
  }
  if (!(canonicalize(transform(oo, {"Context"}).program) == canonicalize(fp))) {
    bad.push_back("Context switched from OO does not give the FP file");
  }
  std::string detail = "Context in both styles, " + std::to_string(bad.size()) + " failures, value " +
                       (want.ok() ? want.value->str() : want.str());
  for (const auto& b : bad) detail += "; " + b;
  verdict(8, bad.empty(), "normalizer", detail);
}

}  // namespace

int main() {
  try {
    criterion1();
    criteria2to5();
    criterion6();
    criterion7();
    criterion8();
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance harness error: %s\n", e.what());
    return 1;
  }
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAILED" : "PASSED", failures);
  return failures ? 1 : 0;
}
