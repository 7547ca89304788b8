// food: command-line front end for the FOOD toolchain.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "food/context.hpp"
#include "food/fuzz.hpp"
#include "food/interp.hpp"
#include "food/pipeline.hpp"
#include "food/pretty.hpp"
#include "food/transform.hpp"

namespace {

constexpr const char* kVersion = "food 1.0.0";

struct Failure {
  int code;
};

std::string readInput(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << path << ": error: cannot open file\n";
    throw Failure{1};
  }
  buf << in.rdbuf();
  return buf.str();
}

food::Program loadFile(const std::string& path) {
  std::string source = readInput(path);
  try {
    return food::load(source);
  } catch (const food::Error& e) {
    for (const auto& d : e.diagnostics()) {
      std::cerr << path << ":";
      if (d.line > 0) std::cerr << d.line << ":" << d.column << ":";
      std::cerr << " error: " << d.message << "\n";
    }
    throw Failure{1};
  }
}

std::set<std::string> selection(const food::Program& p, const std::vector<std::string>& types) {
  if (types.empty()) return food::declaredTypes(p);
  return {types.begin(), types.end()};
}

void writeOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) {
    std::cerr << path << ": error: cannot write file\n";
    throw Failure{1};
  }
}

std::size_t defaultFuel() {
  if (const char* env = std::getenv("FOOD_FUEL")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring invalid FOOD_FUEL=" << env << "\n";
    }
  }
  return food::kDefaultFuel;
}

int reportEval(const food::EvalResult& r) {
  if (r.status == food::EvalResult::Status::Stuck) {
    std::cerr << "error: " << r.str() << " at `" << food::show(r.last) << "`\n";
    return 1;
  }
  std::cout << r.str() << "\n";
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transform, check and run FOOD programs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string input;
  std::vector<std::string> types;
  std::string output;
  std::size_t fuel = defaultFuel();
  std::size_t limit = 0;

  auto* checkCmd = app.add_subcommand("check", "Check well-formedness and types");
  checkCmd->add_option("input", input, "Source file, or - for standard input")->required();

  auto* ctxCmd = app.add_subcommand("ctx", "Dump the preprocessed global context");
  ctxCmd->add_option("input", input, "Source file, or - for standard input")->required();
  ctxCmd->add_option("--types", types, "Restrict to these types")->delimiter(',');

  auto* transformCmd = app.add_subcommand("transform", "Switch the decomposition of selected types");
  transformCmd->add_option("input", input, "Source file, or - for standard input")->required();
  transformCmd->add_option("--types", types, "Types to transform (default: all)")->delimiter(',');
  transformCmd->add_option("-o,--output", output, "Output file (default: standard output)");

  auto* roundtripCmd = app.add_subcommand("roundtrip", "Transform twice and diff against the input");
  roundtripCmd->add_option("input", input, "Source file, or - for standard input")->required();
  roundtripCmd->add_option("--types", types, "Types to transform (default: all)")->delimiter(',');

  auto* evalCmd = app.add_subcommand("eval", "Evaluate the main expression");
  evalCmd->add_option("input", input, "Source file, or - for standard input")->required();
  evalCmd->add_option("--fuel", fuel, "Maximum number of steps (default: FOOD_FUEL or 100000)");

  auto* traceCmd = app.add_subcommand("trace", "Print every reduction step");
  traceCmd->add_option("input", input, "Source file, or - for standard input")->required();
  traceCmd->add_option("--fuel", fuel, "Maximum number of steps");
  traceCmd->add_option("--limit", limit, "Print at most this many steps (0: all)");

  food::GenConfig cfg;
  std::size_t trials = 100;
  bool noShrink = false;
  bool emitPrograms = false;
  auto* fuzzCmd = app.add_subcommand("fuzz", "Check the soundness properties on random programs");
  fuzzCmd->add_option("--trials", trials, "Number of programs");
  fuzzCmd->add_option("--seed", cfg.seed, "Seed of the first trial");
  fuzzCmd->add_option("--fuel", fuel, "Evaluation fuel");
  fuzzCmd->add_option("--max-types", cfg.maxTypes, "Most types per program");
  fuzzCmd->add_option("--max-ctors", cfg.maxCtorsPerType, "Most constructors per type");
  fuzzCmd->add_option("--max-ops", cfg.maxOpsPerType, "Most operations per type");
  fuzzCmd->add_option("--max-fields", cfg.maxFieldArity, "Most fields per constructor");
  fuzzCmd->add_option("--max-depth", cfg.maxExprDepth, "Expression depth bound");
  fuzzCmd->add_option("--style-mix", cfg.styleMix, "Probability of object-oriented types");
  fuzzCmd->add_option("--loop-fraction", cfg.loopFraction, "Probability of a deliberately looping program");
  fuzzCmd->add_flag("--no-shrink", noShrink, "Report failing programs without minimizing them");
  fuzzCmd->add_flag("--emit-programs", emitPrograms, "Include each generated program in its report line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (checkCmd->parsed()) {
      food::Program p = loadFile(input);
      std::cout << "ok: " << food::typecheck(p).str() << "\n";
      return 0;
    }
    if (ctxCmd->parsed()) {
      food::Program p = loadFile(input);
      food::GlobalCtx ctx = food::preprocess(p);
      if (!types.empty()) ctx = food::restrict(ctx, selection(p, types));
      std::cout << food::dump(ctx);
      return 0;
    }
    if (transformCmd->parsed()) {
      food::Program p = loadFile(input);
      auto result = food::transform(p, selection(p, types));
      writeOutput(output, food::pretty(food::canonicalize(result.program)));
      return 0;
    }
    if (roundtripCmd->parsed()) {
      food::Program p = loadFile(input);
      auto r = food::roundTrip(p, selection(p, types));
      for (const auto& line : r.diff) std::cout << line << "\n";
      if (!r.sameType) std::cerr << "error: the program type changed across the round trip\n";
      return r.ok() ? 0 : 1;
    }
    if (evalCmd->parsed()) {
      return reportEval(food::eval(loadFile(input), fuel));
    }
    if (traceCmd->parsed()) {
      food::Trace t = food::trace(loadFile(input), fuel);
      for (std::size_t i = 0; i < t.steps.size() && (limit == 0 || i < limit); ++i) {
        std::cout << i << ": " << food::show(t.steps[i]) << "\n";
      }
      return reportEval(t.outcome);
    }
    if (fuzzCmd->parsed()) {
      food::PropertyOptions opts;
      opts.fuel = fuel;
      auto report = food::runProperties(cfg, trials, opts, !noShrink,
                                        [&](const food::TrialResult& t) { std::cout << t.json(emitPrograms) << "\n"; });
      std::cout << report.summary() << "\n";
      return report.ok() ? 0 : 1;
    }
  } catch (const Failure& f) {
    return f.code;
  } catch (const food::Error& e) {
    for (const auto& d : e.diagnostics()) std::cerr << "error: " << d.str() << "\n";
    return 1;
  }
  return 2;
}
