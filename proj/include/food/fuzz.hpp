#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "food/interp.hpp"
#include "food/syntax.hpp"

namespace food {

struct GenConfig {
  std::uint64_t seed = 1;
  int maxTypes = 3;
  int maxCtorsPerType = 3;
  int maxOpsPerType = 3;
  int maxFieldArity = 2;
  int maxExprDepth = 3;
  /// Probability that a type is emitted object-oriented rather than functional.
  double styleMix = 0.5;
  /// Probability that a non-base constructor gets a field of its own type,
  /// and that a body prefers a structurally decreasing recursive call.
  double recursionBias = 0.5;
  /// Probability that a program contains a deliberately looping operation
  /// that its main expression reaches.
  double loopFraction = 0.05;
  /// Probability that an operation reuses the name of an operation on an
  /// earlier type (overloading by receiver type).
  double overloadFraction = 0.2;
  /// Probability that an operation has an interface default / wildcard clause.
  double defaultFraction = 0.35;
  /// Probability that a trial transforms a random subset of the types instead
  /// of all of them.
  double partialSelection = 0.3;

  /// Throws Error when a bound is < 1 or a probability is outside [0, 1].
  void validate() const;
};

/// Deterministic per seed. Every generated program passes check and
/// typecheck; types are named T0.., constructors C0.., operations f0..,
/// fields x0.. and parameters p0...
///
/// Termination discipline: an operation on type Ti may call operations of
/// Ti only on a field of the current constructor (any operation) or on
/// `this`/`self` (lower-numbered operations only), and operations of earlier
/// types on any receiver. Looping programs break this on purpose.
Program genProgram(const GenConfig& cfg);

/// A random non-empty subset of the declared types, or all of them.
std::set<std::string> genSelection(const Program& program, const GenConfig& cfg);

/// Rewrites the output of a correct transform. Used to plant mutants.
using Mutator = std::function<Program(const Program& input, const std::set<std::string>& selected,
                                      const Program& output)>;

struct PropertyOptions {
  std::size_t fuel = kDefaultFuel;
  /// Step budget for the per-step type safety check.
  std::size_t safetyFuel = 10000;
  Mutator mutator;
};

struct PropertyFailure {
  /// wellformed, typecheck, transform, wellformed-preservation,
  /// type-preservation, hygiene, roundtrip, context-duality, lookup-duality,
  /// differential, preservation or progress.
  std::string property;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyFailure> failures;
  std::optional<EvalResult> original;
  std::optional<EvalResult> transformed;

  bool ok() const { return failures.empty(); }
  bool failed(const std::string& property) const;
};

/// Runs every property on one program. Properties that depend on a failed
/// earlier stage are skipped; the failed stage is reported instead.
PropertyReport checkProgram(const Program& program, const std::set<std::string>& selected,
                            const PropertyOptions& opts = {});

struct Shrunk {
  Program program;
  std::set<std::string> selected;
};

/// Greedy deletion of type groups, operations, definitions, clauses,
/// overrides, fields and parameters, plus simplification of bodies and of the
/// main expression (a node replaced by a child, a literal or a variable in
/// scope). Every candidate kept still passes check and typecheck and still
/// fails `property` under `opts`.
Shrunk shrink(const Program& program, const std::set<std::string>& selected,
              const std::string& property, const PropertyOptions& opts = {});

struct TrialResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  Program program;
  std::set<std::string> selected;
  PropertyReport report;
  std::optional<Shrunk> witness;

  /// One JSON object per trial; `withProgram` adds the generated source.
  std::string json(bool withProgram = false) const;
};

struct FuzzReport {
  std::vector<TrialResult> trials;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
  /// JSON summary line.
  std::string summary() const;
};

/// Trial i uses seed cfg.seed + i. Failing trials are shrunk when `shrinkFailures`.
FuzzReport runProperties(const GenConfig& cfg, std::size_t trials, const PropertyOptions& opts = {},
                         bool shrinkFailures = true,
                         const std::function<void(const TrialResult&)>& onTrial = {});

}  // namespace food
