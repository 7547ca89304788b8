#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "food/context.hpp"
#include "food/syntax.hpp"

namespace food {

struct Stepped {
  Expr next;
};
struct Done {
  Value value;
};
struct Stuck {
  std::string reason;
};

using StepOutcome = std::variant<Stepped, Done, Stuck>;

/// One call-by-value reduction step. The receiver is evaluated before the
/// arguments and arguments go left to right. `e` must be closed.
StepOutcome step(const Expr& e, const GlobalCtx& ctx);

/// A resolved method body: bound field names, parameter names and the body.
struct Lookup {
  std::vector<std::string> fieldNames;
  std::vector<std::string> paramNames;
  Expr body;
};

/// Body of destructor f for generator C. The class's own method wins over
/// the interface default; a default binds no fields.
std::optional<Lookup> dtrBody(const std::string& f, const std::string& c, const GlobalCtx& ctx);

/// Body of consumer f for constructor C. The clause for C wins over the
/// wildcard; a wildcard binds no pattern variables.
std::optional<Lookup> csmBody(const std::string& f, const std::string& c, const GlobalCtx& ctx);

inline constexpr std::size_t kDefaultFuel = 100000;

struct EvalResult {
  enum class Status { Value, FuelExhausted, Stuck };

  Status status = Status::Stuck;
  std::optional<Value> value;
  std::string reason;  // Stuck only
  Expr last;           // the final expression reached
  std::size_t steps = 0;

  bool ok() const { return status == Status::Value; }
  /// `false`, `fuel exhausted after 10 steps`, `stuck: ...`.
  std::string str() const;
  /// Same value, or same non-value status.
  bool agrees(const EvalResult& other) const;
};

/// Reduces `e` for at most `fuel` steps.
EvalResult evalExpr(const Expr& e, const GlobalCtx& ctx, std::size_t fuel = kDefaultFuel);

/// Desugars and preprocesses `program`, then evaluates its main expression.
EvalResult eval(const Program& program, std::size_t fuel = kDefaultFuel);

struct Trace {
  /// Every expression reached, starting with the main expression.
  std::vector<Expr> steps;
  EvalResult outcome;
};

Trace trace(const Program& program, std::size_t fuel = kDefaultFuel);
Trace traceExpr(const Expr& e, const GlobalCtx& ctx, std::size_t fuel = kDefaultFuel);

}  // namespace food
