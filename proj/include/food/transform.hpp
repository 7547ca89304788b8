#pragma once

#include <set>
#include <string>

#include "food/context.hpp"
#include "food/diagnostic.hpp"
#include "food/syntax.hpp"

namespace food {

struct TransformResult {
  Program program;
  /// Type of the main expression.
  Type programType;
};

struct Translated {
  Expr expr;
  Type type;
};

/// Type-directed translation between object-oriented and functional
/// decomposition.
///
/// Selected interfaces become datatypes with consumers, selected datatypes
/// become interfaces with generators; everything else is kept and only has
/// its inner expressions rewritten. The program must be desugared. Throws
/// TypeError when the program is not typeable.
TransformResult transform(const Program& program, const std::set<std::string>& selected);

/// Transforms every declared datatype and interface.
TransformResult transform(const Program& program);

/// Translates one expression under an (already restricted) context. Dispatch
/// of `e.f(...)` and `f(e)(...)` depends on the derived type of `e`.
Translated transformExpr(const Expr& e, const GlobalCtx& ctx, const TypeEnv& env);

/// Type of the main expression; checks every definition body on the way.
Type typecheck(const Program& program);

/// Type of an expression, including runtime objects, without rewriting.
Type typeOf(const Expr& e, const GlobalCtx& ctx, const TypeEnv& env = {});

}  // namespace food
