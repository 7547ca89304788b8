#pragma once

#include <vector>

#include "food/context.hpp"
#include "food/diagnostic.hpp"
#include "food/syntax.hpp"

namespace food {

/// Static checks assumed by the translation: scoping, exact interface
/// implementation, pattern exhaustiveness, pattern variables matching field
/// names, and call arities. Returns every violation; empty means ok.
///
/// `ctx` must be the unrestricted context of `program`.
std::vector<Diagnostic> check(const Program& program, const GlobalCtx& ctx);

}  // namespace food
