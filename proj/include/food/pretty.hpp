#pragma once

#include <string>

#include "food/syntax.hpp"

namespace food {

/// Concrete `.food` text. Throws Error when the program contains runtime
/// objects, which have no source syntax.
std::string pretty(const Program& program);
std::string pretty(const Def& def);
std::string pretty(const Expr& e);

/// Like pretty(Expr) but also renders runtime objects as `obj(C, v...)`.
/// Used by the step tracer.
std::string show(const Expr& e);

}  // namespace food
