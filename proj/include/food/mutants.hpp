#pragma once

#include <string>
#include <vector>

#include "food/fuzz.hpp"

namespace food {

/// Deliberately wrong variants of the transform, used to show that the
/// property checks notice semantic bugs. Each one post-processes the output of
/// the correct transform; "generated" below means definitions the transform
/// produced from a selected type.
enum class Mutant {
  SwapClauseBodies,   // two clause bodies of a generated consumer exchanged
  DropWildcard,       // wildcard clause lost when a default becomes a clause
  WrongSubstOoToFp,   // [this↦self] replaced by the identity in consumers
  WrongSubstFpToOo,   // [self↦this] replaced by the identity in destructors
  SwapMethodBodies,   // two method bodies of a generated class exchanged
  DropOverride,       // specific clause / overriding method lost next to a default
  SwapCtorArgs,       // first two same-typed arguments of object creations exchanged
  FlipBoolLiteral,    // boolean literals in generated bodies negated
  BumpIntLiteral,     // integer literals in generated bodies incremented
  IgnoreSelection,    // Sel2App never fires: consumers of selected types called as selections
};

const std::vector<Mutant>& allMutants();
std::string name(Mutant m);
Mutator mutator(Mutant m);

}  // namespace food
