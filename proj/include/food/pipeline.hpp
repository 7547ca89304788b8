#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "food/syntax.hpp"

namespace food {

/// Parses, desugars, checks well-formedness and types. Throws Error carrying
/// every diagnostic of the first failing stage.
Program load(std::string_view source);

/// `- line` / `+ line` entries turning `expected` into `actual`; empty when
/// the texts are equal.
std::vector<std::string> lineDiff(const std::string& expected, const std::string& actual);

struct RoundTrip {
  Program transformed;
  Program back;
  /// Diff of the canonical input text against the canonical result.
  std::vector<std::string> diff;
  bool sameType = true;

  bool ok() const { return diff.empty() && sameType; }
};

/// Transforms twice with the same selection.
RoundTrip roundTrip(const Program& program, const std::set<std::string>& selected);

}  // namespace food
