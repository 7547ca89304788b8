#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace food {

/// A message anchored in source text. Line and column are 1-based; 0 means
/// the item has no source position (for example a generated program).
struct Diagnostic {
  std::string message;
  int line = 0;
  int column = 0;

  std::string str() const;
  bool operator==(const Diagnostic&) const = default;
};

/// Base exception for every pipeline failure. Carries at least one diagnostic.
class Error : public std::runtime_error {
 public:
  explicit Error(std::vector<Diagnostic> diagnostics);
  explicit Error(const std::string& message);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Raised when a program is not typeable under the translation judgment.
class TypeError : public Error {
 public:
  using Error::Error;
};

}  // namespace food
