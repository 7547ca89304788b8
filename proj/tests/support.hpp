#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "food/context.hpp"
#include "food/diagnostic.hpp"
#include "food/pipeline.hpp"
#include "food/syntax.hpp"

namespace food::testing {

inline std::string corpusPath(const std::string& name) { return std::string(FOOD_CORPUS_DIR) + "/" + name; }

inline std::string readCorpus(const std::string& name) {
  std::ifstream in(corpusPath(name));
  if (!in) throw std::runtime_error("missing corpus file " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Parsed, desugared and checked corpus program.
inline Program loadCorpus(const std::string& name) { return load(readCorpus(name)); }

}  // namespace food::testing
