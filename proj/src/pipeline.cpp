#include "food/pipeline.hpp"

#include <sstream>

#include "food/context.hpp"
#include "food/parser.hpp"
#include "food/pretty.hpp"
#include "food/transform.hpp"
#include "food/wellformed.hpp"

namespace food {

Program load(std::string_view source) {
  Program p = desugar(parseOrThrow(source));
  auto ds = check(p, preprocess(p));
  if (!ds.empty()) throw Error(std::move(ds));
  typecheck(p);
  return p;
}

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

std::vector<std::string> lineDiff(const std::string& expected, const std::string& actual) {
  auto a = lines(expected), b = lines(actual);
  // Longest common subsequence table, filled from the end.
  std::vector<std::vector<std::size_t>> lcs(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = a.size(); i-- > 0;) {
    for (std::size_t j = b.size(); j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<std::string> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i] == b[j]) {
      ++i, ++j;
    } else if (i < a.size() && (j == b.size() || lcs[i + 1][j] >= lcs[i][j + 1])) {
      out.push_back("- " + a[i++]);
    } else {
      out.push_back("+ " + b[j++]);
    }
  }
  return out;
}

RoundTrip roundTrip(const Program& program, const std::set<std::string>& selected) {
  Program p = desugar(program);
  RoundTrip r;
  TransformResult once = transform(p, selected);
  TransformResult twice = transform(once.program, selected);
  r.transformed = once.program;
  r.back = twice.program;
  r.diff = lineDiff(pretty(canonicalize(p)), pretty(canonicalize(twice.program)));
  r.sameType = once.programType == twice.programType && once.programType == typecheck(p);
  return r;
}

}  // namespace food
