#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "food/syntax.hpp"

namespace food {

/// Key into the signature and definition tables. Constructors, generators and
/// type names use an empty owner; consumers and destructors are keyed by
/// (name, datatype or interface), so overloads on different types coexist.
struct SigKey {
  std::string name;
  std::string owner;

  static SigKey global(std::string name) { return SigKey{std::move(name), {}}; }
  static SigKey member(std::string name, std::string owner) {
    return SigKey{std::move(name), std::move(owner)};
  }

  std::string str() const { return owner.empty() ? name : name + ", " + owner; }
  auto operator<=>(const SigKey&) const = default;
};

/// The preprocessed global context.
///
/// The four per-type lists never store an empty entry; lookups of absent types
/// yield an empty list.
struct GlobalCtx {
  std::set<std::string> dt;
  std::set<std::string> it;
  std::map<std::string, std::vector<std::string>> ctr;
  std::map<std::string, std::vector<std::string>> gen;
  std::map<std::string, std::vector<std::string>> dtr;
  std::map<std::string, std::vector<std::string>> csm;
  std::map<SigKey, Type> sig;
  std::map<SigKey, Type> dtrSig;
  std::map<SigKey, Def> defs;

  const std::vector<std::string>& ctrOf(const std::string& d) const;
  const std::vector<std::string>& genOf(const std::string& d) const;
  const std::vector<std::string>& dtrOf(const std::string& d) const;
  const std::vector<std::string>& csmOf(const std::string& d) const;

  const Def* def(const SigKey& key) const;
  const ast::Interface* interface(const std::string& d) const;
  const ast::Generator* generator(const std::string& c) const;
  const ast::Constructor* constructor(const std::string& c) const;
  const ast::Consumer* consumer(const std::string& f, const std::string& d) const;

  /// Parent type of a constructor or generator.
  std::optional<std::string> parentOf(const std::string& c) const;
  /// Declared field types of a constructor or generator.
  std::optional<std::vector<Param>> fieldsOf(const std::string& c) const;
  bool declaresType(const std::string& d) const;

  /// Componentwise equality over everything but the definition table.
  bool operator==(const GlobalCtx& other) const;
};

/// Ordered variable typing; lookup finds the innermost binding.
class TypeEnv {
 public:
  TypeEnv() = default;
  TypeEnv(std::initializer_list<std::pair<std::string, Type>> entries) : entries_(entries) {}

  TypeEnv with(std::string name, Type type) const;
  TypeEnv with(const std::vector<Param>& params) const;
  const Type* lookup(const std::string& name) const;

 private:
  std::vector<std::pair<std::string, Type>> entries_;
};

/// Builds the context from a parse-valid program. Throws Error on duplicate
/// names, undeclared parents or self types, or kind mismatches (a consumer
/// over an interface, a generator of a datatype, ...).
GlobalCtx preprocess(const Program& program);

/// Removes every type not in `selected` from dt/it and empties its four
/// lists. Signatures and definitions stay. Throws Error on unknown names.
GlobalCtx restrict(const GlobalCtx& ctx, const std::set<std::string>& selected);

/// The context a transformed program would preprocess to: swaps the
/// datatype and interface sides and moves signatures between sig and dtrSig.
GlobalCtx translateCtx(const GlobalCtx& ctx);

/// Deterministic, key-sorted text dump.
std::string dump(const GlobalCtx& ctx);

/// All datatype and interface names declared in a program.
std::set<std::string> declaredTypes(const Program& program);

}  // namespace food
