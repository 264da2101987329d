#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holembed/stt/error.hpp"
#include "holembed/stt/term.hpp"

namespace holembed::stt {

struct SignatureError : Error {
  using Error::Error;
};

// A signature: declared base types, typed constants (declaration order is
// preserved and meaningful downstream: model components are searched and
// THF declarations are emitted in this order), and definitions for a subset
// of the constants.
//
// Invariants enforced on mutation:
//   - base type names and constant names are unique,
//   - a definition body is closed, mentions only previously declared
//     constants, and has the constant's declared type.
class Signature {
public:
  Signature() { declare_base("o"); }

  void declare_base(const std::string& name) {
    if (name.empty()) throw SignatureError("base type name must be nonempty");
    if (has_base(name)) throw SignatureError("base type '" + name + "' already declared");
    bases_.push_back(name);
  }

  bool has_base(const std::string& name) const {
    for (const auto& b : bases_) if (b == name) return true;
    return false;
  }

  const std::vector<std::string>& bases() const { return bases_; }

  void declare_const(const std::string& name, TypePtr ty) {
    if (name.empty()) throw SignatureError("constant name must be nonempty");
    if (index_.count(name)) throw SignatureError("constant '" + name + "' already declared");
    check_type_bases(ty);
    index_[name] = consts_.size();
    consts_.push_back(ConstDecl{name, std::move(ty), nullptr});
  }

  // Declares `name` if free, otherwise the first fresh numeric-suffix
  // variant; returns the name actually used.
  std::string declare_const_fresh(const std::string& name, TypePtr ty) {
    std::string use = name;
    if (index_.count(use)) {
      std::set<std::string> taken;
      for (const auto& c : consts_) taken.insert(c.name);
      use = fresh_name(name, taken);
    }
    declare_const(use, std::move(ty));
    return use;
  }

  // Declares and defines in one step. The well-typedness of the body at
  // `ty` is checked by typecheck.hpp's define_checked (which callers should
  // prefer); here we enforce closedness and declaration order only, so this
  // header stays independent of the type checker.
  void define(const std::string& name, TypePtr ty, TermPtr body) {
    if (!body) throw SignatureError("definition body must be non-null");
    if (!free_vars(body).empty())
      throw SignatureError("definition body for '" + name + "' is not closed");
    for (const std::string& c : constants_of(body))
      if (!index_.count(c))
        throw SignatureError("definition body for '" + name +
                             "' mentions undeclared constant '" + c + "'");
    declare_const(name, std::move(ty));
    consts_.back().def = std::move(body);
  }

  bool has_const(const std::string& name) const { return index_.count(name) != 0; }

  const TypePtr& const_type(const std::string& name) const {
    return decl(name).ty;
  }

  // Null for constants without a definition.
  const TermPtr& definition(const std::string& name) const {
    return decl(name).def;
  }

  bool is_defined(const std::string& name) const {
    return decl(name).def != nullptr;
  }

  struct ConstDecl {
    std::string name;
    TypePtr ty;
    TermPtr def; // null if uninterpreted
  };

  const std::vector<ConstDecl>& constants() const { return consts_; }

  TermPtr const_term(const std::string& name) const {
    const ConstDecl& d = decl(name);
    return constant(d.name, d.ty);
  }

private:
  const ConstDecl& decl(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw SignatureError("unknown constant '" + name + "'");
    return consts_[it->second];
  }

  void check_type_bases(const TypePtr& ty) const {
    if (!ty) throw SignatureError("constant type must be non-null");
    if (ty->is_base()) {
      if (!has_base(ty->base_name()))
        throw SignatureError("type mentions undeclared base '" + ty->base_name() + "'");
      return;
    }
    check_type_bases(ty->domain());
    check_type_bases(ty->codomain());
  }

  std::vector<std::string> bases_;
  std::vector<ConstDecl> consts_;
  std::map<std::string, size_t> index_;
};

} // namespace holembed::stt
