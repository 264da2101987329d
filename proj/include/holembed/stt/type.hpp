#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace holembed::stt {

class SimpleType;
using TypePtr = std::shared_ptr<const SimpleType>;

// Simple types over named base types, closed under the right-associative
// function arrow. Values are immutable and freely shared.
//
// Distinguished base names: "o" (truth values), "i" (individuals),
// "w" (worlds). Further bases ("region", ...) may be declared per signature.
class SimpleType {
public:
  static TypePtr base(std::string name) {
    if (name.empty()) throw std::invalid_argument("base type name must be nonempty");
    return std::shared_ptr<const SimpleType>(new SimpleType(std::move(name)));
  }

  static TypePtr arrow(TypePtr dom, TypePtr cod) {
    if (!dom || !cod) throw std::invalid_argument("arrow type with null component");
    return std::shared_ptr<const SimpleType>(new SimpleType(std::move(dom), std::move(cod)));
  }

  bool is_base() const { return dom_ == nullptr; }
  bool is_arrow() const { return dom_ != nullptr; }

  const std::string& base_name() const {
    if (!is_base()) throw std::logic_error("base_name on arrow type");
    return name_;
  }
  const TypePtr& domain() const {
    if (!is_arrow()) throw std::logic_error("domain on base type");
    return dom_;
  }
  const TypePtr& codomain() const {
    if (!is_arrow()) throw std::logic_error("codomain on base type");
    return cod_;
  }

private:
  explicit SimpleType(std::string name) : name_(std::move(name)) {}
  SimpleType(TypePtr dom, TypePtr cod) : dom_(std::move(dom)), cod_(std::move(cod)) {}

  std::string name_;  // nonempty iff base
  TypePtr dom_, cod_; // non-null iff arrow
};

inline bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->is_base() != b->is_base()) return false;
  if (a->is_base()) return a->base_name() == b->base_name();
  return type_equal(a->domain(), b->domain()) && type_equal(a->codomain(), b->codomain());
}

// Shared singletons for the distinguished bases.
inline const TypePtr& bool_ty() {
  static const TypePtr t = SimpleType::base("o");
  return t;
}
inline const TypePtr& ind_ty() {
  static const TypePtr t = SimpleType::base("i");
  return t;
}
inline const TypePtr& world_ty() {
  static const TypePtr t = SimpleType::base("w");
  return t;
}

inline TypePtr fn(TypePtr dom, TypePtr cod) {
  return SimpleType::arrow(std::move(dom), std::move(cod));
}
inline TypePtr fn(TypePtr a, TypePtr b, TypePtr c) {
  return fn(std::move(a), fn(std::move(b), std::move(c)));
}
inline TypePtr fn(TypePtr a, TypePtr b, TypePtr c, TypePtr d) {
  return fn(std::move(a), fn(std::move(b), std::move(c), std::move(d)));
}

// Renders "w > w > o"; the arrow is right-associative, so only arrow
// domains need parentheses.
inline std::string show_type(const TypePtr& t) {
  if (!t) return "<null>";
  if (t->is_base()) return t->base_name();
  std::string dom = show_type(t->domain());
  if (t->domain()->is_arrow()) dom = "(" + dom + ")";
  return dom + " > " + show_type(t->codomain());
}

// Total order on types (base names lexicographic, bases before arrows);
// used for deterministic keying only.
inline int type_compare(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->is_base() != b->is_base()) return a->is_base() ? -1 : 1;
  if (a->is_base()) return a->base_name().compare(b->base_name());
  if (int c = type_compare(a->domain(), b->domain())) return c;
  return type_compare(a->codomain(), b->codomain());
}

} // namespace holembed::stt
