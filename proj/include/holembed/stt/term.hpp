#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "holembed/stt/type.hpp"

namespace holembed::stt {

// Kernel term language: constants, variables, lambda abstraction,
// application, and the four logical primitives
//
//   Neg   : o > o
//   Or    : o > o > o
//   Eq(a) : a > a > o          (one constant per type a)
//   Pi(a) : (a > o) > o        (universal quantification at type a)
//
// Everything else (conjunction, implication, existentials, modal
// operators, ...) is built from these by the helpers below or by signature
// definitions. Terms are immutable and shared.
enum class TermKind { Const, Var, Lam, App, Neg, Or, Eq, Pi };

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
public:
  TermKind kind;
  std::string name; // Const, Var: symbol; Lam: bound variable name
  TypePtr ty;       // Const, Var: their type; Lam: bound variable type;
                    // Eq, Pi: the type parameter a
  TermPtr child0;   // Lam: body; App: function
  TermPtr child1;   // App: argument

  Term(TermKind k, std::string n, TypePtr t, TermPtr c0, TermPtr c1)
      : kind(k), name(std::move(n)), ty(std::move(t)),
        child0(std::move(c0)), child1(std::move(c1)) {}
};

inline TermPtr constant(std::string name, TypePtr ty) {
  if (name.empty()) throw std::invalid_argument("constant name must be nonempty");
  return std::make_shared<const Term>(TermKind::Const, std::move(name), std::move(ty),
                                      nullptr, nullptr);
}
inline TermPtr var(std::string name, TypePtr ty) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  return std::make_shared<const Term>(TermKind::Var, std::move(name), std::move(ty),
                                      nullptr, nullptr);
}
inline TermPtr lam(std::string bound, TypePtr bound_ty, TermPtr body) {
  if (!body) throw std::invalid_argument("lam with null body");
  return std::make_shared<const Term>(TermKind::Lam, std::move(bound),
                                      std::move(bound_ty), std::move(body), nullptr);
}
inline TermPtr app(TermPtr f, TermPtr a) {
  if (!f || !a) throw std::invalid_argument("app with null child");
  return std::make_shared<const Term>(TermKind::App, std::string(), nullptr,
                                      std::move(f), std::move(a));
}
inline TermPtr app(TermPtr f, std::initializer_list<TermPtr> args) {
  for (const TermPtr& a : args) f = app(std::move(f), a);
  return f;
}

inline const TermPtr& neg_c() {
  static const TermPtr t = std::make_shared<const Term>(TermKind::Neg, "", nullptr,
                                                        nullptr, nullptr);
  return t;
}
inline const TermPtr& or_c() {
  static const TermPtr t = std::make_shared<const Term>(TermKind::Or, "", nullptr,
                                                        nullptr, nullptr);
  return t;
}
inline TermPtr eq_c(TypePtr at) {
  return std::make_shared<const Term>(TermKind::Eq, "", std::move(at), nullptr, nullptr);
}
inline TermPtr pi_c(TypePtr at) {
  return std::make_shared<const Term>(TermKind::Pi, "", std::move(at), nullptr, nullptr);
}

// ---- derived connectives (expanded immediately into the primitives) ----

inline TermPtr not_(TermPtr a) { return app(neg_c(), std::move(a)); }
inline TermPtr or_(TermPtr a, TermPtr b) { return app(app(or_c(), std::move(a)), std::move(b)); }
inline TermPtr and_(TermPtr a, TermPtr b) {
  return not_(or_(not_(std::move(a)), not_(std::move(b))));
}
inline TermPtr implies_(TermPtr a, TermPtr b) { return or_(not_(std::move(a)), std::move(b)); }
inline TermPtr iff_(TermPtr a, TermPtr b) {
  TermPtr fwd = implies_(a, b); // sequenced before the moves below
  return and_(std::move(fwd), implies_(std::move(b), std::move(a)));
}
inline TermPtr eq_(TypePtr at, TermPtr a, TermPtr b) {
  return app(app(eq_c(std::move(at)), std::move(a)), std::move(b));
}
inline TermPtr forall(std::string x, TypePtr ty, TermPtr body) {
  TermPtr p = pi_c(ty);
  return app(std::move(p), lam(std::move(x), std::move(ty), std::move(body)));
}
inline TermPtr exists(std::string x, TypePtr ty, TermPtr body) {
  return not_(forall(std::move(x), std::move(ty), not_(std::move(body))));
}

// ---- structural queries ----

inline void collect_free_vars(const TermPtr& t, std::set<std::string>& bound,
                              std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case TermKind::Lam: {
      bool fresh = bound.insert(t->name).second;
      collect_free_vars(t->child0, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
    case TermKind::App:
      collect_free_vars(t->child0, bound, out);
      collect_free_vars(t->child1, bound, out);
      return;
    default:
      return;
  }
}

inline std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  collect_free_vars(t, bound, out);
  return out;
}

inline void collect_constants(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Const: out.insert(t->name); return;
    case TermKind::Lam: collect_constants(t->child0, out); return;
    case TermKind::App:
      collect_constants(t->child0, out);
      collect_constants(t->child1, out);
      return;
    default: return;
  }
}

inline std::set<std::string> constants_of(const TermPtr& t) {
  std::set<std::string> out;
  collect_constants(t, out);
  return out;
}

inline size_t term_size(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Lam: return 1 + term_size(t->child0);
    case TermKind::App: return 1 + term_size(t->child0) + term_size(t->child1);
    default: return 1;
  }
}

// Smallest numeric suffix that avoids every name in `used`; "X" -> "X1",
// "X1" if taken -> "X2", ... The base itself is always considered taken.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  for (size_t k = 1;; ++k) {
    std::string cand = base + std::to_string(k);
    if (!used.count(cand)) return cand;
  }
}

// ---- alpha-equivalence ----

namespace detail {
inline bool alpha_equal_rec(const TermPtr& a, const TermPtr& b,
                            std::map<std::string, size_t>& la,
                            std::map<std::string, size_t>& lb, size_t depth) {
  if (a.get() == b.get() && la.empty() && lb.empty()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Const:
      return a->name == b->name && type_equal(a->ty, b->ty);
    case TermKind::Var: {
      auto ia = la.find(a->name);
      auto ib = lb.find(b->name);
      if ((ia == la.end()) != (ib == lb.end())) return false;
      if (ia != la.end()) return ia->second == ib->second;
      return a->name == b->name && type_equal(a->ty, b->ty);
    }
    case TermKind::Lam: {
      if (!type_equal(a->ty, b->ty)) return false;
      auto olda = la.find(a->name) == la.end() ? std::optional<size_t>{}
                                               : std::optional<size_t>{la[a->name]};
      auto oldb = lb.find(b->name) == lb.end() ? std::optional<size_t>{}
                                               : std::optional<size_t>{lb[b->name]};
      la[a->name] = depth;
      lb[b->name] = depth;
      bool r = alpha_equal_rec(a->child0, b->child0, la, lb, depth + 1);
      if (olda) la[a->name] = *olda; else la.erase(a->name);
      if (oldb) lb[b->name] = *oldb; else lb.erase(b->name);
      return r;
    }
    case TermKind::App:
      return alpha_equal_rec(a->child0, b->child0, la, lb, depth) &&
             alpha_equal_rec(a->child1, b->child1, la, lb, depth);
    case TermKind::Neg:
    case TermKind::Or:
      return true;
    case TermKind::Eq:
    case TermKind::Pi:
      return type_equal(a->ty, b->ty);
  }
  return false;
}
} // namespace detail

inline bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  std::map<std::string, size_t> la, lb;
  return detail::alpha_equal_rec(a, b, la, lb, 0);
}

// ---- capture-avoiding substitution ----

namespace detail {
inline TermPtr rename_bound(const TermPtr& lam_term, const std::string& fresh);

inline TermPtr substitute_rec(const TermPtr& t, const std::string& x,
                              const TypePtr& x_ty, const TermPtr& s,
                              const std::set<std::string>& fv_s) {
  switch (t->kind) {
    case TermKind::Var:
      if (t->name == x) {
        if (!type_equal(t->ty, x_ty))
          throw std::logic_error("substitute: variable '" + x + "' occurs at type " +
                                 show_type(t->ty) + ", expected " + show_type(x_ty));
        return s;
      }
      return t;
    case TermKind::Lam: {
      if (t->name == x) return t; // shadowed below the binder
      if (fv_s.count(t->name)) {
        // Binder would capture a free variable of s: rename it first.
        std::set<std::string> used = free_vars(t->child0);
        used.insert(fv_s.begin(), fv_s.end());
        used.insert(x);
        std::string nn = fresh_name(t->name, used);
        TermPtr renamed = rename_bound(t, nn);
        return substitute_rec(renamed, x, x_ty, s, fv_s);
      }
      TermPtr body = substitute_rec(t->child0, x, x_ty, s, fv_s);
      if (body.get() == t->child0.get()) return t;
      return lam(t->name, t->ty, body);
    }
    case TermKind::App: {
      TermPtr f = substitute_rec(t->child0, x, x_ty, s, fv_s);
      TermPtr a = substitute_rec(t->child1, x, x_ty, s, fv_s);
      if (f.get() == t->child0.get() && a.get() == t->child1.get()) return t;
      return app(f, a);
    }
    default:
      return t;
  }
}

inline TermPtr rename_bound(const TermPtr& lam_term, const std::string& nn) {
  TermPtr nv = var(nn, lam_term->ty);
  std::set<std::string> fv{nn};
  TermPtr body = substitute_rec(lam_term->child0, lam_term->name, lam_term->ty, nv, fv);
  return lam(nn, lam_term->ty, body);
}
} // namespace detail

// Replaces every free occurrence of the variable (x : x_ty) in t by s,
// renaming binders in t where they would capture free variables of s.
inline TermPtr substitute(const TermPtr& t, const std::string& x, const TypePtr& x_ty,
                          const TermPtr& s) {
  return detail::substitute_rec(t, x, x_ty, s, free_vars(s));
}

} // namespace holembed::stt
