#pragma once

#include <map>
#include <string>

#include "holembed/stt/error.hpp"
#include "holembed/stt/signature.hpp"
#include "holembed/stt/term.hpp"

namespace holembed::stt {

// Carries the innermost offending subterm so callers can print it.
struct TypeError : Error {
  TypeError(const std::string& msg, TermPtr at) : Error(msg), offending(std::move(at)) {}
  TermPtr offending;
};

namespace detail {

inline TypePtr type_of_rec(const TermPtr& t, const Signature* sig,
                           std::map<std::string, TypePtr>& env) {
  switch (t->kind) {
    case TermKind::Const: {
      if (sig) {
        if (!sig->has_const(t->name))
          throw TypeError("unknown constant '" + t->name + "'", t);
        if (!type_equal(sig->const_type(t->name), t->ty))
          throw TypeError("constant '" + t->name + "' used at type " + show_type(t->ty) +
                              ", declared " + show_type(sig->const_type(t->name)),
                          t);
      }
      return t->ty;
    }
    case TermKind::Var: {
      auto it = env.find(t->name);
      if (it != env.end()) {
        if (!type_equal(it->second, t->ty))
          throw TypeError("variable '" + t->name + "' used at type " + show_type(t->ty) +
                              ", bound at " + show_type(it->second),
                          t);
        return it->second;
      }
      return t->ty; // free variable: trust the annotation
    }
    case TermKind::Lam: {
      auto old = env.find(t->name) == env.end()
                     ? std::optional<TypePtr>{}
                     : std::optional<TypePtr>{env[t->name]};
      env[t->name] = t->ty;
      TypePtr body = type_of_rec(t->child0, sig, env);
      if (old) env[t->name] = *old; else env.erase(t->name);
      return fn(t->ty, body);
    }
    case TermKind::App: {
      TypePtr f = type_of_rec(t->child0, sig, env);
      TypePtr a = type_of_rec(t->child1, sig, env);
      if (!f->is_arrow())
        throw TypeError("application of non-function of type " + show_type(f), t);
      if (!type_equal(f->domain(), a))
        throw TypeError("argument type " + show_type(a) + " does not match domain " +
                            show_type(f->domain()),
                        t);
      return f->codomain();
    }
    case TermKind::Neg:
      return fn(bool_ty(), bool_ty());
    case TermKind::Or:
      return fn(bool_ty(), bool_ty(), bool_ty());
    case TermKind::Eq:
      return fn(t->ty, t->ty, bool_ty());
    case TermKind::Pi:
      return fn(fn(t->ty, bool_ty()), bool_ty());
  }
  throw TypeError("malformed term", t);
}

} // namespace detail

// Infers the type of t. Free variables are typed by `env` when present and
// by their annotation otherwise; annotations must agree with bindings.
// When a signature is given, every constant must be declared in it at the
// annotated type.
inline TypePtr type_of(const TermPtr& t, const Signature& sig,
                       std::map<std::string, TypePtr> env = {}) {
  return detail::type_of_rec(t, &sig, env);
}

// Annotation-trusting variant for signature-free contexts.
inline TypePtr type_of(const TermPtr& t, std::map<std::string, TypePtr> env = {}) {
  return detail::type_of_rec(t, nullptr, env);
}

// Signature::define plus the type check the signature itself cannot do.
inline void define_checked(Signature& sig, const std::string& name, TypePtr ty,
                           TermPtr body) {
  TypePtr actual = type_of(body, sig);
  if (!type_equal(actual, ty))
    throw TypeError("definition body for '" + name + "' has type " + show_type(actual) +
                        ", declared " + show_type(ty),
                    body);
  sig.define(name, std::move(ty), std::move(body));
}

} // namespace holembed::stt
