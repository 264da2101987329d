#pragma once

#include <optional>

#include "holembed/stt/signature.hpp"
#include "holembed/stt/term.hpp"

namespace holembed::stt {

namespace detail {

// Contracts the leftmost-outermost beta redex, if any. "Leftmost-outermost"
// is with respect to prefix traversal order: a redex at a node precedes any
// redex inside it, and redexes in a function part precede those in the
// argument.
inline std::optional<TermPtr> beta_step(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::App: {
      if (t->child0->kind == TermKind::Lam) {
        const TermPtr& l = t->child0;
        return substitute(l->child0, l->name, l->ty, t->child1);
      }
      if (auto f = beta_step(t->child0)) return app(*f, t->child1);
      if (auto a = beta_step(t->child1)) return app(t->child0, *a);
      return std::nullopt;
    }
    case TermKind::Lam: {
      if (auto b = beta_step(t->child0)) return lam(t->name, t->ty, *b);
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

// Bottom-up eta contraction: \X. (f X) -> f when X not free in f. On a
// beta-normal input a single bottom-up pass reaches eta-normal form
// (contracting a child can only expose a new redex at its parent, which is
// visited afterwards).
inline TermPtr eta_contract(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::App: {
      TermPtr f = eta_contract(t->child0);
      TermPtr a = eta_contract(t->child1);
      if (f.get() == t->child0.get() && a.get() == t->child1.get()) return t;
      return app(f, a);
    }
    case TermKind::Lam: {
      TermPtr body = eta_contract(t->child0);
      if (body->kind == TermKind::App && body->child1->kind == TermKind::Var &&
          body->child1->name == t->name && !free_vars(body->child0).count(t->name)) {
        return body->child0;
      }
      if (body.get() == t->child0.get()) return t;
      return lam(t->name, t->ty, body);
    }
    default:
      return t;
  }
}

} // namespace detail

inline bool has_beta_redex(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::App:
      return t->child0->kind == TermKind::Lam || has_beta_redex(t->child0) ||
             has_beta_redex(t->child1);
    case TermKind::Lam:
      return has_beta_redex(t->child0);
    default:
      return false;
  }
}

inline bool has_eta_redex(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::App:
      return has_eta_redex(t->child0) || has_eta_redex(t->child1);
    case TermKind::Lam: {
      const TermPtr& b = t->child0;
      if (b->kind == TermKind::App && b->child1->kind == TermKind::Var &&
          b->child1->name == t->name && !free_vars(b->child0).count(t->name))
        return true;
      return has_eta_redex(b);
    }
    default:
      return false;
  }
}

// Beta-eta normal form: repeated leftmost-outermost beta contraction to
// beta-normal form, then bottom-up eta contraction. Terminates on well-typed
// input (simply typed terms are strongly normalizing).
inline TermPtr beta_eta_normalize(TermPtr t) {
  while (auto next = detail::beta_step(t)) t = *next;
  return detail::eta_contract(t);
}

// Replaces defined constants by their bodies until none remain. Definition
// bodies may reference earlier definitions, so unfolding iterates to a
// fixpoint; acyclicity is guaranteed by the signature's declaration-order
// invariant. The result is not normalized; see unfold_normalize.
inline TermPtr unfold_definitions(const TermPtr& t, const Signature& sig) {
  struct Walk {
    const Signature& sig;
    bool changed = false;
    TermPtr go(const TermPtr& u) {
      switch (u->kind) {
        case TermKind::Const:
          if (sig.has_const(u->name) && sig.is_defined(u->name)) {
            changed = true;
            return sig.definition(u->name);
          }
          return u;
        case TermKind::Lam: {
          TermPtr b = go(u->child0);
          return b.get() == u->child0.get() ? u : lam(u->name, u->ty, b);
        }
        case TermKind::App: {
          TermPtr f = go(u->child0);
          TermPtr a = go(u->child1);
          return (f.get() == u->child0.get() && a.get() == u->child1.get()) ? u : app(f, a);
        }
        default:
          return u;
      }
    }
  };
  TermPtr cur = t;
  for (;;) {
    Walk w{sig};
    TermPtr next = w.go(cur);
    cur = next;
    if (!w.changed) break;
  }
  return cur;
}

inline TermPtr unfold_normalize(const TermPtr& t, const Signature& sig) {
  return beta_eta_normalize(unfold_definitions(t, sig));
}

} // namespace holembed::stt
