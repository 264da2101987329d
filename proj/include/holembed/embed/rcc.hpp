#pragma once

#include <string>
#include <vector>

#include "holembed/embed/modal.hpp"
#include "holembed/embed/problem.hpp"
#include "holembed/logics/ast.hpp"

namespace holembed::embed {

inline TypePtr region_ty() { return stt::SimpleType::base("region"); }

// Connectedness relation and the derived region predicates, in dependency
// order. Everything is binary over regions.
inline void add_rcc_core(stt::Signature& sig) {
  using namespace stt;
  TypePtr r = region_ty();
  TypePtr rel = fn(r, r, bool_ty());
  if (!sig.has_base("region")) sig.declare_base("region");
  sig.declare_const("c", rel);

  TermPtr X = var("X", r), Y = var("Y", r), Z = var("Z", r);
  auto c = [&](const TermPtr& a, const TermPtr& b) {
    return app(app(sig.const_term("c"), a), b);
  };
  auto bin = [&](const char* name, const TermPtr& a, const TermPtr& b) {
    return app(app(sig.const_term(name), a), b);
  };
  auto def2 = [&](const char* name, const TermPtr& body) {
    define_checked(sig, name, rel, lam("X", r, lam("Y", r, body)));
  };

  def2("dc", not_(c(X, Y)));
  def2("p", forall("Z", r, implies_(c(Z, X), c(Z, Y))));
  def2("eq", and_(bin("p", X, Y), bin("p", Y, X)));
  def2("o", exists("Z", r, and_(bin("p", Z, X), bin("p", Z, Y))));
  def2("po", and_(and_(bin("o", X, Y), not_(bin("p", X, Y))), not_(bin("p", Y, X))));
  def2("ec", and_(c(X, Y), not_(bin("o", X, Y))));
  def2("pp", and_(bin("p", X, Y), not_(bin("p", Y, X))));
  def2("tpp", and_(bin("pp", X, Y),
                   exists("Z", r, and_(bin("ec", Z, X), bin("ec", Z, Y)))));
  def2("ntpp", and_(bin("pp", X, Y),
                    not_(exists("Z", r, and_(bin("ec", Z, X), bin("ec", Z, Y))))));
}

// The two postulates about c itself, stated over regions directly.
inline std::vector<TermPtr> rcc_axioms(const stt::Signature& sig) {
  using namespace stt;
  TypePtr r = region_ty();
  TermPtr X = var("X", r), Y = var("Y", r);
  auto c = [&](const TermPtr& a, const TermPtr& b) {
    return app(app(sig.const_term("c"), a), b);
  };
  return {forall("X", r, c(X, X)),
          forall("X", r, forall("Y", r, implies_(c(X, Y), c(Y, X))))};
}

// First-order region formulas are already simply typed terms: atoms apply a
// declared predicate to region variables/constants, quantifiers range over
// regions.
inline TermPtr embed_fo(const logics::FoPtr& f, const stt::Signature& sig,
                        std::vector<std::string>* scope = nullptr) {
  using logics::FoKind;
  std::vector<std::string> local;
  if (!scope) scope = &local;

  auto arg_term = [&](const std::string& a) -> TermPtr {
    if (logics::is_variable_name(a)) {
      for (const auto& v : *scope)
        if (v == a) return stt::var(a, region_ty());
      throw EmbedError("unbound region variable '" + a + "'");
    }
    if (!sig.has_const(a)) throw EmbedError("unknown region constant '" + a + "'");
    return sig.const_term(a);
  };

  switch (f->kind) {
    case FoKind::Atom: {
      if (!sig.has_const(f->name))
        throw EmbedError("unknown region predicate '" + f->name + "'");
      TermPtr t = sig.const_term(f->name);
      for (const auto& a : f->args) t = stt::app(t, arg_term(a));
      return t;
    }
    case FoKind::Neg: return stt::not_(embed_fo(f->sub0, sig, scope));
    case FoKind::And:
      return stt::and_(embed_fo(f->sub0, sig, scope), embed_fo(f->sub1, sig, scope));
    case FoKind::Or:
      return stt::or_(embed_fo(f->sub0, sig, scope), embed_fo(f->sub1, sig, scope));
    case FoKind::Implies:
      return stt::implies_(embed_fo(f->sub0, sig, scope), embed_fo(f->sub1, sig, scope));
    case FoKind::Iff:
      return stt::iff_(embed_fo(f->sub0, sig, scope), embed_fo(f->sub1, sig, scope));
    case FoKind::Forall:
    case FoKind::Exists: {
      scope->push_back(f->name);
      TermPtr body = embed_fo(f->sub0, sig, scope);
      scope->pop_back();
      return f->kind == FoKind::Forall ? stt::forall(f->name, region_ty(), body)
                                       : stt::exists(f->name, region_ty(), body);
    }
  }
  throw EmbedError("unhandled region connective");
}

// Lifts a world-independent fact to a proposition: ^ [W: w]: t.
inline TermPtr lift_rigid(const TermPtr& t) { return stt::lam("W", stt::world_ty(), t); }

} // namespace holembed::embed
