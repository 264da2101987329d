#pragma once

#include <map>
#include <string>
#include <vector>

#include "holembed/logics/ast.hpp"
#include "holembed/stt/normalize.hpp"
#include "holembed/stt/signature.hpp"
#include "holembed/stt/typecheck.hpp"

namespace holembed::embed {

using stt::TermPtr;
using stt::TypePtr;

// Lifted propositions depend on the world of evaluation.
inline TypePtr prop_ty() { return stt::fn(stt::world_ty(), stt::bool_ty()); }
// Accessibility relations between worlds.
inline TypePtr acc_ty() { return stt::fn(stt::world_ty(), stt::world_ty(), stt::bool_ty()); }

struct EmbedError : Error {
  using Error::Error;
};

namespace detail {

// Typed references to the operator constants, independent of any signature
// instance (the names and types below are fixed library-wide).
inline TermPtr op_mnot() { return stt::constant("mnot", stt::fn(prop_ty(), prop_ty())); }
inline TermPtr op_mor() { return stt::constant("mor", stt::fn(prop_ty(), prop_ty(), prop_ty())); }
inline TermPtr op_mand() { return stt::constant("mand", stt::fn(prop_ty(), prop_ty(), prop_ty())); }
inline TermPtr op_mimp() { return stt::constant("mimp", stt::fn(prop_ty(), prop_ty(), prop_ty())); }
inline TermPtr op_mequ() { return stt::constant("mequ", stt::fn(prop_ty(), prop_ty(), prop_ty())); }
inline TermPtr op_mtop() { return stt::constant("mtop", prop_ty()); }
inline TermPtr op_mbot() { return stt::constant("mbot", prop_ty()); }
inline TermPtr op_mbox() { return stt::constant("mbox", stt::fn(acc_ty(), stt::fn(prop_ty(), prop_ty()))); }
inline TermPtr op_mdia() { return stt::constant("mdia", stt::fn(acc_ty(), stt::fn(prop_ty(), prop_ty()))); }
inline TermPtr op_mall_i() {
  return stt::constant("mall_i", stt::fn(stt::fn(stt::ind_ty(), prop_ty()), prop_ty()));
}
inline TermPtr op_mexi_i() {
  return stt::constant("mexi_i", stt::fn(stt::fn(stt::ind_ty(), prop_ty()), prop_ty()));
}
inline TermPtr op_mall_p() {
  return stt::constant("mall_p", stt::fn(stt::fn(prop_ty(), prop_ty()), prop_ty()));
}
inline TermPtr op_mexi_p() {
  return stt::constant("mexi_p", stt::fn(stt::fn(prop_ty(), prop_ty()), prop_ty()));
}
inline TermPtr op_valid() { return stt::constant("valid", stt::fn(prop_ty(), stt::bool_ty())); }

} // namespace detail

// Convenient applied forms.
inline TermPtr mnot(TermPtr a) { return stt::app(detail::op_mnot(), std::move(a)); }
inline TermPtr mor(TermPtr a, TermPtr b) {
  return stt::app(detail::op_mor(), {std::move(a), std::move(b)});
}
inline TermPtr mand(TermPtr a, TermPtr b) {
  return stt::app(detail::op_mand(), {std::move(a), std::move(b)});
}
inline TermPtr mimp(TermPtr a, TermPtr b) {
  return stt::app(detail::op_mimp(), {std::move(a), std::move(b)});
}
inline TermPtr mequ(TermPtr a, TermPtr b) {
  return stt::app(detail::op_mequ(), {std::move(a), std::move(b)});
}
inline TermPtr mbox(TermPtr rel, TermPtr a) {
  return stt::app(detail::op_mbox(), {std::move(rel), std::move(a)});
}
inline TermPtr mdia(TermPtr rel, TermPtr a) {
  return stt::app(detail::op_mdia(), {std::move(rel), std::move(a)});
}
inline TermPtr mall_i(const std::string& x, TermPtr body) {
  return stt::app(detail::op_mall_i(), stt::lam(x, stt::ind_ty(), std::move(body)));
}
inline TermPtr mexi_i(const std::string& x, TermPtr body) {
  return stt::app(detail::op_mexi_i(), stt::lam(x, stt::ind_ty(), std::move(body)));
}
inline TermPtr mall_p(const std::string& p, TermPtr body) {
  return stt::app(detail::op_mall_p(), stt::lam(p, prop_ty(), std::move(body)));
}
inline TermPtr mexi_p(const std::string& p, TermPtr body) {
  return stt::app(detail::op_mexi_p(), stt::lam(p, prop_ty(), std::move(body)));
}

// Declares the operator layer: the connectives of the modal object language
// as definitions over the kernel primitives. Requires base w (and i for the
// individual quantifiers; they are skipped when i is absent).
inline void declare_modal_operators(stt::Signature& sig) {
  using namespace stt;
  TypePtr p = prop_ty();
  TypePtr r = acc_ty();
  auto phi = var("Phi", p);
  auto psi = var("Psi", p);
  auto rel = var("R", r);
  auto w = var("W", world_ty());
  auto v = var("V", world_ty());

  define_checked(sig, "mnot", fn(p, p),
                 lam("Phi", p, lam("W", world_ty(), not_(app(phi, w)))));
  define_checked(sig, "mor", fn(p, p, p),
                 lam("Phi", p, lam("Psi", p, lam("W", world_ty(),
                     or_(app(phi, w), app(psi, w))))));
  define_checked(sig, "mand", fn(p, p, p),
                 lam("Phi", p, lam("Psi", p,
                     mnot(mor(mnot(phi), mnot(psi))))));
  define_checked(sig, "mimp", fn(p, p, p),
                 lam("Phi", p, lam("Psi", p, mor(mnot(phi), psi))));
  define_checked(sig, "mequ", fn(p, p, p),
                 lam("Phi", p, lam("Psi", p,
                     mand(mimp(phi, psi), mimp(psi, phi)))));
  define_checked(sig, "mtop", p,
                 lam("W", world_ty(), not_(forall("X", bool_ty(), var("X", bool_ty())))));
  define_checked(sig, "mbot", p,
                 lam("W", world_ty(), forall("X", bool_ty(), var("X", bool_ty()))));
  define_checked(sig, "mbox", fn(r, p, p),
                 lam("R", r, lam("Phi", p, lam("W", world_ty(),
                     forall("V", world_ty(),
                            or_(not_(app(app(rel, w), v)), app(phi, v)))))));
  define_checked(sig, "mdia", fn(r, p, p),
                 lam("R", r, lam("Phi", p, mnot(mbox(rel, mnot(phi))))));
  if (sig.has_base("i")) {
    TypePtr ip = fn(ind_ty(), p);
    auto phii = var("Phi", ip);
    auto x = var("X", ind_ty());
    define_checked(sig, "mall_i", fn(ip, p),
                   lam("Phi", ip, lam("W", world_ty(),
                       forall("X", ind_ty(), app(app(phii, x), w)))));
    define_checked(sig, "mexi_i", fn(ip, p),
                   lam("Phi", ip,
                       mnot(stt::app(detail::op_mall_i(),
                                     lam("X", ind_ty(), mnot(app(phii, x)))))));
  }
  TypePtr pp = fn(p, p);
  auto phip = var("Phi", pp);
  auto pv = var("P", p);
  define_checked(sig, "mall_p", fn(pp, p),
                 lam("Phi", pp, lam("W", world_ty(),
                     forall("P", p, app(app(phip, pv), w)))));
  define_checked(sig, "mexi_p", fn(pp, p),
                 lam("Phi", pp,
                     mnot(stt::app(detail::op_mall_p(),
                                   lam("P", p, mnot(app(phip, pv)))))));
  define_checked(sig, "valid", fn(p, bool_ty()),
                 lam("Phi", p, forall("W", world_ty(), app(phi, w))));
}

// The object-language vocabulary of a multimodal problem, elaborated into a
// kernel signature:
//
//   index r     ->  r : w > w > o
//   pred k/n    ->  k : i > ... > i > (w > o)   (n times i; n = 0 gives w > o)
//   const a     ->  a : i
//
// Declaration order (worlds, operator layer, accessibility relations,
// predicates, individual constants) is what the model search and the THF
// emitter see. Name collisions between the groups are resolved with fresh
// numeric suffixes; the *_name accessors give the resolved names.
class ModalSignature {
public:
  ModalSignature(const std::vector<std::string>& indices,
                 const std::vector<std::pair<std::string, size_t>>& predicates,
                 const std::vector<std::string>& individuals = {}) {
    sig_.declare_base("w");
    bool need_i = !individuals.empty();
    for (const auto& [p, n] : predicates)
      if (n > 0) need_i = true;
    if (need_i) sig_.declare_base("i");
    declare_modal_operators(sig_);
    for (const auto& r : indices)
      index_names_[r] = sig_.declare_const_fresh(r, acc_ty());
    for (const auto& [k, n] : predicates) {
      TypePtr ty = prop_ty();
      for (size_t j = 0; j < n; ++j) ty = stt::fn(stt::ind_ty(), ty);
      pred_arity_[k] = n;
      pred_names_[k] = sig_.declare_const_fresh(k, ty);
    }
    for (const auto& c : individuals)
      ind_names_[c] = sig_.declare_const_fresh(c, stt::ind_ty());
  }

  const stt::Signature& sig() const { return sig_; }
  stt::Signature& sig() { return sig_; }

  TermPtr index_term(const std::string& r) const {
    return sig_.const_term(resolved(index_names_, r, "accessibility index"));
  }
  TermPtr pred_term(const std::string& k) const {
    return sig_.const_term(resolved(pred_names_, k, "predicate"));
  }
  TermPtr ind_term(const std::string& c) const {
    return sig_.const_term(resolved(ind_names_, c, "individual constant"));
  }
  size_t pred_arity(const std::string& k) const {
    auto it = pred_arity_.find(k);
    if (it == pred_arity_.end()) throw EmbedError("unknown predicate '" + k + "'");
    return it->second;
  }
  // Resolved (collision-mangled) constant names for each symbol kind.
  const std::string& index_name(const std::string& r) const {
    return resolved(index_names_, r, "accessibility index");
  }
  const std::string& pred_name(const std::string& k) const {
    return resolved(pred_names_, k, "predicate");
  }
  const std::string& ind_name(const std::string& c) const {
    return resolved(ind_names_, c, "individual constant");
  }
  bool has_index(const std::string& r) const { return index_names_.count(r) != 0; }
  bool has_pred(const std::string& k) const { return pred_names_.count(k) != 0; }
  bool has_ind(const std::string& c) const { return ind_names_.count(c) != 0; }

private:
  const std::string& resolved(const std::map<std::string, std::string>& m,
                              const std::string& n, const char* what) const {
    auto it = m.find(n);
    if (it == m.end())
      throw EmbedError(std::string("unknown ") + what + " '" + n + "'");
    return it->second;
  }

  stt::Signature sig_;
  std::map<std::string, std::string> index_names_, pred_names_, ind_names_;
  std::map<std::string, size_t> pred_arity_;
};

namespace detail {

struct QmlEmbedEnv {
  std::vector<std::string> ind_vars, prop_vars;
  bool ind_bound(const std::string& n) const {
    for (const auto& v : ind_vars) if (v == n) return true;
    return false;
  }
  bool prop_bound(const std::string& n) const {
    for (const auto& v : prop_vars) if (v == n) return true;
    return false;
  }
};

inline TermPtr embed_qml_rec(const logics::QmlPtr& f, const ModalSignature& ms,
                             QmlEmbedEnv& env) {
  using logics::QmlKind;
  switch (f->kind) {
    case QmlKind::PropVar:
      if (!env.prop_bound(f->name))
        throw EmbedError("unbound propositional variable '" + f->name + "'");
      return stt::var(f->name, prop_ty());
    case QmlKind::Atom: {
      if (ms.pred_arity(f->name) != f->args.size())
        throw EmbedError("predicate '" + f->name + "' applied to " +
                         std::to_string(f->args.size()) + " argument(s)");
      TermPtr t = ms.pred_term(f->name);
      for (const auto& a : f->args) {
        if (logics::is_variable_name(a)) {
          if (!env.ind_bound(a)) throw EmbedError("unbound variable '" + a + "'");
          t = stt::app(t, stt::var(a, stt::ind_ty()));
        } else {
          t = stt::app(t, ms.ind_term(a));
        }
      }
      return t;
    }
    case QmlKind::Neg: return mnot(embed_qml_rec(f->sub0, ms, env));
    case QmlKind::And:
      return mand(embed_qml_rec(f->sub0, ms, env), embed_qml_rec(f->sub1, ms, env));
    case QmlKind::Or:
      return mor(embed_qml_rec(f->sub0, ms, env), embed_qml_rec(f->sub1, ms, env));
    case QmlKind::Implies:
      return mimp(embed_qml_rec(f->sub0, ms, env), embed_qml_rec(f->sub1, ms, env));
    case QmlKind::Iff:
      return mequ(embed_qml_rec(f->sub0, ms, env), embed_qml_rec(f->sub1, ms, env));
    case QmlKind::Box:
      return mbox(ms.index_term(f->name), embed_qml_rec(f->sub0, ms, env));
    case QmlKind::Diamond:
      return mdia(ms.index_term(f->name), embed_qml_rec(f->sub0, ms, env));
    case QmlKind::ForallInd: {
      env.ind_vars.push_back(f->name);
      TermPtr body = embed_qml_rec(f->sub0, ms, env);
      env.ind_vars.pop_back();
      return mall_i(f->name, body);
    }
    case QmlKind::ExistsInd: {
      env.ind_vars.push_back(f->name);
      TermPtr body = embed_qml_rec(f->sub0, ms, env);
      env.ind_vars.pop_back();
      return mexi_i(f->name, body);
    }
    case QmlKind::ForallProp: {
      env.prop_vars.push_back(f->name);
      TermPtr body = embed_qml_rec(f->sub0, ms, env);
      env.prop_vars.pop_back();
      return mall_p(f->name, body);
    }
    case QmlKind::ExistsProp: {
      env.prop_vars.push_back(f->name);
      TermPtr body = embed_qml_rec(f->sub0, ms, env);
      env.prop_vars.pop_back();
      return mexi_p(f->name, body);
    }
  }
  throw EmbedError("malformed formula");
}

} // namespace detail

// Compositional translation into the kernel language; the result has type
// w > o. Every connective maps to the application of its operator constant:
// embed(~f) = mnot (embed f), and likewise throughout.
inline TermPtr embed_qml(const logics::QmlPtr& f, const ModalSignature& ms) {
  detail::QmlEmbedEnv env;
  return detail::embed_qml_rec(f, ms, env);
}

// valid t, for t of type w > o; rejects other argument types.
inline TermPtr wrap_valid(const TermPtr& t) {
  stt::TypePtr ty = stt::type_of(t);
  if (!stt::type_equal(ty, prop_ty()))
    throw stt::TypeError("valid expects an argument of type " +
                             stt::show_type(prop_ty()) + ", got " + stt::show_type(ty),
                         t);
  return stt::app(detail::op_valid(), t);
}

} // namespace holembed::embed
