#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "holembed/embed/modal.hpp"
#include "holembed/semantics/kripke.hpp"
#include "holembed/stt/normalize.hpp"
#include "holembed/stt/signature.hpp"
#include "holembed/stt/term.hpp"
#include "holembed/stt/type.hpp"

namespace holembed::semantics {

// Finite standard model: a carrier size per base type (o is always 2) and
// one value per uninterpreted constant, in declaration order.
//
// Values are dense indices into the full function-space hierarchy: an
// element of a base type is its index; a function f : a > b with |a| = A,
// |b| = B is encoded as sum over x of f(x)*B^x, so application is
// (f / B^x) % B. Everything fits in uint64 or the model is out of reach of
// this evaluator (guarded by type_card).
struct StandardModel {
  std::vector<std::pair<std::string, size_t>> carriers;

  struct ConstVal {
    std::string name;
    stt::TypePtr ty;
    uint64_t val = 0;
  };
  std::vector<ConstVal> consts;

  size_t carrier(const std::string& base) const {
    if (base == "o") return 2;
    for (const auto& [b, n] : carriers)
      if (b == base) return n;
    throw SemanticsError("no carrier for base type '" + base + "'");
  }
  bool has_carrier(const std::string& base) const {
    if (base == "o") return true;
    for (const auto& [b, n] : carriers)
      if (b == base) return true;
    return false;
  }
  const ConstVal* find(const std::string& name) const {
    for (const auto& c : consts)
      if (c.name == name) return &c;
    return nullptr;
  }
  void set(const std::string& name, stt::TypePtr ty, uint64_t val) {
    for (auto& c : consts)
      if (c.name == name) { c.ty = std::move(ty); c.val = val; return; }
    consts.push_back({name, std::move(ty), val});
  }
};

// Overflow-guarded b^e; the evaluator's representable limit.
inline constexpr uint64_t kCardLimit = uint64_t{1} << 62;

inline uint64_t checked_pow(uint64_t b, uint64_t e) {
  unsigned __int128 acc = 1;
  for (uint64_t i = 0; i < e; ++i) {
    acc *= b;
    if (acc > kCardLimit)
      throw SemanticsError("function space too large for dense evaluation");
  }
  return static_cast<uint64_t>(acc);
}

inline uint64_t type_card(const stt::TypePtr& ty, const StandardModel& M) {
  if (ty->is_base()) return M.carrier(ty->base_name());
  uint64_t A = type_card(ty->domain(), M);
  uint64_t B = type_card(ty->codomain(), M);
  return checked_pow(B, A);
}

inline uint64_t apply_index(uint64_t f, uint64_t x, uint64_t cod_card) {
  return (f / checked_pow(cod_card, x)) % cod_card;
}

// Type of a term from its annotations alone (terms reaching the evaluator
// are already checked).
inline stt::TypePtr annotated_type(const stt::TermPtr& t) {
  using stt::TermKind;
  switch (t->kind) {
    case TermKind::Const:
    case TermKind::Var: return t->ty;
    case TermKind::Neg: return stt::fn(stt::bool_ty(), stt::bool_ty());
    case TermKind::Or:
      return stt::fn(stt::bool_ty(), stt::bool_ty(), stt::bool_ty());
    case TermKind::Eq: return stt::fn(t->ty, t->ty, stt::bool_ty());
    case TermKind::Pi:
      return stt::fn(stt::fn(t->ty, stt::bool_ty()), stt::bool_ty());
    case TermKind::Lam:
      return stt::SimpleType::arrow(t->ty, annotated_type(t->child0));
    case TermKind::App: return annotated_type(t->child0)->codomain();
  }
  throw SemanticsError("unhandled term kind");
}

namespace detail {

struct SttEnv {
  std::vector<std::pair<std::string, uint64_t>> vals;
  const uint64_t* find(const std::string& n) const {
    for (auto it = vals.rbegin(); it != vals.rend(); ++it)
      if (it->first == n) return &it->second;
    return nullptr;
  }
};

inline uint64_t eval_rec(const StandardModel& M, const stt::TermPtr& t, SttEnv& env,
                         const stt::Signature* sig);

// Materializes a function value by enumerating its domain.
inline uint64_t reify_lam(const StandardModel& M, const stt::TermPtr& lam, SttEnv& env,
                          const stt::Signature* sig) {
  uint64_t A = type_card(lam->ty, M);
  uint64_t B = type_card(annotated_type(lam->child0), M);
  checked_pow(B, A); // representability guard
  unsigned __int128 acc = 0;
  env.vals.emplace_back(lam->name, 0);
  for (uint64_t x = 0; x < A; ++x) {
    env.vals.back().second = x;
    uint64_t r = eval_rec(M, lam->child0, env, sig);
    acc += static_cast<unsigned __int128>(r) * checked_pow(B, x);
  }
  env.vals.pop_back();
  return static_cast<uint64_t>(acc);
}

inline uint64_t eval_rec(const StandardModel& M, const stt::TermPtr& t, SttEnv& env,
                         const stt::Signature* sig) {
  using stt::TermKind;
  switch (t->kind) {
    case TermKind::Var: {
      if (const uint64_t* v = env.find(t->name)) return *v;
      throw SemanticsError("unbound variable '" + t->name + "' in evaluation");
    }
    case TermKind::Const: {
      if (sig && sig->is_defined(t->name)) {
        SttEnv closed;
        return eval_rec(M, sig->definition(t->name), closed, sig);
      }
      if (const StandardModel::ConstVal* c = M.find(t->name)) return c->val;
      throw SemanticsError("no model value for constant '" + t->name + "'");
    }
    case TermKind::Neg: return 1; // f(0)=1, f(1)=0 encoded over o
    case TermKind::Or: {
      // rows by first argument: x=0 -> identity, x=1 -> constantly true
      return 2 + 3 * 4;
    }
    case TermKind::Eq: {
      uint64_t A = type_card(t->ty, M);
      unsigned __int128 acc = 0;
      uint64_t rows = checked_pow(2, A);
      for (uint64_t x = 0; x < A; ++x)
        acc += static_cast<unsigned __int128>(checked_pow(2, x)) * checked_pow(rows, x);
      if (acc > kCardLimit)
        throw SemanticsError("equality value too large to materialize");
      return static_cast<uint64_t>(acc);
    }
    case TermKind::Pi: {
      uint64_t A = type_card(t->ty, M);
      if (A > 62) throw SemanticsError("quantifier value too large to materialize");
      // true exactly on the all-true predicate, whose index is 2^A - 1
      return checked_pow(2, (uint64_t{1} << A) - 1);
    }
    case TermKind::Lam: return reify_lam(M, t, env, sig);
    case TermKind::App: {
      const stt::TermPtr& f = t->child0;
      const stt::TermPtr& a = t->child1;
      if (f->kind == TermKind::Lam) {
        uint64_t x = eval_rec(M, a, env, sig);
        env.vals.emplace_back(f->name, x);
        uint64_t r = eval_rec(M, f->child0, env, sig);
        env.vals.pop_back();
        return r;
      }
      if (f->kind == TermKind::Neg) return 1 - eval_rec(M, a, env, sig);
      if (f->kind == TermKind::Pi) {
        uint64_t A = type_card(f->ty, M);
        if (a->kind == TermKind::Lam) {
          env.vals.emplace_back(a->name, 0);
          bool all = true;
          for (uint64_t x = 0; x < A && all; ++x) {
            env.vals.back().second = x;
            all = eval_rec(M, a->child0, env, sig) == 1;
          }
          env.vals.pop_back();
          return all;
        }
        uint64_t g = eval_rec(M, a, env, sig);
        for (uint64_t x = 0; x < A; ++x)
          if (!apply_index(g, x, 2)) return 0;
        return 1;
      }
      if (f->kind == TermKind::App) {
        const stt::TermPtr& ff = f->child0;
        if (ff->kind == TermKind::Or) {
          if (eval_rec(M, f->child1, env, sig)) return 1;
          return eval_rec(M, a, env, sig);
        }
        if (ff->kind == TermKind::Eq)
          return eval_rec(M, f->child1, env, sig) == eval_rec(M, a, env, sig);
      }
      uint64_t fv = eval_rec(M, f, env, sig);
      uint64_t x = eval_rec(M, a, env, sig);
      uint64_t B = type_card(annotated_type(t), M);
      return apply_index(fv, x, B);
    }
  }
  throw SemanticsError("unhandled term kind");
}

} // namespace detail

// Reference evaluator: slow, simple, recursive. `sig` supplies definitions;
// the term is unfolded and beta/eta-reduced up front so applied definition
// lambdas never have to be materialized as dense function values (their
// unapplied types can be astronomically large even on tiny carriers).
// Uninterpreted constants read their model value.
inline uint64_t eval_stt(const StandardModel& M, const stt::TermPtr& t,
                         const stt::Signature* sig = nullptr) {
  detail::SttEnv env;
  if (sig) return detail::eval_rec(M, stt::unfold_normalize(t, *sig), env, sig);
  return detail::eval_rec(M, t, env, sig);
}

inline bool eval_stt_bool(const StandardModel& M, const stt::TermPtr& t,
                          const stt::Signature* sig = nullptr) {
  return eval_stt(M, t, sig) == 1;
}

// ---------------------------------------------------------------------------
// Kripke -> standard model conversion.
// ---------------------------------------------------------------------------

// Encodes a relation bitmask as a w > w > o value: row w is the bitmask of
// successors, and rows stack with scale 2^n per world.
inline uint64_t relation_value(uint64_t mask, size_t n) {
  uint64_t rows = uint64_t{1} << n;
  unsigned __int128 acc = 0;
  for (size_t w = 0; w < n; ++w) {
    uint64_t row = (mask >> (w * n)) & (rows - 1);
    acc += static_cast<unsigned __int128>(row) * checked_pow(rows, w);
  }
  return static_cast<uint64_t>(acc);
}

namespace detail {

// Curried encoding of a predicate valuation: dimension j contributes its
// argument with stride m^j in the tuple index.
inline uint64_t pred_value(const std::vector<uint64_t>& tuples, size_t arity,
                           size_t m, size_t n_worlds, size_t offset, size_t stride) {
  if (arity == 0) return tuples.at(offset);
  uint64_t inner_ty_card = uint64_t{1} << n_worlds;
  for (size_t j = 0; j + 1 < arity; ++j) inner_ty_card = checked_pow(inner_ty_card, m);
  unsigned __int128 acc = 0;
  for (size_t x = 0; x < m; ++x) {
    uint64_t sub = pred_value(tuples, arity - 1, m, n_worlds, offset + x * stride,
                              stride * m);
    acc += static_cast<unsigned __int128>(sub) * checked_pow(inner_ty_card, x);
    if (acc > kCardLimit) throw SemanticsError("predicate value too large");
  }
  return static_cast<uint64_t>(acc);
}

} // namespace detail

// The standard model matching a Kripke model over the given modal
// signature: carriers w and (when present) i, relation constants as curried
// characteristic functions, predicates likewise, individuals as elements.
inline StandardModel standard_model_of(const KripkeModel& K,
                                       const embed::ModalSignature& ms) {
  StandardModel M;
  M.carriers.emplace_back("w", K.n_worlds);
  if (ms.sig().has_base("i")) M.carriers.emplace_back("i", K.n_individuals);

  for (const auto& [name, mask] : K.rel)
    M.set(ms.index_name(name), embed::acc_ty(), relation_value(mask, K.n_worlds));
  for (const auto& [name, worlds] : K.prop)
    M.set(ms.pred_name(name), embed::prop_ty(), worlds);
  for (const auto& [name, tuples] : K.pred) {
    size_t arity = ms.pred_arity(name);
    stt::TypePtr ty = embed::prop_ty();
    for (size_t j = 0; j < arity; ++j) ty = stt::fn(stt::ind_ty(), ty);
    M.set(ms.pred_name(name), ty,
          detail::pred_value(tuples, arity, K.n_individuals, K.n_worlds, 0, 1));
  }
  for (const auto& [name, x] : K.ind)
    M.set(ms.ind_name(name), stt::ind_ty(), x);
  return M;
}

// ---------------------------------------------------------------------------
// Witness rendering.
// ---------------------------------------------------------------------------

namespace detail {

inline void flatten_arrow(const stt::TypePtr& ty, std::vector<stt::TypePtr>& doms,
                          stt::TypePtr& cod) {
  if (ty->is_base()) { cod = ty; return; }
  doms.push_back(ty->domain());
  flatten_arrow(ty->codomain(), doms, cod);
}

} // namespace detail

// Renders one value: booleans as true/false, base elements as indices,
// predicates (bases... > o) as tuple lists, other functions as tables.
inline std::string show_value(uint64_t val, const stt::TypePtr& ty,
                              const StandardModel& M) {
  using std::to_string;
  if (ty->is_base())
    return ty->base_name() == "o" ? (val ? "true" : "false") : to_string(val);

  std::vector<stt::TypePtr> doms;
  stt::TypePtr cod;
  detail::flatten_arrow(ty, doms, cod);
  bool relation_like = cod->is_base() && cod->base_name() == "o";
  for (const auto& d : doms) relation_like = relation_like && d->is_base();

  if (relation_like) {
    std::vector<uint64_t> dims;
    for (const auto& d : doms) dims.push_back(type_card(d, M));
    std::string out = "{";
    bool first = true;
    std::vector<uint64_t> idx(doms.size(), 0);
    while (true) {
      uint64_t v = val;
      for (size_t j = 0; j < doms.size(); ++j) {
        uint64_t rest_card = 2;
        for (size_t k = doms.size(); k-- > j + 1;)
          rest_card = checked_pow(rest_card, dims[k]);
        v = apply_index(v, idx[j], rest_card);
      }
      if (v) {
        if (!first) out += ", ";
        first = false;
        out += "(";
        for (size_t j = 0; j < idx.size(); ++j)
          out += (j ? "," : "") + to_string(idx[j]);
        out += ")";
      }
      size_t j = 0;
      for (; j < idx.size(); ++j) {
        if (++idx[j] < dims[j]) break;
        idx[j] = 0;
      }
      if (j == idx.size()) break;
    }
    return out + "}";
  }

  uint64_t A = type_card(ty->domain(), M);
  uint64_t B = type_card(ty->codomain(), M);
  std::string out = "[";
  for (uint64_t x = 0; x < A; ++x) {
    if (x) out += ", ";
    out += to_string(x) + " -> " + show_value(apply_index(val, x, B), ty->codomain(), M);
  }
  return out + "]";
}

inline std::string show_model(const StandardModel& M) {
  std::ostringstream out;
  for (const auto& [b, n] : M.carriers) out << "carrier " << b << " = " << n << "\n";
  for (const auto& c : M.consts)
    out << "const " << c.name << " : " << stt::show_type(c.ty) << " = "
        << show_value(c.val, c.ty, M) << "\n";
  return out.str();
}

} // namespace holembed::semantics
