#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "holembed/logics/ast.hpp"
#include "holembed/stt/error.hpp"

namespace holembed::semantics {

struct SemanticsError : Error {
  using Error::Error;
};

// Finite constant-domain Kripke model. Worlds are 0..n_worlds-1, individuals
// 0..n_individuals-1. A relation is a bitmask with bit w*n_worlds+v set when
// w reaches v. Propositional constants hold a bitmask over worlds; an
// arity-k predicate holds one world-bitmask per argument tuple, indexed
// x1 + x2*m + x3*m^2 + ... (first argument fastest).
struct KripkeModel {
  size_t n_worlds = 1;
  size_t n_individuals = 1;
  std::map<std::string, uint64_t> rel;
  std::map<std::string, uint64_t> prop;
  std::map<std::string, std::vector<uint64_t>> pred;
  std::map<std::string, size_t> ind;

  bool reaches(const std::string& r, size_t w, size_t v) const {
    auto it = rel.find(r);
    if (it == rel.end()) throw SemanticsError("unknown relation '" + r + "'");
    return (it->second >> (w * n_worlds + v)) & 1;
  }
};

// Variable bindings during evaluation: propositional variables denote world
// sets (bitmasks), individual variables denote domain elements. Innermost
// binding wins.
struct QmlEnv {
  std::vector<std::pair<std::string, uint64_t>> props;
  std::vector<std::pair<std::string, size_t>> inds;

  const uint64_t* prop_of(const std::string& n) const {
    for (auto it = props.rbegin(); it != props.rend(); ++it)
      if (it->first == n) return &it->second;
    return nullptr;
  }
  const size_t* ind_of(const std::string& n) const {
    for (auto it = inds.rbegin(); it != inds.rend(); ++it)
      if (it->first == n) return &it->second;
    return nullptr;
  }
};

// Direct recursive truth evaluation at a world. Propositional quantifiers
// range over the full powerset of worlds; individual quantifiers over the
// whole (world-independent) domain. Connective sugar is evaluated directly
// so desugaring can be cross-checked against this path.
inline bool eval_qml(const KripkeModel& M, size_t w, const logics::QmlPtr& f,
                     QmlEnv& env) {
  using logics::QmlKind;
  switch (f->kind) {
    case QmlKind::PropVar: {
      const uint64_t* v = env.prop_of(f->name);
      if (!v) throw SemanticsError("unbound propositional variable '" + f->name + "'");
      return (*v >> w) & 1;
    }
    case QmlKind::Atom: {
      if (f->args.empty()) {
        auto it = M.prop.find(f->name);
        if (it == M.prop.end())
          throw SemanticsError("unknown propositional constant '" + f->name + "'");
        return (it->second >> w) & 1;
      }
      auto it = M.pred.find(f->name);
      if (it == M.pred.end())
        throw SemanticsError("unknown predicate '" + f->name + "'");
      size_t tuple = 0, scale = 1;
      for (const auto& a : f->args) {
        size_t x;
        if (logics::is_variable_name(a)) {
          const size_t* b = env.ind_of(a);
          if (!b) throw SemanticsError("unbound individual variable '" + a + "'");
          x = *b;
        } else {
          auto ci = M.ind.find(a);
          if (ci == M.ind.end())
            throw SemanticsError("unknown individual constant '" + a + "'");
          x = ci->second;
        }
        tuple += x * scale;
        scale *= M.n_individuals;
      }
      return (it->second.at(tuple) >> w) & 1;
    }
    case QmlKind::Neg: return !eval_qml(M, w, f->sub0, env);
    case QmlKind::And:
      return eval_qml(M, w, f->sub0, env) && eval_qml(M, w, f->sub1, env);
    case QmlKind::Or:
      return eval_qml(M, w, f->sub0, env) || eval_qml(M, w, f->sub1, env);
    case QmlKind::Implies:
      return !eval_qml(M, w, f->sub0, env) || eval_qml(M, w, f->sub1, env);
    case QmlKind::Iff:
      return eval_qml(M, w, f->sub0, env) == eval_qml(M, w, f->sub1, env);
    case QmlKind::Box: {
      for (size_t v = 0; v < M.n_worlds; ++v)
        if (M.reaches(f->name, w, v) && !eval_qml(M, v, f->sub0, env)) return false;
      return true;
    }
    case QmlKind::Diamond: {
      for (size_t v = 0; v < M.n_worlds; ++v)
        if (M.reaches(f->name, w, v) && eval_qml(M, v, f->sub0, env)) return true;
      return false;
    }
    case QmlKind::ForallInd:
    case QmlKind::ExistsInd: {
      bool want_all = f->kind == QmlKind::ForallInd;
      env.inds.emplace_back(f->name, 0);
      bool out = want_all;
      for (size_t x = 0; x < M.n_individuals; ++x) {
        env.inds.back().second = x;
        bool r = eval_qml(M, w, f->sub0, env);
        if (r != want_all) { out = !want_all; break; }
      }
      env.inds.pop_back();
      return out;
    }
    case QmlKind::ForallProp:
    case QmlKind::ExistsProp: {
      bool want_all = f->kind == QmlKind::ForallProp;
      uint64_t total = uint64_t{1} << M.n_worlds;
      env.props.emplace_back(f->name, 0);
      bool out = want_all;
      for (uint64_t p = 0; p < total; ++p) {
        env.props.back().second = p;
        bool r = eval_qml(M, w, f->sub0, env);
        if (r != want_all) { out = !want_all; break; }
      }
      env.props.pop_back();
      return out;
    }
  }
  throw SemanticsError("unhandled connective");
}

inline bool eval_qml(const KripkeModel& M, size_t w, const logics::QmlPtr& f) {
  QmlEnv env;
  return eval_qml(M, w, f, env);
}

// ---------------------------------------------------------------------------
// Frame enumeration and direct first-order property checks — a code path
// independent of both the term evaluator and eval_qml, for cross-checking.
// ---------------------------------------------------------------------------

inline bool rel_bit(uint64_t mask, size_t n, size_t w, size_t v) {
  return (mask >> (w * n + v)) & 1;
}

// Applies a world permutation to a relation bitmask.
inline uint64_t relabel_frame(uint64_t mask, size_t n, const std::vector<size_t>& perm) {
  uint64_t out = 0;
  for (size_t w = 0; w < n; ++w)
    for (size_t v = 0; v < n; ++v)
      if (rel_bit(mask, n, w, v)) out |= uint64_t{1} << (perm[w] * n + perm[v]);
  return out;
}

// All relation assignments for the given index count, ascending as packed
// bitmask tuples (last index fastest). With filter_isomorphic set (single
// index only), keeps one canonical representative per relabeling class.
inline void enumerate_frames(size_t n_worlds, size_t n_indices,
                             const std::function<void(const std::vector<uint64_t>&)>& visit,
                             bool filter_isomorphic = false) {
  if (n_worlds == 0 || n_worlds * n_worlds * n_indices > 62)
    throw SemanticsError("frame space too large to enumerate");
  uint64_t per = uint64_t{1} << (n_worlds * n_worlds);
  std::vector<size_t> perm(n_worlds);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<uint64_t> masks(n_indices, 0);

  std::function<void(size_t)> walk = [&](size_t k) {
    if (k == n_indices) {
      if (filter_isomorphic && n_indices == 1) {
        std::vector<size_t> p = perm;
        do {
          if (relabel_frame(masks[0], n_worlds, p) < masks[0]) return;
        } while (std::next_permutation(p.begin(), p.end()));
      }
      visit(masks);
      return;
    }
    for (uint64_t m = 0; m < per; ++m) {
      masks[k] = m;
      walk(k + 1);
    }
  };
  walk(0);
}

inline std::vector<uint64_t> enumerate_frames(size_t n_worlds,
                                              bool filter_isomorphic = false) {
  std::vector<uint64_t> out;
  enumerate_frames(n_worlds, 1, [&](const std::vector<uint64_t>& m) {
    out.push_back(m[0]);
  }, filter_isomorphic);
  return out;
}

// Direct loops over world tuples; deliberately does not share code with the
// term evaluator or the property λ-terms.
inline bool check_frame_property(uint64_t mask, size_t n, const std::string& name) {
  auto r = [&](size_t a, size_t b) { return rel_bit(mask, n, a, b); };
  if (name == "reflexive") {
    for (size_t s = 0; s < n; ++s)
      if (!r(s, s)) return false;
    return true;
  }
  if (name == "symmetric") {
    for (size_t s = 0; s < n; ++s)
      for (size_t t = 0; t < n; ++t)
        if (r(s, t) && !r(t, s)) return false;
    return true;
  }
  if (name == "serial") {
    for (size_t s = 0; s < n; ++s) {
      bool hit = false;
      for (size_t t = 0; t < n && !hit; ++t) hit = r(s, t);
      if (!hit) return false;
    }
    return true;
  }
  if (name == "transitive") {
    for (size_t s = 0; s < n; ++s)
      for (size_t t = 0; t < n; ++t)
        for (size_t u = 0; u < n; ++u)
          if (r(s, t) && r(t, u) && !r(s, u)) return false;
    return true;
  }
  if (name == "euclidean") {
    for (size_t s = 0; s < n; ++s)
      for (size_t t = 0; t < n; ++t)
        for (size_t u = 0; u < n; ++u)
          if (r(s, t) && r(s, u) && !r(t, u)) return false;
    return true;
  }
  if (name == "partially_functional") {
    for (size_t s = 0; s < n; ++s)
      for (size_t t = 0; t < n; ++t)
        for (size_t u = 0; u < n; ++u)
          if (r(s, t) && r(s, u) && t != u) return false;
    return true;
  }
  if (name == "functional") {
    for (size_t s = 0; s < n; ++s) {
      size_t count = 0;
      for (size_t t = 0; t < n; ++t) count += r(s, t);
      if (count != 1) return false;
    }
    return true;
  }
  if (name == "weakly_dense") {
    for (size_t s = 0; s < n; ++s)
      for (size_t t = 0; t < n; ++t) {
        if (!r(s, t)) continue;
        bool mid = false;
        for (size_t u = 0; u < n && !mid; ++u) mid = r(s, u) && r(u, t);
        if (!mid) return false;
      }
    return true;
  }
  if (name == "weakly_connected") {
    for (size_t s = 0; s < n; ++s)
      for (size_t t = 0; t < n; ++t)
        for (size_t u = 0; u < n; ++u)
          if (r(s, t) && r(s, u) && !(r(t, u) || t == u || r(u, t))) return false;
    return true;
  }
  if (name == "weakly_directed") {
    for (size_t s = 0; s < n; ++s)
      for (size_t t = 0; t < n; ++t)
        for (size_t u = 0; u < n; ++u) {
          if (!(r(s, t) && r(s, u))) continue;
          bool join = false;
          for (size_t v = 0; v < n && !join; ++v) join = r(t, v) && r(u, v);
          if (!join) return false;
        }
    return true;
  }
  throw SemanticsError("unknown frame property '" + name + "'");
}

} // namespace holembed::semantics
