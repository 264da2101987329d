#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "holembed/embed/problem.hpp"
#include "holembed/semantics/eval.hpp"
#include "holembed/semantics/standard.hpp"
#include "holembed/stt/normalize.hpp"

namespace holembed::semantics {

// Per-base carrier size caps for the finite search, plus an evaluation
// budget (total compiled-node visits) as an emergency valve.
struct SearchBounds {
  std::map<std::string, size_t> max_size{{"w", 3}, {"i", 2}, {"region", 3}};
  size_t default_max = 3;
  uint64_t budget = 4'000'000'000ULL;

  size_t max_for(const std::string& base) const {
    auto it = max_size.find(base);
    return it == max_size.end() ? default_max : it->second;
  }
  SearchBounds& with(const std::string& base, size_t n) {
    max_size[base] = n;
    return *this;
  }
};

struct SearchStats {
  uint64_t tuples = 0;      // carrier-size tuples examined
  uint64_t candidates = 0;  // full constant assignments reached
  uint64_t ops = 0;         // compiled-node visits
};

struct BoundedVerdict {
  enum class Kind { Refuted, NoCountermodelUpToBound };
  Kind kind = Kind::NoCountermodelUpToBound;
  StandardModel model;                 // meaningful iff refuted()
  std::optional<size_t> witness_world; // least world falsifying a validity-shaped conjecture
  bool complete = true;                // false iff the budget ran out first
  std::string warning;                 // set when !complete
  SearchStats stats;

  bool refuted() const { return kind == Kind::Refuted; }
};

namespace detail {

struct BudgetExhausted {};

inline void collect_type_bases(const stt::TypePtr& ty, std::set<std::string>& out) {
  if (!ty) return;
  if (ty->is_base()) {
    if (ty->base_name() != "o") out.insert(ty->base_name());
    return;
  }
  collect_type_bases(ty->domain(), out);
  collect_type_bases(ty->codomain(), out);
}

inline void collect_consts_bases(const stt::TermPtr& t, std::set<std::string>& consts,
                                 std::set<std::string>& bases) {
  if (!t) return;
  if (t->ty) collect_type_bases(t->ty, bases);
  if (t->kind == stt::TermKind::Const) consts.insert(t->name);
  collect_consts_bases(t->child0, consts, bases);
  collect_consts_bases(t->child1, consts, bases);
}

// One formula scheduled in the assignment walk. Axioms must come out true,
// the conjecture false; `want` records the passing value. Formulas that
// ignore an earlier constant are re-evaluated under repeats of their read
// set, so those get a memo table keyed by the packed read values.
struct Check {
  CompiledFormula cf;
  bool want = true;
  int depth = -1;
  bool memo_on = false;
  std::vector<std::pair<size_t, unsigned>> packing; // (slot, shift)
  std::unordered_map<uint64_t, uint8_t> memo;
};

// Search state for one carrier-size tuple; threads each build their own.
struct TupleRun {
  std::vector<Check> checks;
  std::vector<std::vector<Check*>> by_depth; // index = slot depth
  std::vector<Check*> closed;                // no slots read
  std::vector<uint64_t> cards;               // per-slot value count
  std::vector<uint64_t> vals;                // current assignment
  uint64_t ops = 0;
  uint64_t ops_limit = UINT64_MAX;
  uint64_t candidates = 0;

  TupleRun(const std::vector<stt::TermPtr>& forms, size_t conj_idx,
           const std::vector<std::pair<std::string, stt::TypePtr>>& slots,
           const StandardModel& M) {
    size_t k = slots.size();
    cards.reserve(k);
    for (const auto& [name, ty] : slots) cards.push_back(type_card(ty, M));
    vals.assign(k, 0);
    std::vector<unsigned> width(k);
    for (size_t i = 0; i < k; ++i)
      width[i] = cards[i] <= 1 ? 0 : static_cast<unsigned>(std::bit_width(cards[i] - 1));

    checks.reserve(forms.size());
    for (size_t i = 0; i < forms.size(); ++i) {
      Check c;
      c.cf = CompiledFormula::compile(forms[i], slots, M);
      c.want = (i != conj_idx);
      c.depth = c.cf.max_slot();
      const auto& used = c.cf.slots_used();
      unsigned total_bits = 0;
      unsigned __int128 prod = 1;
      for (size_t s : used) {
        c.packing.emplace_back(s, total_bits);
        total_bits += width[s];
        prod *= cards[s];
      }
      bool skips_one = used.size() < static_cast<size_t>(c.depth + 1);
      c.memo_on = skips_one && total_bits <= 64 && prod <= (uint64_t{1} << 22);
      checks.push_back(std::move(c));
    }
    by_depth.assign(k, {});
    for (auto& c : checks) {
      if (c.depth < 0) closed.push_back(&c);
      else by_depth[static_cast<size_t>(c.depth)].push_back(&c);
    }
  }

  bool passes(Check& c) {
    uint64_t key = 0;
    if (c.memo_on) {
      for (const auto& [s, shift] : c.packing) key |= vals[s] << shift;
      auto it = c.memo.find(key);
      if (it != c.memo.end()) return (it->second != 0) == c.want;
    }
    bool r = c.cf.eval(vals, ops);
    if (ops > ops_limit) throw BudgetExhausted{};
    if (c.memo_on && c.memo.size() < (size_t{1} << 18)) c.memo.emplace(key, r ? 1 : 0);
    return r == c.want;
  }

  // Walks slots d.. with everything below d fixed; returns true on a full
  // assignment passing every check (vals holds the witness).
  bool dfs(size_t d, uint64_t lo, uint64_t hi) {
    size_t k = cards.size();
    if (d == k) return true;
    for (uint64_t v = lo; v < hi; ++v) {
      vals[d] = v;
      if (d + 1 == k) ++candidates;
      bool ok = true;
      for (Check* c : by_depth[d])
        if (!passes(*c)) { ok = false; break; }
      if (ok && dfs(d + 1, 0, d + 1 == k ? 0 : cards[d + 1])) return true;
    }
    return false;
  }

  bool run(uint64_t lo, uint64_t hi) {
    for (Check* c : closed)
      if (!passes(*c)) return false;
    if (cards.empty()) { ++candidates; return true; }
    return dfs(0, lo, hi);
  }
};

} // namespace detail

// Brute-force countermodel search over finite standard models: enumerates
// carrier sizes (ascending by total, then lexicographically in base
// declaration order), then all values for the uninterpreted constants
// occurring in the problem (declaration order, ascending). A hit is a model
// satisfying every axiom and falsifying the conjecture. Exhausting the space
// without a hit rules out countermodels up to the bounds, provided the
// budget did not run out (`complete`).
//
// `jobs` > 1 splits the first constant's value range across threads; the
// reported witness is the same one the serial scan finds.
inline BoundedVerdict countermodel_search(const embed::Problem& P,
                                          const SearchBounds& bounds = {},
                                          size_t jobs = 1) {
  std::vector<stt::TermPtr> forms;
  forms.reserve(P.axioms.size() + 1);
  for (const auto& ax : P.axioms) forms.push_back(stt::unfold_normalize(ax, P.sig));
  forms.push_back(stt::unfold_normalize(P.conjecture, P.sig));
  size_t conj_idx = forms.size() - 1;

  std::set<std::string> used_consts, used_bases;
  for (const auto& f : forms) detail::collect_consts_bases(f, used_consts, used_bases);

  std::vector<std::pair<std::string, stt::TypePtr>> slots;
  for (const auto& d : P.sig.constants())
    if (!d.def && used_consts.count(d.name)) slots.emplace_back(d.name, d.ty);

  std::vector<std::string> varying;
  for (const auto& b : P.sig.bases())
    if (b != "o" && used_bases.count(b)) varying.push_back(b);

  // All carrier-size tuples within bounds, smallest total first.
  std::vector<std::vector<size_t>> tuples;
  std::vector<size_t> limit;
  for (const auto& b : varying) limit.push_back(std::max<size_t>(1, bounds.max_for(b)));
  std::vector<size_t> cur(varying.size(), 1);
  for (;;) {
    tuples.push_back(cur);
    size_t i = 0;
    while (i < cur.size() && cur[i] == limit[i]) cur[i++] = 1;
    if (i == cur.size()) break;
    ++cur[i];
  }
  std::stable_sort(tuples.begin(), tuples.end(),
                   [](const std::vector<size_t>& a, const std::vector<size_t>& b) {
                     size_t sa = 0, sb = 0;
                     for (size_t x : a) sa += x;
                     for (size_t x : b) sb += x;
                     if (sa != sb) return sa < sb;
                     return a < b;
                   });

  BoundedVerdict out;
  out.stats = {};

  for (const auto& tup : tuples) {
    ++out.stats.tuples;
    StandardModel M;
    for (const auto& b : P.sig.bases()) {
      if (b == "o") continue;
      size_t n = 1;
      for (size_t i = 0; i < varying.size(); ++i)
        if (varying[i] == b) n = tup[i];
      M.carriers.emplace_back(b, n);
    }

    std::optional<std::vector<uint64_t>> witness;
    bool exhausted = false;
    try {
      size_t n_jobs = jobs;
      if (!slots.empty()) {
        uint64_t card0 = type_card(slots[0].second, M);
        n_jobs = std::min<size_t>(n_jobs, card0);
      } else {
        n_jobs = 1;
      }
      uint64_t budget_left =
          bounds.budget > out.stats.ops ? bounds.budget - out.stats.ops : 0;
      if (n_jobs <= 1) {
        detail::TupleRun run(forms, conj_idx, slots, M);
        run.ops_limit = budget_left;
        bool found = false, blew = false;
        try {
          found = run.run(0, slots.empty() ? 0 : run.cards[0]);
        } catch (const detail::BudgetExhausted&) {
          blew = true;
        }
        out.stats.ops += run.ops;
        out.stats.candidates += run.candidates;
        if (blew) throw detail::BudgetExhausted{};
        if (found) witness = run.vals;
      } else {
        uint64_t card0 = type_card(slots[0].second, M);
        uint64_t chunk = (card0 + n_jobs - 1) / n_jobs;
        uint64_t per_budget = budget_left / n_jobs;
        struct Part {
          std::optional<std::vector<uint64_t>> witness;
          uint64_t ops = 0, candidates = 0;
          bool exhausted = false;
        };
        std::vector<Part> parts(n_jobs);
        std::vector<std::thread> threads;
        for (size_t j = 0; j < n_jobs; ++j) {
          threads.emplace_back([&, j]() {
            uint64_t lo = j * chunk, hi = std::min<uint64_t>(card0, (j + 1) * chunk);
            detail::TupleRun run(forms, conj_idx, slots, M);
            run.ops_limit = per_budget;
            try {
              if (run.run(lo, hi)) parts[j].witness = run.vals;
            } catch (const detail::BudgetExhausted&) {
              parts[j].exhausted = true;
            }
            parts[j].ops = run.ops;
            parts[j].candidates = run.candidates;
          });
        }
        for (auto& t : threads) t.join();
        for (size_t j = 0; j < n_jobs; ++j) {
          out.stats.ops += parts[j].ops;
          out.stats.candidates += parts[j].candidates;
          if (parts[j].exhausted) exhausted = true;
          if (!witness && parts[j].witness) witness = parts[j].witness;
        }
        if (exhausted && !witness) throw detail::BudgetExhausted{};
      }
    } catch (const detail::BudgetExhausted&) {
      out.kind = BoundedVerdict::Kind::NoCountermodelUpToBound;
      out.complete = false;
      out.warning = "evaluation budget exhausted; bound not exhaustively checked";
      return out;
    }

    if (witness) {
      out.kind = BoundedVerdict::Kind::Refuted;
      out.model = M;
      std::map<std::string, uint64_t> by_name;
      for (size_t i = 0; i < slots.size(); ++i) by_name[slots[i].first] = (*witness)[i];
      for (const auto& d : P.sig.constants()) {
        if (d.def) continue;
        auto it = by_name.find(d.name);
        out.model.set(d.name, d.ty, it == by_name.end() ? 0 : it->second);
      }
      // Least falsifying world, when the conjecture asserts validity.
      const stt::TermPtr& uc = forms[conj_idx];
      if (uc->kind == stt::TermKind::App && uc->child0->kind == stt::TermKind::Pi &&
          uc->child1->kind == stt::TermKind::Lam && uc->child0->ty->is_base() &&
          uc->child0->ty->base_name() == "w") {
        uint64_t nw = out.model.carrier("w");
        detail::SttEnv env;
        env.vals.emplace_back(uc->child1->name, 0);
        for (uint64_t w = 0; w < nw; ++w) {
          env.vals.back().second = w;
          if (detail::eval_rec(out.model, uc->child1->child0, env, &P.sig) == 0) {
            out.witness_world = w;
            break;
          }
        }
      }
      return out;
    }
  }

  out.kind = BoundedVerdict::Kind::NoCountermodelUpToBound;
  return out;
}

// Validity check by exhaustive refutation: valid up to the bounds iff no
// countermodel was found and the search completed.
inline BoundedVerdict bounded_validity(const embed::Problem& P,
                                       const SearchBounds& bounds = {}, size_t jobs = 1) {
  return countermodel_search(P, bounds, jobs);
}

} // namespace holembed::semantics
