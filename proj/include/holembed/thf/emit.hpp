#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "holembed/embed/problem.hpp"
#include "holembed/stt/normalize.hpp"
#include "holembed/stt/signature.hpp"
#include "holembed/stt/term.hpp"
#include "holembed/thf/document.hpp"

namespace holembed::thf {

// Defined mode keeps the signature's definitions as role-`definition` lines
// and states axioms over the defined symbols; unfolded mode expands every
// definition away and declares only the uninterpreted symbols that remain.
enum class EmitMode { Defined, Unfolded };

struct EmitOptions {
  EmitMode mode = EmitMode::Defined;
  // Default convention: the world base renders as $i and the individual base
  // as a declared type `ind`. Swapped, individuals become $i and worlds a
  // declared type `world`.
  bool world_as_dollar_i = true;
  // Some provers reject role `definition`; downgrading keeps the same
  // formulas under role `axiom`.
  bool definition_role = true;
};

namespace detail {

// --- type rendering -------------------------------------------------------

struct TypeConv {
  bool world_as_dollar_i;

  // Base spelling in THF text. The base mapped to $i never appears as a
  // declared type; the opposite-convention base gets a legible name.
  std::string base(const std::string& b) const {
    if (b == "o") return "$o";
    if (b == (world_as_dollar_i ? "w" : "i")) return "$i";
    if (b == "w") return "world";
    if (b == "i") return "ind";
    return b;
  }

  std::string type(const stt::TypePtr& t, bool parenthesize_arrow = false) const {
    if (t->is_base()) return base(t->base_name());
    std::string s = type(t->domain(), /*parenthesize_arrow=*/true) + " > " +
                    type(t->codomain(), /*parenthesize_arrow=*/false);
    return parenthesize_arrow ? "(" + s + ")" : s;
  }
};

// --- symbol naming --------------------------------------------------------

// THF constants are lower_words, variables upper_words. Signature names are
// already lower-led in practice; this mangles defensively and keeps the
// assignment injective so distinct constants never merge.
class SymbolTable {
public:
  void reserve(const std::string& word) { taken_.insert(word); }

  std::string constant(const std::string& raw) {
    auto it = by_raw_.find(raw);
    if (it != by_raw_.end()) return it->second;
    std::string base;
    for (char c : raw)
      base += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    if (base.empty() || !std::islower(static_cast<unsigned char>(base[0])))
      base = "c_" + base;
    std::string cand = base;
    for (int k = 2; taken_.count(cand); ++k) cand = base + "_" + std::to_string(k);
    taken_.insert(cand);
    by_raw_.emplace(raw, cand);
    return cand;
  }

private:
  std::map<std::string, std::string> by_raw_;
  std::set<std::string> taken_;
};

inline std::string variable_name(const std::string& raw, const std::set<std::string>& in_scope) {
  std::string base;
  for (char c : raw)
    base += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (base.empty())
    base = "X";
  else if (!std::isupper(static_cast<unsigned char>(base[0])))
    base = "V_" + base;
  std::string cand = base;
  for (int k = 2; in_scope.count(cand); ++k) cand = base + "_" + std::to_string(k);
  return cand;
}

// --- term rendering -------------------------------------------------------

// Every rendered fragment is either a bare word ($-words included) or comes
// wrapped: applications, binaries, and negations render parenthesized;
// binder forms (^ ! ?) render bare and are valid wherever a unit formula is
// expected, so only `operand` adds parentheses around them.
class TermRenderer {
public:
  TermRenderer(const TypeConv& conv, SymbolTable& syms) : conv_(conv), syms_(syms) {}

  // Operand position (argument of @, side of a binary connective).
  std::string operand(const stt::TermPtr& t) {
    std::string s = body(t);
    return is_word(s) || s.front() == '(' ? s : "(" + s + ")";
  }

  // Body position (quantifier/lambda body, definition right-hand side).
  std::string body(const stt::TermPtr& t) {
    using stt::TermKind;
    // The kernel spells falsity !X:o. X and truth as its negation.
    if (is_false(t)) return "$false";
    if (t->kind == TermKind::App && t->child0->kind == TermKind::Neg && is_false(t->child1))
      return "$true";

    switch (t->kind) {
      case TermKind::Var: {
        auto it = bound_.find(t->name);
        if (it != bound_.end() && !it->second.empty()) return it->second.back();
        return variable_name(t->name, {}); // open terms never reach emission
      }
      case TermKind::Const:
        return syms_.constant(t->name);
      case TermKind::Lam:
        return binder("^", t->name, t->ty, t->child0);
      case TermKind::Neg: // unapplied connectives: eta-expand
        return "^ [A: $o]: (~ A)";
      case TermKind::Or:
        return "^ [A: $o, B: $o]: (A | B)";
      case TermKind::Eq:
        return "^ [A: " + conv_.type(t->ty) + ", B: " + conv_.type(t->ty) + "]: (A = B)";
      case TermKind::Pi:
        return "^ [P: " + conv_.type(t->ty, true) + " > $o]: ! [X: " + conv_.type(t->ty) +
               "]: (P @ X)";
      case TermKind::App:
        return app(t);
    }
    throw ThfError("unreachable term kind");
  }

private:
  static bool is_word(const std::string& s) {
    for (char c : s)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '$') return false;
    return !s.empty();
  }

  static bool is_false(const stt::TermPtr& t) {
    using stt::TermKind;
    return t && t->kind == TermKind::App && t->child0->kind == TermKind::Pi &&
           t->child0->ty->is_base() && t->child0->ty->base_name() == "o" &&
           t->child1->kind == TermKind::Lam && t->child1->child0->kind == TermKind::Var &&
           t->child1->child0->name == t->child1->name;
  }

  std::string binder(const char* head, const std::string& raw, const stt::TypePtr& ty,
                     const stt::TermPtr& inner) {
    std::string v = variable_name(raw, scope_);
    scope_.insert(v);
    bound_[raw].push_back(v);
    std::string b = body(inner);
    bound_[raw].pop_back();
    scope_.erase(v);
    return std::string(head) + " [" + v + ": " + conv_.type(ty) + "]: " + b;
  }

  // Connective sugar is recovered from the kernel's expansion shapes:
  //   ~A | B               renders  (A => B)
  //   ~(~A | ~B)           renders  (A & B)
  //   (A => B) & (B => A)  renders  (A <=> B)
  //   ~ ! [X]: ~ A         renders  ? [X]: A
  std::string app(const stt::TermPtr& t) {
    using stt::TermKind;
    const stt::TermPtr& f = t->child0;
    const stt::TermPtr& a = t->child1;

    if (f->kind == TermKind::Neg) {
      // existential: ~ (!X. ~body)
      if (a->kind == TermKind::App && a->child0->kind == TermKind::Pi &&
          a->child1->kind == TermKind::Lam && a->child1->child0->kind == TermKind::App &&
          a->child1->child0->child0->kind == TermKind::Neg)
        return binder("?", a->child1->name, a->child1->ty, a->child1->child0->child1);
      // conjunction: ~(~A | ~B)
      if (a->kind == TermKind::App && a->child0->kind == TermKind::App &&
          a->child0->child0->kind == TermKind::Or && a->child0->child1->kind == TermKind::App &&
          a->child0->child1->child0->kind == TermKind::Neg && a->child1->kind == TermKind::App &&
          a->child1->child0->kind == TermKind::Neg) {
        const stt::TermPtr& lhs = a->child0->child1->child1;
        const stt::TermPtr& rhs = a->child1->child1;
        if (is_implies(lhs) && is_implies(rhs) &&
            stt::alpha_equal(implies_lhs(lhs), implies_rhs(rhs)) &&
            stt::alpha_equal(implies_rhs(lhs), implies_lhs(rhs)))
          return "(" + operand(implies_lhs(lhs)) + " <=> " + operand(implies_rhs(lhs)) + ")";
        return "(" + operand(lhs) + " & " + operand(rhs) + ")";
      }
      return "(~ " + operand(a) + ")";
    }

    if (f->kind == TermKind::App) {
      const stt::TermPtr& op = f->child0;
      const stt::TermPtr& lhs = f->child1;
      if (op->kind == TermKind::Or) {
        if (lhs->kind == TermKind::App && lhs->child0->kind == TermKind::Neg)
          return "(" + operand(lhs->child1) + " => " + operand(a) + ")";
        return "(" + operand(lhs) + " | " + operand(a) + ")";
      }
      if (op->kind == TermKind::Eq)
        return "(" + operand(lhs) + " = " + operand(a) + ")";
    }

    if (f->kind == TermKind::Pi) {
      if (a->kind == TermKind::Lam) return binder("!", a->name, f->ty, a->child0);
      // applied to a non-lambda: quantify over a fresh variable instead
      stt::TermPtr x = stt::var("X", f->ty);
      return binder("!", "X", f->ty, stt::app(a, x));
    }

    // plain application chain, left-associated
    std::vector<const stt::TermPtr*> args;
    const stt::TermPtr* cur = &t;
    while ((*cur)->kind == TermKind::App && (*cur)->child0->kind != TermKind::Neg) {
      args.push_back(&(*cur)->child1);
      cur = &(*cur)->child0;
    }
    std::string s = operand(*cur);
    for (auto it = args.rbegin(); it != args.rend(); ++it) s += " @ " + operand(**it);
    return "(" + s + ")";
  }

  static bool is_implies(const stt::TermPtr& t) {
    using stt::TermKind;
    return t->kind == TermKind::App && t->child0->kind == TermKind::App &&
           t->child0->child0->kind == TermKind::Or && t->child0->child1->kind == TermKind::App &&
           t->child0->child1->child0->kind == TermKind::Neg;
  }
  static const stt::TermPtr& implies_lhs(const stt::TermPtr& t) {
    return t->child0->child1->child1;
  }
  static const stt::TermPtr& implies_rhs(const stt::TermPtr& t) { return t->child1; }

  const TypeConv& conv_;
  SymbolTable& syms_;
  std::set<std::string> scope_;
  std::map<std::string, std::vector<std::string>> bound_;
};

// Constants reachable from the given formulas through signature definitions,
// kept in signature declaration order.
inline std::vector<std::string> used_constants(const stt::Signature& sig,
                                               const std::vector<stt::TermPtr>& formulas) {
  std::set<std::string> used;
  std::vector<stt::TermPtr> queue = formulas;
  auto scan = [&](const stt::TermPtr& t, auto&& self) -> void {
    if (!t) return;
    if (t->kind == stt::TermKind::Const && used.insert(t->name).second && sig.is_defined(t->name))
      queue.push_back(sig.definition(t->name));
    self(t->child0, self);
    self(t->child1, self);
  };
  while (!queue.empty()) {
    stt::TermPtr t = queue.back();
    queue.pop_back();
    scan(t, scan);
  }
  std::vector<std::string> out;
  for (const auto& d : sig.constants())
    if (used.count(d.name)) out.push_back(d.name);
  return out;
}

// Base types appearing in the given types or in binder annotations of the
// given terms.
inline std::set<std::string> used_bases(const std::vector<stt::TypePtr>& types,
                                        const std::vector<stt::TermPtr>& terms) {
  std::set<std::string> out;
  auto scan_ty = [&](const stt::TypePtr& ty, auto&& self) -> void {
    if (!ty) return;
    if (ty->is_base()) {
      out.insert(ty->base_name());
      return;
    }
    self(ty->domain(), self);
    self(ty->codomain(), self);
  };
  auto scan_t = [&](const stt::TermPtr& t, auto&& self) -> void {
    if (!t) return;
    scan_ty(t->ty, scan_ty);
    self(t->child0, self);
    self(t->child1, self);
  };
  for (const auto& ty : types) scan_ty(ty, scan_ty);
  for (const auto& t : terms) scan_t(t, scan_t);
  return out;
}

} // namespace detail

// Assembles the full document: base-type declarations, constant signatures
// (pruned to symbols the formulas actually reach), definitions when in
// defined mode, axioms, then the conjecture. Output is deterministic: order
// follows the signature and names are derived from it.
inline ThfDocument to_thf_document(const embed::Problem& P, const EmitOptions& opt = {}) {
  detail::TypeConv conv{opt.world_as_dollar_i};
  detail::SymbolTable syms;
  ThfDocument doc;
  doc.name = P.name;
  doc.comments.push_back("Problem  : " + (P.name.empty() ? std::string("unnamed") : P.name));
  if (!P.origin.empty()) doc.comments.push_back("Origin   : " + P.origin);
  doc.comments.push_back(std::string("Mode     : ") +
                         (opt.mode == EmitMode::Defined ? "defined" : "unfolded"));
  doc.comments.push_back("Expected : " + logics::expectation_name(P.expected));

  std::vector<stt::TermPtr> formulas = P.axioms;
  formulas.push_back(P.conjecture);
  if (opt.mode == EmitMode::Unfolded)
    for (auto& f : formulas) f = stt::unfold_normalize(f, P.sig);

  std::vector<std::string> consts = detail::used_constants(P.sig, formulas);
  if (opt.mode == EmitMode::Unfolded) {
    std::vector<std::string> kept; // unfolding leaves only uninterpreted heads
    for (const std::string& n : consts)
      if (!P.sig.is_defined(n)) kept.push_back(n);
    consts = kept;
  }

  std::vector<stt::TypePtr> const_types;
  std::vector<stt::TermPtr> base_scan = formulas;
  for (const std::string& n : consts) {
    const_types.push_back(P.sig.const_type(n));
    if (opt.mode == EmitMode::Defined && P.sig.is_defined(n))
      base_scan.push_back(P.sig.definition(n));
  }
  std::set<std::string> bases = detail::used_bases(const_types, base_scan);

  for (const std::string& b : P.sig.bases()) {
    if (!bases.count(b)) continue;
    std::string rendered = conv.base(b);
    if (rendered == "$i" || rendered == "$o") continue; // builtin
    syms.reserve(rendered); // constants must not shadow a type name
    doc.types.push_back({rendered + "_type", "type", rendered + ": $tType"});
  }
  for (const std::string& n : consts) {
    std::string sym = syms.constant(n);
    doc.types.push_back(
        {sym + "_decl", "type", sym + ": " + conv.type(P.sig.const_type(n), true)});
  }

  if (opt.mode == EmitMode::Defined) {
    const char* role = opt.definition_role ? "definition" : "axiom";
    for (const std::string& n : consts) {
      if (!P.sig.is_defined(n)) continue;
      detail::TermRenderer r(conv, syms);
      std::string sym = syms.constant(n);
      doc.definitions.push_back(
          {sym + "_def", role, "(" + sym + " = " + r.operand(P.sig.definition(n)) + ")"});
    }
  }

  for (size_t k = 0; k + 1 < formulas.size(); ++k) {
    detail::TermRenderer r(conv, syms);
    doc.axioms.push_back({"ax_" + std::to_string(k + 1), "axiom", r.operand(formulas[k])});
  }
  {
    detail::TermRenderer r(conv, syms);
    doc.conjecture = {"conj", "conjecture", r.operand(formulas.back())};
  }
  doc.lint();
  return doc;
}

inline std::string emit_thf(const embed::Problem& P, EmitMode mode = EmitMode::Defined) {
  EmitOptions opt;
  opt.mode = mode;
  return to_thf_document(P, opt).render();
}

} // namespace holembed::thf
