#pragma once

#include <memory>
#include <string>
#include <vector>

#include "holembed/stt/error.hpp"

namespace holembed::logics {

// ---------------------------------------------------------------------------
// Quantified multimodal logic.
//
// Parsing keeps the derived forms (And, Implies, Iff, Diamond, ExistsInd,
// ExistsProp) as distinct nodes so printing is faithful; desugar() maps a
// formula onto the core fragment {PropVar, Atom, Neg, Or, Box, ForallInd,
// ForallProp}. Semantics and embedding treat a sugar node exactly like its
// expansion.
// ---------------------------------------------------------------------------

enum class QmlKind {
  PropVar,    // bound propositional variable
  Atom,       // predicate applied to individual terms; 0-ary = prop constant
  Neg, And, Or, Implies, Iff,
  Box, Diamond,          // name = accessibility index
  ForallInd, ExistsInd,  // name = bound individual variable
  ForallProp, ExistsProp // name = bound propositional variable
};

struct QmlFormula;
using QmlPtr = std::shared_ptr<const QmlFormula>;

struct QmlFormula {
  QmlKind kind;
  std::string name;              // see per-kind comments above
  std::vector<std::string> args; // Atom only: uppercase = variable, else constant
  QmlPtr sub0, sub1;
};

namespace qml {

inline QmlPtr make(QmlKind k, std::string n, std::vector<std::string> args, QmlPtr a,
                   QmlPtr b) {
  return std::make_shared<const QmlFormula>(
      QmlFormula{k, std::move(n), std::move(args), std::move(a), std::move(b)});
}
inline QmlPtr prop_var(std::string n) { return make(QmlKind::PropVar, std::move(n), {}, nullptr, nullptr); }
inline QmlPtr atom(std::string pred, std::vector<std::string> args = {}) {
  return make(QmlKind::Atom, std::move(pred), std::move(args), nullptr, nullptr);
}
inline QmlPtr neg(QmlPtr a) { return make(QmlKind::Neg, "", {}, std::move(a), nullptr); }
inline QmlPtr conj(QmlPtr a, QmlPtr b) { return make(QmlKind::And, "", {}, std::move(a), std::move(b)); }
inline QmlPtr disj(QmlPtr a, QmlPtr b) { return make(QmlKind::Or, "", {}, std::move(a), std::move(b)); }
inline QmlPtr implies(QmlPtr a, QmlPtr b) { return make(QmlKind::Implies, "", {}, std::move(a), std::move(b)); }
inline QmlPtr iff(QmlPtr a, QmlPtr b) { return make(QmlKind::Iff, "", {}, std::move(a), std::move(b)); }
inline QmlPtr box(std::string idx, QmlPtr a) { return make(QmlKind::Box, std::move(idx), {}, std::move(a), nullptr); }
inline QmlPtr diamond(std::string idx, QmlPtr a) { return make(QmlKind::Diamond, std::move(idx), {}, std::move(a), nullptr); }
inline QmlPtr forall_ind(std::string x, QmlPtr a) { return make(QmlKind::ForallInd, std::move(x), {}, std::move(a), nullptr); }
inline QmlPtr exists_ind(std::string x, QmlPtr a) { return make(QmlKind::ExistsInd, std::move(x), {}, std::move(a), nullptr); }
inline QmlPtr forall_prop(std::string p, QmlPtr a) { return make(QmlKind::ForallProp, std::move(p), {}, std::move(a), nullptr); }
inline QmlPtr exists_prop(std::string p, QmlPtr a) { return make(QmlKind::ExistsProp, std::move(p), {}, std::move(a), nullptr); }

} // namespace qml

inline bool qml_equal(const QmlPtr& a, const QmlPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->args != b->args) return false;
  return qml_equal(a->sub0, b->sub0) && qml_equal(a->sub1, b->sub1);
}

// Core fragment only; sugar nodes are replaced by their expansions.
inline QmlPtr desugar(const QmlPtr& f) {
  using namespace qml;
  switch (f->kind) {
    case QmlKind::PropVar:
    case QmlKind::Atom:
      return f;
    case QmlKind::Neg: return neg(desugar(f->sub0));
    case QmlKind::Or: return disj(desugar(f->sub0), desugar(f->sub1));
    case QmlKind::And:
      return neg(disj(neg(desugar(f->sub0)), neg(desugar(f->sub1))));
    case QmlKind::Implies:
      return disj(neg(desugar(f->sub0)), desugar(f->sub1));
    case QmlKind::Iff:
      return desugar(conj(implies(f->sub0, f->sub1), implies(f->sub1, f->sub0)));
    case QmlKind::Box: return box(f->name, desugar(f->sub0));
    case QmlKind::Diamond: return neg(box(f->name, neg(desugar(f->sub0))));
    case QmlKind::ForallInd: return forall_ind(f->name, desugar(f->sub0));
    case QmlKind::ExistsInd:
      return neg(forall_ind(f->name, neg(desugar(f->sub0))));
    case QmlKind::ForallProp: return forall_prop(f->name, desugar(f->sub0));
    case QmlKind::ExistsProp:
      return neg(forall_prop(f->name, neg(desugar(f->sub0))));
  }
  throw Error("malformed qml formula");
}

// ---------------------------------------------------------------------------
// Propositional intuitionistic logic.
// ---------------------------------------------------------------------------

enum class IplKind { Atom, Neg, And, Or, Implies, Iff };

struct IplFormula;
using IplPtr = std::shared_ptr<const IplFormula>;

struct IplFormula {
  IplKind kind;
  std::string name; // Atom only
  IplPtr sub0, sub1;
};

namespace ipl {
inline IplPtr make(IplKind k, std::string n, IplPtr a, IplPtr b) {
  return std::make_shared<const IplFormula>(IplFormula{k, std::move(n), std::move(a), std::move(b)});
}
inline IplPtr atom(std::string n) { return make(IplKind::Atom, std::move(n), nullptr, nullptr); }
inline IplPtr neg(IplPtr a) { return make(IplKind::Neg, "", std::move(a), nullptr); }
inline IplPtr conj(IplPtr a, IplPtr b) { return make(IplKind::And, "", std::move(a), std::move(b)); }
inline IplPtr disj(IplPtr a, IplPtr b) { return make(IplKind::Or, "", std::move(a), std::move(b)); }
inline IplPtr implies(IplPtr a, IplPtr b) { return make(IplKind::Implies, "", std::move(a), std::move(b)); }
inline IplPtr iff(IplPtr a, IplPtr b) { return make(IplKind::Iff, "", std::move(a), std::move(b)); }
} // namespace ipl

inline bool ipl_equal(const IplPtr& a, const IplPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  return ipl_equal(a->sub0, b->sub0) && ipl_equal(a->sub1, b->sub1);
}

// ---------------------------------------------------------------------------
// First-order formulas over region predicates (the RCC surface language).
// ---------------------------------------------------------------------------

enum class FoKind { Atom, Neg, And, Or, Implies, Iff, Forall, Exists };

struct FoFormula;
using FoPtr = std::shared_ptr<const FoFormula>;

struct FoFormula {
  FoKind kind;
  std::string name;              // Atom: predicate; quantifiers: bound variable
  std::vector<std::string> args; // Atom only: uppercase = variable, else constant
  FoPtr sub0, sub1;
};

namespace fo {
inline FoPtr make(FoKind k, std::string n, std::vector<std::string> args, FoPtr a, FoPtr b) {
  return std::make_shared<const FoFormula>(
      FoFormula{k, std::move(n), std::move(args), std::move(a), std::move(b)});
}
inline FoPtr atom(std::string pred, std::vector<std::string> args) {
  return make(FoKind::Atom, std::move(pred), std::move(args), nullptr, nullptr);
}
inline FoPtr neg(FoPtr a) { return make(FoKind::Neg, "", {}, std::move(a), nullptr); }
inline FoPtr conj(FoPtr a, FoPtr b) { return make(FoKind::And, "", {}, std::move(a), std::move(b)); }
inline FoPtr disj(FoPtr a, FoPtr b) { return make(FoKind::Or, "", {}, std::move(a), std::move(b)); }
inline FoPtr implies(FoPtr a, FoPtr b) { return make(FoKind::Implies, "", {}, std::move(a), std::move(b)); }
inline FoPtr iff(FoPtr a, FoPtr b) { return make(FoKind::Iff, "", {}, std::move(a), std::move(b)); }
inline FoPtr forall(std::string x, FoPtr a) { return make(FoKind::Forall, std::move(x), {}, std::move(a), nullptr); }
inline FoPtr exists(std::string x, FoPtr a) { return make(FoKind::Exists, std::move(x), {}, std::move(a), nullptr); }
} // namespace fo

inline bool fo_equal(const FoPtr& a, const FoPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->args != b->args) return false;
  return fo_equal(a->sub0, b->sub0) && fo_equal(a->sub1, b->sub1);
}

// Surface convention shared by all three grammars: identifiers beginning
// with an uppercase letter are variables, everything else is a constant.
inline bool is_variable_name(const std::string& s) {
  return !s.empty() && s[0] >= 'A' && s[0] <= 'Z';
}

} // namespace holembed::logics
