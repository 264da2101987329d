#pragma once

#include <string>
#include <vector>

#include "holembed/embed/frames.hpp"
#include "holembed/embed/modal.hpp"
#include "holembed/embed/problem.hpp"
#include "holembed/logics/ast.hpp"

namespace holembed::embed {

// Intuitionistic connectives as abbreviations over one accessibility
// constant r: negation and the left/right sides of implication and
// disjunction each guard their argument with a box over r; conjunction is
// world-local. Names carry an i prefix to keep them apart from the modal
// layer.
inline void declare_ipl_connectives(stt::Signature& sig) {
  using namespace stt;
  TypePtr p = prop_ty();
  TermPtr r = sig.const_term("r");
  TermPtr phi = var("Phi", p), psi = var("Psi", p);

  define_checked(sig, "inot", fn(p, p), lam("Phi", p, mnot(mbox(r, phi))));
  define_checked(sig, "iimp", fn(p, p, p),
                 lam("Phi", p, lam("Psi", p, mimp(mbox(r, phi), mbox(r, psi)))));
  define_checked(sig, "ior", fn(p, p, p),
                 lam("Phi", p, lam("Psi", p, mor(mbox(r, phi), mbox(r, psi)))));
  define_checked(sig, "iand", fn(p, p, p),
                 lam("Phi", p, lam("Psi", p, mand(phi, psi))));
}

// Collect atom names in first-occurrence order (declaration order is
// meaningful downstream: emission and search both follow it).
inline void collect_ipl_atoms(const logics::IplPtr& f, std::vector<std::string>& out) {
  if (!f) return;
  if (f->kind == logics::IplKind::Atom) {
    for (const auto& n : out)
      if (n == f->name) return;
    out.push_back(f->name);
    return;
  }
  collect_ipl_atoms(f->sub0, out);
  collect_ipl_atoms(f->sub1, out);
}

// Signature for intuitionistic problems: worlds, the modal layer, the single
// relation r, the four connective abbreviations, then one w > o constant per
// atom.
class IplSignature {
 public:
  explicit IplSignature(const std::vector<std::string>& atoms,
                        bool with_frame_properties = false) {
    sig_.declare_base("w");
    declare_modal_operators(sig_);
    if (with_frame_properties) declare_frame_properties(sig_);
    sig_.declare_const("r", acc_ty());
    declare_ipl_connectives(sig_);
    for (const auto& a : atoms) {
      std::string resolved = sig_.declare_const_fresh(a, prop_ty());
      atom_names_.emplace_back(a, resolved);
    }
  }

  const stt::Signature& sig() const { return sig_; }
  stt::Signature& sig() { return sig_; }

  TermPtr r_term() const { return sig_.const_term("r"); }

  TermPtr atom_term(const std::string& name) const {
    for (const auto& [orig, resolved] : atom_names_)
      if (orig == name) return sig_.const_term(resolved);
    throw EmbedError("unknown intuitionistic atom '" + name + "'");
  }

 private:
  stt::Signature sig_;
  std::vector<std::pair<std::string, std::string>> atom_names_;
};

// Compositional translation; an equivalence becomes the conjunction of the
// two guarded implications, so the result uses only the four abbreviations.
inline TermPtr embed_ipl(const logics::IplPtr& f, const IplSignature& isig) {
  using logics::IplKind;
  auto un = [&](const char* op, const TermPtr& a) {
    return stt::app(isig.sig().const_term(op), a);
  };
  auto bin = [&](const char* op, const TermPtr& a, const TermPtr& b) {
    return stt::app(stt::app(isig.sig().const_term(op), a), b);
  };
  switch (f->kind) {
    case IplKind::Atom: return isig.atom_term(f->name);
    case IplKind::Neg: return un("inot", embed_ipl(f->sub0, isig));
    case IplKind::Implies:
      return bin("iimp", embed_ipl(f->sub0, isig), embed_ipl(f->sub1, isig));
    case IplKind::Or:
      return bin("ior", embed_ipl(f->sub0, isig), embed_ipl(f->sub1, isig));
    case IplKind::And:
      return bin("iand", embed_ipl(f->sub0, isig), embed_ipl(f->sub1, isig));
    case IplKind::Iff: {
      TermPtr a = embed_ipl(f->sub0, isig);
      TermPtr b = embed_ipl(f->sub1, isig);
      return bin("iand", bin("iimp", a, b), bin("iimp", b, a));
    }
  }
  throw EmbedError("unhandled intuitionistic connective");
}

// The modal reading of an intuitionistic formula over box index r: atoms map
// to themselves, negation/implication/disjunction box their arguments,
// conjunction passes through.
inline logics::QmlPtr godel_translate(const logics::IplPtr& f) {
  namespace q = holembed::logics::qml;
  using logics::IplKind;
  const std::string r = "r";
  auto boxed = [&](const logics::IplPtr& s) { return q::box(r, godel_translate(s)); };
  switch (f->kind) {
    case IplKind::Atom: return q::atom(f->name, {});
    case IplKind::Neg: return q::neg(boxed(f->sub0));
    case IplKind::Implies: return q::implies(boxed(f->sub0), boxed(f->sub1));
    case IplKind::Or: return q::disj(boxed(f->sub0), boxed(f->sub1));
    case IplKind::And: return q::conj(godel_translate(f->sub0), godel_translate(f->sub1));
    case IplKind::Iff: {
      auto fwd = logics::ipl::implies(f->sub0, f->sub1);
      auto bwd = logics::ipl::implies(f->sub1, f->sub0);
      return godel_translate(logics::ipl::conj(fwd, bwd));
    }
  }
  throw EmbedError("unhandled intuitionistic connective");
}

enum class IplMode { S4Schema, FrameConditions };

// Whole-problem transformation: the embedded formula is valid provided the
// box over r behaves as S4 — stated either as the two axiom schemata or as
// the two frame conditions, in a single implication conjecture.
inline Problem build_ipl_problem(const std::string& name, const logics::IplPtr& f,
                                 IplMode mode,
                                 logics::Expectation expected = logics::Expectation::Unknown) {
  std::vector<std::string> atoms;
  collect_ipl_atoms(f, atoms);
  IplSignature isig(atoms, mode == IplMode::FrameConditions);

  TermPtr goal = wrap_valid(embed_ipl(f, isig));
  TermPtr r = isig.r_term();
  TermPtr premise;
  if (mode == IplMode::S4Schema) {
    premise = stt::and_(wrap_valid(modal_axiom_over("M", r)),
                        wrap_valid(modal_axiom_over("4", r)));
  } else {
    const stt::Signature& s = isig.sig();
    premise = stt::and_(stt::app(s.const_term("reflexive"), r),
                        stt::app(s.const_term("transitive"), r));
  }

  Problem P;
  P.name = name;
  P.origin = "build_ipl_problem";
  P.sig = isig.sig();
  P.conjecture = stt::implies_(premise, goal);
  P.expected = expected;
  return P;
}

} // namespace holembed::embed
