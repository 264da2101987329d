#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "holembed/embed/modal.hpp"
#include "holembed/embed/problem.hpp"

namespace holembed::embed {

// The ten first-order conditions on accessibility relations, each a closed
// term of type (w > w > o) > o, and the ten modal axiom schemata they
// correspond to. The property names double as lookup keys for the schemata.
inline const std::array<std::string, 10>& frame_property_names() {
  static const std::array<std::string, 10> names = {
      "reflexive", "symmetric", "serial", "transitive", "euclidean",
      "partially_functional", "functional", "weakly_dense", "weakly_connected",
      "weakly_directed"};
  return names;
}

inline TermPtr frame_property(const std::string& name) {
  using namespace stt;
  TypePtr wt = world_ty();
  TermPtr R = var("R", acc_ty());
  auto rel = [&](const TermPtr& a, const TermPtr& b) { return app(app(R, a), b); };
  TermPtr S = var("S", wt), T = var("T", wt), U = var("U", wt), V = var("V", wt);

  TermPtr body;
  if (name == "reflexive") {
    body = forall("S", wt, rel(S, S));
  } else if (name == "symmetric") {
    body = forall("S", wt, forall("T", wt, implies_(rel(S, T), rel(T, S))));
  } else if (name == "serial") {
    body = forall("S", wt, exists("T", wt, rel(S, T)));
  } else if (name == "transitive") {
    body = forall("S", wt, forall("T", wt, forall("U", wt,
        implies_(and_(rel(S, T), rel(T, U)), rel(S, U)))));
  } else if (name == "euclidean") {
    body = forall("S", wt, forall("T", wt, forall("U", wt,
        implies_(and_(rel(S, T), rel(S, U)), rel(T, U)))));
  } else if (name == "partially_functional") {
    body = forall("S", wt, forall("T", wt, forall("U", wt,
        implies_(and_(rel(S, T), rel(S, U)), eq_(wt, T, U)))));
  } else if (name == "functional") {
    body = forall("S", wt, exists("T", wt,
        and_(rel(S, T), forall("U", wt, implies_(rel(S, U), eq_(wt, T, U))))));
  } else if (name == "weakly_dense") {
    body = forall("S", wt, forall("T", wt,
        implies_(rel(S, T), exists("U", wt, and_(rel(S, U), rel(U, T))))));
  } else if (name == "weakly_connected") {
    body = forall("S", wt, forall("T", wt, forall("U", wt,
        implies_(and_(rel(S, T), rel(S, U)),
                 or_(or_(rel(T, U), eq_(wt, T, U)), rel(U, T))))));
  } else if (name == "weakly_directed") {
    body = forall("S", wt, forall("T", wt, forall("U", wt,
        implies_(and_(rel(S, T), rel(S, U)),
                 exists("V", wt, and_(rel(T, V), rel(U, V)))))));
  } else {
    throw EmbedError("unknown frame property '" + name + "'");
  }
  return lam("R", acc_ty(), body);
}

// Adds each property as a named definition so problems can reference them
// readably; emitted THF then shows e.g. `reflexive @ r`.
inline void declare_frame_properties(stt::Signature& sig) {
  for (const auto& n : frame_property_names())
    stt::define_checked(sig, n, stt::fn(acc_ty(), stt::bool_ty()), frame_property(n));
}

// The modal axiom schema corresponding to a frame property, stated over the
// given accessibility term; result has type w > o and universally
// quantifies the schematic letters. Keys: the property name, or the
// traditional letter (M, B, D, 4, 5) where one exists.
inline TermPtr modal_axiom_over(const std::string& key, const TermPtr& r) {
  auto boxr = [&](TermPtr t) { return mbox(r, std::move(t)); };
  auto diar = [&](TermPtr t) { return mdia(r, std::move(t)); };
  TermPtr phi = stt::var("Phi", prop_ty());
  TermPtr psi = stt::var("Psi", prop_ty());

  if (key == "M" || key == "reflexive")
    return mall_p("Phi", mimp(boxr(phi), phi));
  if (key == "B" || key == "symmetric")
    return mall_p("Phi", mimp(phi, boxr(diar(phi))));
  if (key == "D" || key == "serial")
    return mall_p("Phi", mimp(boxr(phi), diar(phi)));
  if (key == "4" || key == "transitive")
    return mall_p("Phi", mimp(boxr(phi), boxr(boxr(phi))));
  if (key == "5" || key == "euclidean")
    return mall_p("Phi", mimp(diar(phi), boxr(diar(phi))));
  if (key == "partially_functional")
    return mall_p("Phi", mimp(diar(phi), boxr(phi)));
  if (key == "functional")
    return mall_p("Phi", mequ(diar(phi), boxr(phi)));
  if (key == "weakly_dense")
    return mall_p("Phi", mimp(boxr(boxr(phi)), boxr(phi)));
  if (key == "weakly_connected")
    return mall_p("Phi", mall_p("Psi",
        mor(boxr(mimp(mand(phi, boxr(phi)), psi)),
            boxr(mimp(mand(psi, boxr(psi)), phi)))));
  if (key == "weakly_directed")
    return mall_p("Phi", mimp(diar(boxr(phi)), boxr(diar(phi))));
  throw EmbedError("unknown modal axiom '" + key + "'");
}

// Same schema over a named accessibility constant.
inline TermPtr modal_axiom(const std::string& key, const std::string& index) {
  return modal_axiom_over(key, stt::constant(index, acc_ty()));
}

enum class Direction { PropertyToAxiom, AxiomToProperty };

// Correspondence between a frame condition and its axiom schema, quantified
// over all relations:
//   forward:   ! [R]: (prop R) => valid (axiom over R)
//   backward:  ! [R]: valid (axiom over R) => (prop R)
inline Problem correspondence_problem(const std::string& prop, Direction dir) {
  Problem P;
  P.name = std::string("corr-") + prop + "-" +
           (dir == Direction::PropertyToAxiom ? "fwd" : "bwd");
  P.origin = "correspondence_problem";
  P.sig.declare_base("w");
  declare_modal_operators(P.sig);
  declare_frame_properties(P.sig);

  TermPtr R = stt::var("R", acc_ty());
  TermPtr prop_app = stt::app(P.sig.const_term(prop), R);
  TermPtr axiom_valid = wrap_valid(modal_axiom_over(prop, R));
  TermPtr body = dir == Direction::PropertyToAxiom
                     ? stt::implies_(prop_app, axiom_valid)
                     : stt::implies_(axiom_valid, prop_app);
  P.conjecture = stt::forall("R", acc_ty(), body);
  P.expected = logics::Expectation::Theorem;
  return P;
}

// Axiom systems named by the usual letters; K contributes nothing.
inline std::vector<std::string> system_letters(const std::string& system) {
  std::vector<std::string> out;
  size_t i = 0;
  if (system.rfind("K", 0) == 0) i = 1;
  for (; i < system.size(); ++i) {
    switch (system[i]) {
      case 'M': out.push_back("reflexive"); break;
      case 'B': out.push_back("symmetric"); break;
      case 'D': out.push_back("serial"); break;
      case '4': out.push_back("transitive"); break;
      case '5': out.push_back("euclidean"); break;
      default:
        throw EmbedError("unknown axiom letter '" + std::string(1, system[i]) +
                         "' in system '" + system + "'");
    }
  }
  return out;
}

// Frame-condition reading of an axiom system: the properties applied to a
// shared relation variable R.
inline std::vector<TermPtr> axiom_system(const std::string& system) {
  std::vector<TermPtr> out;
  TermPtr R = stt::var("R", acc_ty());
  for (const auto& prop : system_letters(system))
    out.push_back(stt::app(stt::constant(prop, stt::fn(acc_ty(), stt::bool_ty())), R));
  return out;
}

// Schema reading: each member axiom valid-wrapped, over the same R.
inline std::vector<TermPtr> axiom_system_schemata(const std::string& system) {
  std::vector<TermPtr> out;
  TermPtr R = stt::var("R", acc_ty());
  static const std::map<std::string, std::string> letter = {
      {"reflexive", "M"}, {"symmetric", "B"}, {"serial", "D"},
      {"transitive", "4"}, {"euclidean", "5"}};
  for (const auto& prop : system_letters(system))
    out.push_back(wrap_valid(modal_axiom_over(letter.at(prop), R)));
  return out;
}

inline TermPtr conjoin(const std::vector<TermPtr>& ts) {
  if (ts.empty()) throw EmbedError("empty conjunction");
  TermPtr acc = ts[0];
  for (size_t i = 1; i < ts.size(); ++i) acc = stt::and_(acc, ts[i]);
  return acc;
}

enum class SystemForm { FrameConditions, Schemata };

// Relation between two axiom systems, closed over all accessibility
// relations: ! [R]: lhs(R) <=> rhs(R) (or =>). Both systems share the one R.
inline Problem system_relation_problem(const std::string& name, const std::string& lhs,
                                       const std::string& rhs, bool equivalence,
                                       SystemForm form = SystemForm::FrameConditions) {
  Problem P;
  P.name = name;
  P.origin = "system_relation_problem";
  P.sig.declare_base("w");
  declare_modal_operators(P.sig);
  if (form == SystemForm::FrameConditions) declare_frame_properties(P.sig);

  auto instantiate = [&](const std::string& sys) {
    std::vector<TermPtr> parts = form == SystemForm::FrameConditions
                                     ? axiom_system(sys)
                                     : axiom_system_schemata(sys);
    return conjoin(parts);
  };
  TermPtr l = instantiate(lhs);
  TermPtr r = instantiate(rhs);
  TermPtr body = equivalence ? stt::iff_(l, r) : stt::implies_(l, r);
  P.conjecture = stt::forall("R", acc_ty(), body);
  return P;
}

// ---------------------------------------------------------------------------
// Further problems over the modal layer.
// ---------------------------------------------------------------------------

// Interaction of the individual quantifier with the box, in both directions.
inline std::vector<Problem> barcan_problems() {
  std::vector<Problem> out;
  for (bool converse : {false, true}) {
    Problem P;
    P.name = converse ? "barcan-converse" : "barcan";
    P.origin = "barcan_problems";
    P.sig.declare_base("w");
    P.sig.declare_base("i");
    declare_modal_operators(P.sig);
    P.sig.declare_const("r", acc_ty());
    P.sig.declare_const("p", stt::fn(stt::ind_ty(), prop_ty()));
    TermPtr r = P.sig.const_term("r");
    TermPtr p = P.sig.const_term("p");
    auto px = stt::app(p, stt::var("X", stt::ind_ty()));
    TermPtr all_box = mall_i("X", mbox(r, px));
    TermPtr box_all = mbox(r, mall_i("X", px));
    P.conjecture = wrap_valid(converse ? mimp(box_all, all_box) : mimp(all_box, box_all));
    P.expected = logics::Expectation::Theorem;
    out.push_back(std::move(P));
  }
  return out;
}

// A quantified modal interaction principle over four independent relations
// is equivalent to a first-order confluence condition on them.
inline Problem confluence_problem() {
  using namespace stt;
  Problem P;
  P.name = "confluence";
  P.origin = "confluence_problem";
  P.sig.declare_base("w");
  declare_modal_operators(P.sig);
  for (const char* n : {"i", "j", "k", "l"}) P.sig.declare_const(n, acc_ty());
  TermPtr ri = P.sig.const_term("i"), rj = P.sig.const_term("j");
  TermPtr rk = P.sig.const_term("k"), rl = P.sig.const_term("l");

  TermPtr phi = var("Phi", prop_ty());
  TermPtr modal = wrap_valid(
      mall_p("Phi", mimp(mdia(ri, mbox(rj, phi)), mbox(rk, mdia(rl, phi)))));

  TypePtr wt = world_ty();
  TermPtr A = var("A", wt), B = var("B", wt), C = var("C", wt), D = var("D", wt);
  auto edge = [&](const TermPtr& rel, const TermPtr& x, const TermPtr& y) {
    return app(app(rel, x), y);
  };
  TermPtr relational = forall("A", wt, forall("B", wt, forall("C", wt,
      implies_(and_(edge(ri, A, B), edge(rk, A, C)),
               exists("D", wt, and_(edge(rj, B, D), edge(rl, C, D)))))));

  P.conjecture = iff_(modal, relational);
  P.expected = logics::Expectation::Theorem;
  return P;
}

// Two equivalence modalities plus a commuting axiom force the two box
// operators to agree on implication chains between their arguments.
inline Problem segerberg_problem() {
  Problem P;
  P.name = "segerberg";
  P.origin = "segerberg_problem";
  P.sig.declare_base("w");
  declare_modal_operators(P.sig);
  declare_frame_properties(P.sig);
  P.sig.declare_const("a", acc_ty());
  P.sig.declare_const("b", acc_ty());
  TermPtr a = P.sig.const_term("a"), b = P.sig.const_term("b");

  for (const char* rel : {"a", "b"})
    for (const char* prop : {"reflexive", "transitive", "euclidean"})
      P.axioms.push_back(stt::app(P.sig.const_term(prop), P.sig.const_term(rel)));

  TermPtr phi = stt::var("Phi", prop_ty());
  TermPtr psi = stt::var("Psi", prop_ty());
  P.axioms.push_back(wrap_valid(
      mall_p("Phi", mequ(mbox(a, mbox(b, phi)), mbox(b, mbox(a, phi))))));

  auto ortho = [&](const TermPtr& box_rel) {
    return wrap_valid(mall_p("Phi", mall_p("Psi",
        mimp(mbox(box_rel, mor(mbox(a, phi), mbox(b, psi))),
             mor(mbox(box_rel, phi), mbox(box_rel, psi))))));
  };
  P.conjecture = stt::and_(ortho(a), ortho(b));
  P.expected = logics::Expectation::Theorem;
  return P;
}

// Knowledge (an S5-style relation) entails belief (a KD45-style relation),
// belief entails belief of knowledge; from these, belief entails knowledge.
inline Problem knowledge_belief_problem() {
  Problem P;
  P.name = "knowledge-belief";
  P.origin = "knowledge_belief_problem";
  P.sig.declare_base("w");
  declare_modal_operators(P.sig);
  declare_frame_properties(P.sig);
  P.sig.declare_const("k", acc_ty());
  P.sig.declare_const("b", acc_ty());
  TermPtr k = P.sig.const_term("k"), b = P.sig.const_term("b");

  for (const char* prop : {"reflexive", "transitive", "euclidean"})
    P.axioms.push_back(stt::app(P.sig.const_term(prop), k));
  for (const char* prop : {"serial", "transitive", "euclidean"})
    P.axioms.push_back(stt::app(P.sig.const_term(prop), b));

  TermPtr phi = stt::var("Phi", prop_ty());
  P.axioms.push_back(wrap_valid(mall_p("Phi", mimp(mbox(k, phi), mbox(b, phi)))));
  P.axioms.push_back(
      wrap_valid(mall_p("Phi", mimp(mbox(b, phi), mbox(b, mbox(k, phi))))));
  P.conjecture = wrap_valid(mall_p("Phi", mimp(mbox(b, phi), mbox(k, phi))));
  P.expected = logics::Expectation::Theorem;
  return P;
}

} // namespace holembed::embed
