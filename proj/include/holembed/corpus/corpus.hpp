#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holembed/embed/frames.hpp"
#include "holembed/embed/from_source.hpp"
#include "holembed/embed/ipl.hpp"
#include "holembed/embed/modal.hpp"
#include "holembed/embed/problem.hpp"
#include "holembed/embed/rcc.hpp"
#include "holembed/logics/ast.hpp"
#include "holembed/logics/problem_source.hpp"
#include "holembed/semantics/search.hpp"

namespace holembed::corpus {

struct UnknownId : Error {
  explicit UnknownId(const std::string& id) : Error("unknown corpus id '" + id + "'") {}
};

struct CorpusEntry {
  std::string id;
  std::string tptp; // published TPTP identifier, empty if none
  logics::Expectation expected = logics::Expectation::Theorem;
  semantics::SearchBounds bounds; // sizes at which the finite check settles it
  std::string summary;
};

namespace detail {

inline semantics::SearchBounds bounds_wir(size_t w, size_t i, size_t r) {
  semantics::SearchBounds b;
  b.max_size = {{"w", w}, {"i", i}, {"region", r}};
  return b;
}

// Knowledge-of-the-three-wise-men puzzle over indices fool (common
// knowledge, S4) and a, b, c (plain K), one whiteness predicate, and one
// named individual per wise man. The pairwise schemata are instantiated for
// all ordered pairs of distinct men.
inline logics::ProblemSource wise_men_source() {
  using namespace logics;
  ProblemSource src;
  src.name = "wise-men";
  src.logic = SourceLogic::Qml;
  src.decls.indices = {"fool", "a", "b", "c"};
  src.decls.preds = {{"ws", 1}};
  src.decls.consts = {{"a", "i"}, {"b", "i"}, {"c", "i"}};
  src.expected = Expectation::Theorem;

  const std::vector<std::string> men = {"a", "b", "c"};
  auto ws = [&](const std::string& x) { return qml::atom("ws", {x}); };
  auto phi = [] { return qml::prop_var("Phi"); };

  src.qml_axioms.push_back(
      qml::box("fool", qml::disj(qml::disj(ws("a"), ws("b")), ws("c"))));
  for (const auto& x : men)
    for (const auto& y : men)
      if (x != y)
        src.qml_axioms.push_back(
            qml::box("fool", qml::implies(ws(x), qml::box(y, ws(x)))));
  for (const auto& x : men)
    for (const auto& y : men)
      if (x != y)
        src.qml_axioms.push_back(qml::box(
            "fool", qml::implies(qml::neg(ws(x)), qml::box(y, qml::neg(ws(x))))));
  src.qml_axioms.push_back(
      qml::forall_prop("Phi", qml::implies(qml::box("fool", phi()), phi())));
  src.qml_axioms.push_back(qml::forall_prop(
      "Phi",
      qml::implies(qml::box("fool", phi()), qml::box("fool", qml::box("fool", phi())))));
  for (const auto& x : men)
    src.qml_axioms.push_back(qml::forall_prop(
        "Phi", qml::implies(qml::box("fool", phi()), qml::box(x, phi()))));
  for (const auto& x : men)
    for (const auto& y : men)
      if (x != y)
        src.qml_axioms.push_back(qml::forall_prop(
            "Phi", qml::implies(qml::neg(qml::box(x, phi())),
                                qml::box(y, qml::neg(qml::box(x, phi()))))));
  for (const auto& x : men)
    for (const auto& y : men)
      if (x != y)
        src.qml_axioms.push_back(qml::forall_prop(
            "Phi",
            qml::implies(qml::box(x, phi()), qml::box(y, qml::box(x, phi())))));
  src.qml_axioms.push_back(qml::neg(qml::box("a", ws("a"))));
  src.qml_axioms.push_back(qml::neg(qml::box("b", ws("b"))));
  src.qml_conjecture = qml::box("c", ws("c"));
  return src;
}

// Appointment puzzle over indices j (John), p (Peter), wp (Peter's wife),
// all S4, with three propositional constants.
inline logics::ProblemSource friends_source() {
  using namespace logics;
  ProblemSource src;
  src.name = "friends";
  src.logic = SourceLogic::Qml;
  src.decls.indices = {"j", "p", "wp"};
  src.decls.preds = {{"time", 0}, {"place", 0}, {"appointment", 0}};
  src.expected = Expectation::Theorem;

  auto phi = [] { return qml::prop_var("Phi"); };
  auto time = [] { return qml::atom("time"); };
  auto place = [] { return qml::atom("place"); };
  auto appointment = [] { return qml::atom("appointment"); };

  for (const char* x : {"j", "p", "wp"}) {
    src.qml_axioms.push_back(
        qml::forall_prop("Phi", qml::implies(qml::box(x, phi()), phi())));
    src.qml_axioms.push_back(qml::forall_prop(
        "Phi", qml::implies(qml::box(x, phi()), qml::box(x, qml::box(x, phi())))));
  }
  src.qml_axioms.push_back(qml::forall_prop(
      "Phi", qml::implies(qml::box("p", qml::box("j", phi())),
                          qml::box("j", qml::box("p", phi())))));
  src.qml_axioms.push_back(qml::forall_prop(
      "Phi", qml::implies(qml::box("wp", phi()), qml::box("p", phi()))));
  src.qml_axioms.push_back(qml::box("p", time()));
  src.qml_axioms.push_back(qml::box("p", qml::box("j", place())));
  src.qml_axioms.push_back(qml::box(
      "wp", qml::implies(qml::box("p", time()), qml::box("j", time()))));
  src.qml_axioms.push_back(qml::box(
      "p", qml::box("j", qml::implies(qml::conj(place(), time()), appointment()))));
  src.qml_conjecture = qml::conj(qml::box("j", qml::box("p", appointment())),
                                 qml::box("p", qml::box("j", appointment())));
  return src;
}

// Region facts about Catalunya, Spain, France, and Paris.
inline logics::ProblemSource rcc_catalunya_source() {
  using namespace logics;
  ProblemSource src;
  src.name = "rcc-catalunya";
  src.logic = SourceLogic::FoRcc;
  src.decls.consts = {
      {"catalunya", "region"}, {"spain", "region"}, {"france", "region"},
      {"paris", "region"}};
  src.expected = Expectation::Theorem;
  src.fo_axioms.push_back(fo::atom("tpp", {"catalunya", "spain"}));
  src.fo_axioms.push_back(fo::atom("ec", {"spain", "france"}));
  src.fo_axioms.push_back(fo::atom("ntpp", {"paris", "france"}));
  src.fo_conjecture = fo::conj(fo::atom("dc", {"catalunya", "paris"}),
                               fo::atom("dc", {"spain", "paris"}));
  return src;
}

// The region facts in an epistemic setting: common knowledge (fool) is
// included in bob's knowledge, the connection facts are lifted to rigid
// modal propositions, and the disconnection conclusion is asked for either
// knower. Only the bob reading follows.
inline embed::Problem rcc_epistemic_problem(bool for_fool) {
  using namespace embed;
  Problem P;
  P.name = for_fool ? "rcc-epistemic-fool" : "rcc-epistemic-bob";
  P.origin = "rcc_epistemic_problem";
  P.sig.declare_base("w");
  declare_modal_operators(P.sig);
  P.sig.declare_const("fool", acc_ty());
  P.sig.declare_const("bob", acc_ty());
  add_rcc_core(P.sig);
  for (const char* c : {"catalunya", "spain", "france", "paris"})
    P.sig.declare_const(c, region_ty());

  TermPtr fool = P.sig.const_term("fool");
  TermPtr bob = P.sig.const_term("bob");
  auto fact = [&](const logics::FoPtr& f) {
    return lift_rigid(embed_fo(f, P.sig));
  };
  using logics::fo::atom;
  using logics::fo::conj;

  P.axioms = rcc_axioms(P.sig);
  P.axioms.push_back(wrap_valid(
      mall_p("Phi", mimp(mbox(fool, stt::var("Phi", prop_ty())),
                         mbox(bob, stt::var("Phi", prop_ty()))))));
  P.axioms.push_back(wrap_valid(mbox(bob, fact(atom("tpp", {"catalunya", "spain"})))));
  P.axioms.push_back(wrap_valid(mbox(fool, fact(atom("ec", {"spain", "france"})))));
  P.axioms.push_back(wrap_valid(mbox(bob, fact(atom("ntpp", {"paris", "france"})))));
  P.conjecture = wrap_valid(
      mbox(for_fool ? fool : bob, fact(conj(atom("dc", {"catalunya", "paris"}),
                                            atom("dc", {"spain", "paris"})))));
  P.expected = for_fool ? logics::Expectation::CounterSatisfiable
                        : logics::Expectation::Theorem;
  P.validate();
  return P;
}

struct IplSample {
  const char* id;
  const char* title;
  logics::Expectation expected;
  logics::IplPtr formula;
};

inline std::vector<IplSample> ipl_samples() {
  using namespace logics::ipl;
  auto p = [] { return atom("p"); };
  auto q = [] { return atom("q"); };
  return {
      {"ipl-1", "identity", logics::Expectation::Theorem, implies(p(), p())},
      {"ipl-2", "Peirce's law", logics::Expectation::CounterSatisfiable,
       implies(implies(implies(p(), q()), p()), p())},
      {"ipl-3", "excluded middle", logics::Expectation::CounterSatisfiable,
       disj(p(), neg(p()))},
      {"ipl-4", "double-negation elimination",
       logics::Expectation::CounterSatisfiable, implies(neg(neg(p())), p())},
      {"ipl-5", "conjunction commutativity", logics::Expectation::Theorem,
       implies(conj(p(), q()), conj(q(), p()))},
  };
}

struct SystemRow {
  const char* id;
  const char* lhs;
  const char* rhs;
  bool equivalence;
  logics::Expectation expected;
};

inline const std::vector<SystemRow>& system_rows() {
  static const std::vector<SystemRow> rows = {
      {"s5-equiv-mb5", "M5", "MB5", true, logics::Expectation::Theorem},
      {"s5-equiv-m4b5", "M5", "M4B5", true, logics::Expectation::Theorem},
      {"s5-equiv-m45", "M5", "M45", true, logics::Expectation::Theorem},
      {"s5-equiv-m4b", "M5", "M4B", true, logics::Expectation::Theorem},
      {"s5-equiv-d4b", "M5", "D4B", true, logics::Expectation::Theorem},
      {"s5-equiv-d4b5", "M5", "D4B5", true, logics::Expectation::Theorem},
      {"s5-equiv-db5", "M5", "DB5", true, logics::Expectation::Theorem},
      {"kb5-equiv-k4b5", "KB5", "K4B5", true, logics::Expectation::Theorem},
      {"kb5-equiv-k4b", "KB5", "K4B", true, logics::Expectation::Theorem},
      {"m5-implies-d45", "M5", "D45", false, logics::Expectation::Theorem},
      {"d45-implies-m5", "D45", "M5", false,
       logics::Expectation::CounterSatisfiable},
  };
  return rows;
}

} // namespace detail

// Every named problem this repository reproduces, with its expected status
// and the carrier sizes at which the finite check settles it.
inline const std::vector<CorpusEntry>& corpus_list() {
  static const std::vector<CorpusEntry> entries = [] {
    using logics::Expectation;
    std::vector<CorpusEntry> out;
    semantics::SearchBounds dflt;

    const auto& props = embed::frame_property_names();
    for (size_t i = 0; i < props.size(); ++i)
      out.push_back({"corr-" + props[i] + "-fwd",
                     "LCL" + std::to_string(699 + i) + "^1.p", Expectation::Theorem,
                     dflt, props[i] + " frame condition implies its schema"});
    for (size_t i = 0; i < props.size(); ++i)
      out.push_back({"corr-" + props[i] + "-bwd",
                     "LCL" + std::to_string(709 + i) + "^1.p", Expectation::Theorem,
                     dflt, props[i] + " frame condition follows from its schema"});

    for (const auto& row : detail::system_rows())
      out.push_back({row.id, "", row.expected, dflt,
                     std::string(row.lhs) + (row.equivalence ? " equivalent to "
                                                             : " implies ") +
                         row.rhs});

    out.push_back({"barcan", "", Expectation::Theorem, detail::bounds_wir(3, 3, 3),
                   "quantifier exchange across the box, inward"});
    out.push_back({"barcan-converse", "", Expectation::Theorem,
                   detail::bounds_wir(3, 3, 3),
                   "quantifier exchange across the box, outward"});
    out.push_back({"confluence", "", Expectation::Theorem, detail::bounds_wir(2, 2, 3),
                   "interaction schema matches diagram-completion condition"});
    out.push_back({"segerberg", "", Expectation::Theorem, dflt,
                   "two commuting S5 boxes distribute over each other's disjunctions"});
    out.push_back({"knowledge-belief", "", Expectation::Theorem, dflt,
                   "knowledge entails belief forces belief to entail knowledge"});
    out.push_back({"friends", "PUZ086^1.p", Expectation::Theorem, dflt,
                   "appointment puzzle: each friend knows the other knows"});
    out.push_back({"wise-men", "PUZ087^1.p", Expectation::Theorem,
                   detail::bounds_wir(2, 3, 3),
                   "third wise man deduces his own white spot"});
    out.push_back({"rcc-catalunya", "", Expectation::Theorem,
                   detail::bounds_wir(3, 2, 4),
                   "border regions force disconnection from Paris"});
    out.push_back({"rcc-epistemic-bob", "", Expectation::Theorem,
                   detail::bounds_wir(2, 2, 4),
                   "bob knows the regions are disconnected"});
    out.push_back({"rcc-epistemic-fool", "", Expectation::CounterSatisfiable,
                   detail::bounds_wir(2, 2, 4),
                   "common knowledge of the disconnection does not follow"});

    for (const auto& s : detail::ipl_samples())
      out.push_back({s.id, "", s.expected, dflt,
                     std::string("intuitionistic sample: ") + s.title});
    return out;
  }();
  return entries;
}

inline const CorpusEntry& find_entry(const std::string& id) {
  for (const auto& e : corpus_list())
    if (e.id == id) return e;
  throw UnknownId(id);
}

// Surface-syntax form of an entry, as written by `corpus export`. Entries
// authored directly in the kernel language round-trip through the `stt`
// problem-file dialect.
inline logics::ProblemSource build_source(const std::string& id);

inline embed::Problem build(const std::string& id) {
  const CorpusEntry& e = find_entry(id);

  if (id.rfind("corr-", 0) == 0) {
    bool fwd = id.size() > 4 && id.substr(id.size() - 4) == "-fwd";
    std::string prop = id.substr(5, id.size() - 5 - 4);
    embed::Problem P = embed::correspondence_problem(
        prop, fwd ? embed::Direction::PropertyToAxiom
                  : embed::Direction::AxiomToProperty);
    P.name = id;
    P.expected = e.expected;
    return P;
  }
  for (const auto& row : detail::system_rows())
    if (id == row.id) {
      embed::Problem P = embed::system_relation_problem(
          row.id, row.lhs, row.rhs, row.equivalence, embed::SystemForm::FrameConditions);
      P.expected = e.expected;
      return P;
    }
  if (id == "barcan" || id == "barcan-converse") {
    for (auto& P : embed::barcan_problems())
      if (P.name == id) {
        P.expected = e.expected;
        return P;
      }
    throw UnknownId(id);
  }
  if (id == "confluence") {
    embed::Problem P = embed::confluence_problem();
    P.expected = e.expected;
    return P;
  }
  if (id == "segerberg") {
    embed::Problem P = embed::segerberg_problem();
    P.expected = e.expected;
    return P;
  }
  if (id == "knowledge-belief") {
    embed::Problem P = embed::knowledge_belief_problem();
    P.expected = e.expected;
    return P;
  }
  if (id == "rcc-epistemic-bob") return detail::rcc_epistemic_problem(false);
  if (id == "rcc-epistemic-fool") return detail::rcc_epistemic_problem(true);
  // Remaining entries are authored in a surface logic.
  return embed::compile_source(build_source(id));
}

inline logics::ProblemSource build_source(const std::string& id) {
  const CorpusEntry& e = find_entry(id);

  if (id == "wise-men") return detail::wise_men_source();
  if (id == "friends") return detail::friends_source();
  if (id == "rcc-catalunya") return detail::rcc_catalunya_source();
  for (const auto& s : detail::ipl_samples())
    if (id == s.id) {
      logics::ProblemSource src;
      src.name = id;
      src.logic = logics::SourceLogic::Ipl;
      src.expected = s.expected;
      src.ipl_conjecture = s.formula;
      return src;
    }

  // Kernel-level entries: serialize the built problem.
  embed::Problem P = build(id);
  logics::ProblemSource src;
  src.name = id;
  src.logic = logics::SourceLogic::Stt;
  src.expected = e.expected;
  src.stt_sig = P.sig;
  src.stt_axioms = P.axioms;
  src.stt_conjecture = P.conjecture;
  return src;
}

// System-comparison entries can also be stated with the modal schemata on
// both sides instead of the first-order frame conditions. Empty for other
// ids; the two statements must agree on validity.
inline std::optional<embed::Problem> build_schema_variant(const std::string& id) {
  for (const auto& row : detail::system_rows())
    if (id == row.id) {
      embed::Problem P = embed::system_relation_problem(
          std::string(row.id) + "-schema", row.lhs, row.rhs, row.equivalence,
          embed::SystemForm::Schemata);
      P.expected = find_entry(id).expected;
      return P;
    }
  return std::nullopt;
}

// Intuitionistic entries compiled with the reflexive-transitive schemata
// premise instead of the frame-condition premise. Empty for other ids; the
// two premises must yield the same verdict.
inline std::optional<embed::Problem> build_ipl_schema_variant(const std::string& id) {
  for (const auto& s : detail::ipl_samples())
    if (id == s.id)
      return embed::compile_source(build_source(id), embed::IplMode::S4Schema);
  return std::nullopt;
}

} // namespace holembed::corpus
