#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "holembed/embed/frames.hpp"
#include "holembed/embed/from_source.hpp"
#include "holembed/embed/ipl.hpp"
#include "holembed/embed/modal.hpp"
#include "holembed/embed/problem.hpp"
#include "holembed/embed/rcc.hpp"
#include "holembed/logics/parse.hpp"
#include "holembed/logics/problem_source.hpp"
#include "holembed/stt/normalize.hpp"
#include "holembed/stt/print.hpp"

using namespace holembed;
using namespace holembed::embed;
using holembed::stt::TermPtr;
using holembed::stt::TypePtr;

TEST_CASE("box over an existential proposition unfolds to its first-order core",
          "[embed]") {
  ModalSignature ms({"r"}, {}, {});
  TermPtr r = ms.index_term("r");
  TermPtr boxed = wrap_valid(mbox(r, mexi_p("P", stt::var("P", prop_ty()))));
  TermPtr u = stt::unfold_normalize(boxed, ms.sig());

  TypePtr w = stt::world_ty();
  TermPtr W = stt::var("W", w), V = stt::var("V", w);
  TermPtr expected = stt::forall(
      "W", w,
      stt::forall("V", w,
                  stt::or_(stt::not_(stt::app(stt::app(r, W), V)),
                           stt::not_(stt::forall("Q", prop_ty(),
                                                 stt::not_(stt::app(
                                                     stt::var("Q", prop_ty()), V)))))));
  CHECK(stt::alpha_equal(u, expected));
  CHECK(stt::show_term(u) ==
        "! [W : w] : ! [V : w] : ((~ (r W V)) | (? [P : w > o] : P V))");
}

TEST_CASE("modal operator definitions have the declared types", "[embed]") {
  ModalSignature ms({"r"}, {{"ws", 1}}, {"alice"});
  const stt::Signature& sig = ms.sig();

  for (const char* op : {"mnot", "mor", "mand", "mimp", "mequ", "mtop", "mbot",
                         "mbox", "mdia", "mall_i", "mexi_i", "mall_p", "mexi_p",
                         "valid"}) {
    INFO(op);
    REQUIRE(sig.has_const(op));
    REQUIRE(sig.is_defined(op));
    // Every definition body really has the declared type.
    CHECK(stt::type_equal(stt::type_of(sig.definition(op), sig), sig.const_type(op)));
  }
  CHECK(stt::type_equal(sig.const_type("mbox"),
                        stt::fn(acc_ty(), stt::fn(prop_ty(), prop_ty()))));
  CHECK(stt::type_equal(sig.const_type("valid"),
                        stt::fn(prop_ty(), stt::bool_ty())));
}

TEST_CASE("signature building mangles colliding user symbols", "[embed]") {
  // A user predicate that shadows an operator name gets a fresh name; the
  // accessor map still finds it under the surface name.
  ModalSignature ms({"mbox"}, {{"valid", 1}, {"ws", 0}}, {"mnot"});
  CHECK(ms.index_name("mbox") == "mbox1");
  CHECK(ms.pred_name("valid") == "valid1");
  CHECK(ms.pred_name("ws") == "ws");
  CHECK(ms.ind_name("mnot") == "mnot1");
  CHECK(ms.pred_arity("valid") == 1);
  CHECK(ms.has_pred("ws"));
  CHECK_FALSE(ms.has_pred("nope"));
  CHECK_THROWS_AS(ms.pred_term("nope"), EmbedError);
  CHECK_THROWS_AS(ms.index_term("nope"), EmbedError);
  CHECK_THROWS_AS(ms.ind_term("nope"), EmbedError);

  // Indices with no predicates and no individuals need no individual carrier.
  ModalSignature bare({"r"}, {}, {});
  CHECK_FALSE(bare.sig().has_base("i"));
  ModalSignature with_ind({"r"}, {}, {"alice"});
  CHECK(with_ind.sig().has_base("i"));
}

TEST_CASE("formula translation is compositional", "[embed]") {
  namespace q = logics::qml;
  ModalSignature ms({"r"}, {{"ws", 1}, {"s", 0}}, {"alice"});

  logics::QmlPtr f = q::implies(q::box("r", q::atom("s")),
                                q::exists_ind("X", q::atom("ws", {"X"})));
  TermPtr t = embed_qml(f, ms);
  CHECK(stt::type_equal(stt::type_of(t, ms.sig()), prop_ty()));

  // Connectives map one-to-one onto operator applications.
  CHECK(stt::alpha_equal(embed_qml(q::neg(q::atom("s")), ms),
                         mnot(ms.pred_term("s"))));
  CHECK(stt::alpha_equal(embed_qml(q::box("r", q::atom("s")), ms),
                         mbox(ms.index_term("r"), ms.pred_term("s"))));
  CHECK(stt::alpha_equal(
      embed_qml(q::atom("ws", {"alice"}), ms),
      stt::app(ms.pred_term("ws"), ms.ind_term("alice"))));
  CHECK(stt::alpha_equal(
      embed_qml(q::forall_ind("X", q::atom("ws", {"X"})), ms),
      mall_i("X", stt::app(ms.pred_term("ws"), stt::var("X", stt::ind_ty())))));

  // Unknown vocabulary is rejected.
  CHECK_THROWS_AS(embed_qml(q::atom("nope"), ms), EmbedError);
  CHECK_THROWS_AS(embed_qml(q::box("missing", q::atom("s")), ms), EmbedError);

  // The validity wrapper takes world-indexed propositions only.
  CHECK(stt::type_equal(stt::type_of(wrap_valid(t), ms.sig()), stt::bool_ty()));
  CHECK_THROWS_AS(wrap_valid(ms.ind_term("alice")), stt::TypeError);
}

TEST_CASE("frame properties and their schemata line up by name", "[embed]") {
  const auto& names = frame_property_names();
  REQUIRE(names.size() == 10);
  CHECK(names[0] == "reflexive");
  CHECK(names[3] == "transitive");
  CHECK(names[9] == "weakly_directed");

  for (const auto& n : names) {
    INFO(n);
    TermPtr prop = frame_property(n);
    CHECK(stt::type_equal(stt::type_of(prop),
                          stt::fn(acc_ty(), stt::bool_ty())));
    TermPtr ax = modal_axiom_over(n, stt::constant("r", acc_ty()));
    CHECK(stt::type_equal(stt::type_of(ax), prop_ty()));
  }
  CHECK_THROWS_AS(frame_property("nope"), EmbedError);
  CHECK_THROWS_AS(modal_axiom_over("nope", stt::constant("r", acc_ty())), EmbedError);

  // Traditional letters select the same schema as the property name.
  TermPtr r = stt::constant("r", acc_ty());
  CHECK(stt::alpha_equal(modal_axiom_over("M", r), modal_axiom_over("reflexive", r)));
  CHECK(stt::alpha_equal(modal_axiom_over("B", r), modal_axiom_over("symmetric", r)));
  CHECK(stt::alpha_equal(modal_axiom_over("D", r), modal_axiom_over("serial", r)));
  CHECK(stt::alpha_equal(modal_axiom_over("4", r), modal_axiom_over("transitive", r)));
  CHECK(stt::alpha_equal(modal_axiom_over("5", r), modal_axiom_over("euclidean", r)));
}

TEST_CASE("relation problems assemble and typecheck", "[embed]") {
  for (const auto& n : frame_property_names()) {
    for (Direction dir : {Direction::PropertyToAxiom, Direction::AxiomToProperty}) {
      Problem P = correspondence_problem(n, dir);
      INFO(P.name);
      CHECK_NOTHROW(P.validate());
      CHECK(P.axioms.empty());
      CHECK(P.expected == logics::Expectation::Theorem);
    }
  }

  for (SystemForm form : {SystemForm::FrameConditions, SystemForm::Schemata}) {
    Problem P = system_relation_problem("kb5-vs-s5", "KB5", "S5", true, form);
    CHECK_NOTHROW(P.validate());
    CHECK(P.name == "kb5-vs-s5");
  }
  CHECK_THROWS_AS(system_relation_problem("x", "KXYZ", "S5", true,
                                          SystemForm::FrameConditions),
                  Error);

  std::vector<Problem> bs = barcan_problems();
  REQUIRE(bs.size() == 2);
  for (const auto& P : bs) CHECK_NOTHROW(P.validate());

  CHECK_NOTHROW(confluence_problem().validate());
  CHECK_NOTHROW(segerberg_problem().validate());
  CHECK_NOTHROW(knowledge_belief_problem().validate());
}

TEST_CASE("intuitionistic connectives translate through the modal reading",
          "[embed]") {
  namespace i = logics::ipl;
  namespace q = logics::qml;

  // Atoms stay bare; implication boxes both sides.
  logics::IplPtr f = i::implies(i::atom("a"), i::atom("b"));
  logics::QmlPtr g = godel_translate(f);
  CHECK(logics::qml_equal(g, q::implies(q::box("r", q::atom("a")),
                                        q::box("r", q::atom("b")))));
  // Conjunction passes through untouched.
  CHECK(logics::qml_equal(godel_translate(i::conj(i::atom("a"), i::atom("b"))),
                          q::conj(q::atom("a"), q::atom("b"))));
  // Negation boxes its argument.
  CHECK(logics::qml_equal(godel_translate(i::neg(i::atom("a"))),
                          q::neg(q::box("r", q::atom("a")))));

  for (IplMode mode : {IplMode::S4Schema, IplMode::FrameConditions}) {
    Problem P = build_ipl_problem("imp-self", i::implies(i::atom("a"), i::atom("a")),
                                  mode, logics::Expectation::Theorem);
    INFO(static_cast<int>(mode));
    CHECK_NOTHROW(P.validate());
    CHECK(P.axioms.empty());
    CHECK(P.expected == logics::Expectation::Theorem);
    // The conjecture is a single guarded implication: not (premise) or goal.
    REQUIRE(P.conjecture->kind == stt::TermKind::App);
    REQUIRE(P.conjecture->child0->kind == stt::TermKind::App);
    CHECK(P.conjecture->child0->child0->kind == stt::TermKind::Or);
  }
}

TEST_CASE("spatial core declares one primitive and nine derived relations",
          "[embed]") {
  stt::Signature sig;
  add_rcc_core(sig);
  CHECK(sig.has_base("region"));

  const char* const order[] = {"c", "dc", "p", "eq", "o", "po",
                               "ec", "pp", "tpp", "ntpp"};
  const auto& cs = sig.constants();
  REQUIRE(cs.size() == 10);
  for (size_t k = 0; k < 10; ++k) {
    CHECK(cs[k].name == order[k]);
    CHECK(stt::type_equal(cs[k].ty, stt::fn(region_ty(), region_ty(), stt::bool_ty())));
  }
  CHECK_FALSE(sig.is_defined("c"));
  for (size_t k = 1; k < 10; ++k) {
    INFO(order[k]);
    CHECK(sig.is_defined(order[k]));
  }

  std::vector<TermPtr> axs = rcc_axioms(sig);
  REQUIRE(axs.size() == 2);
  for (const auto& a : axs)
    CHECK(stt::type_equal(stt::type_of(a, sig), stt::bool_ty()));

  // First-order surface formulas over the spatial vocabulary embed rigidly.
  logics::FoPtr fo = logics::parse_fo("![X]: ?[Y]: (c(X,Y) & ~ dc(X,Y))");
  TermPtr t = embed_fo(fo, sig);
  CHECK(stt::type_equal(stt::type_of(t, sig), stt::bool_ty()));
}

TEST_CASE("source problems compile into checked kernel problems", "[embed]") {
  using logics::read_lgp;

  logics::ProblemSource q = read_lgp(
      "logic qml\nindex r\npred ws/1\nconst alice:i\n"
      "axiom [r] ws(alice)\nconjecture <r> ws(alice) | ~ <r> ws(alice)\nexpect theorem\n",
      "q1");
  Problem Pq = compile_source(q);
  CHECK_NOTHROW(Pq.validate());
  CHECK(Pq.axioms.size() == 1);
  CHECK(Pq.expected == logics::Expectation::Theorem);
  CHECK(Pq.name == "q1");

  logics::ProblemSource i = read_lgp(
      "logic ipl\nconjecture a => b => a\nexpect theorem\n", "i1");
  Problem Pi = compile_source(i);
  CHECK_NOTHROW(Pi.validate());
  CHECK(Pi.axioms.empty());
  Problem Pi2 = compile_source(i, IplMode::S4Schema);
  CHECK_NOTHROW(Pi2.validate());
  CHECK_FALSE(stt::alpha_equal(Pi.conjecture, Pi2.conjecture));

  logics::ProblemSource f = read_lgp(
      "logic fo-rcc\nconst spain:region\nconst france:region\n"
      "axiom ec(spain, france)\nconjecture ~ po(spain, france)\n",
      "f1");
  Problem Pf = compile_source(f);
  CHECK_NOTHROW(Pf.validate());
  // Spatial problems pick up the connectedness axioms on top of their own.
  CHECK(Pf.axioms.size() >= 3);

  logics::ProblemSource s = read_lgp(
      "logic stt\nbase w\nconst p : w > o\nconst d : w\n"
      "axiom p d\nconjecture ? [X : w] : p X\nexpect theorem\n",
      "s1");
  Problem Ps = compile_source(s);
  CHECK_NOTHROW(Ps.validate());
  CHECK(Ps.axioms.size() == 1);
  CHECK(stt::alpha_equal(Ps.conjecture, s.stt_conjecture));
}
