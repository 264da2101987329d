#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "holembed/embed/modal.hpp"
#include "holembed/embed/frames.hpp"
#include "holembed/embed/problem.hpp"
#include "holembed/semantics/eval.hpp"
#include "holembed/semantics/kripke.hpp"
#include "holembed/semantics/search.hpp"
#include "holembed/semantics/standard.hpp"
#include "holembed/stt/normalize.hpp"

#include "random_formulas.hpp"
#include "random_terms.hpp"

using namespace holembed;
using namespace holembed::semantics;
using holembed::stt::TermPtr;
using holembed::stt::TypePtr;

TEST_CASE("dense value encoding fixed points", "[semantics]") {
  StandardModel M;
  M.carriers = {{"w", 2}};
  M.set("d", stt::world_ty(), 0);

  // Unapplied primitives evaluate to their graph encodings.
  CHECK(eval_stt(M, stt::neg_c()) == 1);
  CHECK(eval_stt(M, stt::or_c()) == 14);

  // Truth and falsity.
  TermPtr falsum = stt::forall("X", stt::bool_ty(), stt::var("X", stt::bool_ty()));
  CHECK(eval_stt(M, falsum) == 0);
  CHECK(eval_stt(M, stt::not_(falsum)) == 1);

  TermPtr d = stt::constant("d", stt::world_ty());
  TermPtr t = stt::eq_(stt::world_ty(), d, d);
  CHECK(eval_stt_bool(M, t));
  CHECK(eval_stt_bool(M, stt::or_(t, stt::not_(t))));
  CHECK_FALSE(eval_stt_bool(M, stt::and_(t, stt::not_(t))));
  CHECK(eval_stt_bool(M, stt::exists("X", stt::world_ty(),
                                     stt::eq_(stt::world_ty(),
                                              stt::var("X", stt::world_ty()), d))));

  CHECK(type_card(stt::bool_ty(), M) == 2);
  CHECK(type_card(stt::fn(stt::world_ty(), stt::bool_ty()), M) == 4);
  CHECK(type_card(stt::fn(stt::world_ty(), stt::world_ty(), stt::bool_ty()), M) == 16);
  StandardModel big;
  big.carriers = {{"w", 63}};
  CHECK_THROWS_AS(type_card(stt::fn(stt::world_ty(), stt::bool_ty()), big),
                  SemanticsError);
  CHECK(apply_index(14, 0, 4) == 2);
  CHECK(apply_index(14, 1, 4) == 3);
}

TEST_CASE("value rendering", "[semantics]") {
  StandardModel M;
  M.carriers = {{"w", 2}};
  CHECK(show_value(1, stt::bool_ty(), M) == "true");
  CHECK(show_value(0, stt::bool_ty(), M) == "false");
  CHECK(show_value(1, stt::world_ty(), M) == "1");
  CHECK(show_value(10, embed::acc_ty(), M) == "{(0,1), (1,1)}");
  CHECK(show_value(0, embed::acc_ty(), M) == "{}");
  CHECK(show_value(2, stt::fn(stt::world_ty(), stt::world_ty()), M) ==
        "[0 -> 0, 1 -> 1]");
  M.set("r", embed::acc_ty(), 10);
  std::string shown = show_model(M);
  CHECK(shown.find("carrier w = 2") != std::string::npos);
  CHECK(shown.find("r : w > w > o = {(0,1), (1,1)}") != std::string::npos);
}

TEST_CASE("direct Kripke evaluation", "[semantics]") {
  KripkeModel K;
  K.n_worlds = 2;
  K.n_individuals = 2;
  K.rel["r"] = 0b1010; // 0 -> 1, 1 -> 1
  K.prop["s"] = 0b01;  // s holds at world 0 only
  K.pred["pa"] = {0b11, 0b10};
  K.ind["alice"] = 1;

  namespace q = logics::qml;
  CHECK(eval_qml(K, 0, q::atom("s")));
  CHECK_FALSE(eval_qml(K, 1, q::atom("s")));
  // Box looks one step along r.
  CHECK_FALSE(eval_qml(K, 0, q::box("r", q::atom("s"))));
  CHECK(eval_qml(K, 0, q::box("r", q::atom("pa", {"alice"}))));
  CHECK(eval_qml(K, 0, q::diamond("r", q::neg(q::atom("s")))));
  // Individual quantifiers range over the shared domain.
  CHECK(eval_qml(K, 0, q::forall_ind("X", q::atom("pa", {"X"}))));
  CHECK_FALSE(eval_qml(K, 1, q::forall_ind("X", q::atom("pa", {"X"}))));
  CHECK(eval_qml(K, 1, q::exists_ind("X", q::atom("pa", {"X"}))));
  // Propositional quantifiers range over all world sets.
  CHECK(eval_qml(K, 0, q::exists_prop("P", q::conj(q::prop_var("P"),
                                                   q::box("r", q::neg(q::prop_var("P")))))));
  CHECK_FALSE(eval_qml(K, 0, q::forall_prop("P", q::prop_var("P"))));

  CHECK_THROWS_AS(eval_qml(K, 0, q::atom("nope")), SemanticsError);
  CHECK_THROWS_AS(eval_qml(K, 0, q::box("missing", q::atom("s"))), SemanticsError);
  CHECK_THROWS_AS(eval_qml(K, 0, q::prop_var("P")), SemanticsError);
  CHECK_THROWS_AS(eval_qml(K, 0, q::atom("pa", {"bob"})), SemanticsError);
}

TEST_CASE("frame enumeration", "[semantics]") {
  std::vector<uint64_t> frames = enumerate_frames(2);
  REQUIRE(frames.size() == 16);
  CHECK(std::is_sorted(frames.begin(), frames.end()));
  CHECK(enumerate_frames(2, /*filter_isomorphic=*/true).size() == 10);
  CHECK(enumerate_frames(3).size() == 512);
  CHECK_THROWS_AS(enumerate_frames(8), SemanticsError);
  CHECK_THROWS_AS(enumerate_frames(0), SemanticsError);

  size_t pairs = 0;
  enumerate_frames(2, 2, [&](const std::vector<uint64_t>& m) {
    REQUIRE(m.size() == 2);
    ++pairs;
  });
  CHECK(pairs == 256);

  // Relabeling keeps the bit count and is involutive for a transposition.
  uint64_t mask = 0b0010; // 0 -> 1 with n = 2... bit 1 is (0,1)
  uint64_t swapped = relabel_frame(mask, 2, {1, 0});
  CHECK(swapped == 0b0100);
  CHECK(relabel_frame(swapped, 2, {1, 0}) == mask);
}

TEST_CASE("frame property checks agree with their defining terms", "[semantics]") {
  // Independent paths: direct world loops on the bitmask vs evaluating the
  // property's lambda-term against the dense relation encoding.
  for (size_t n = 1; n <= 3; ++n) {
    StandardModel M;
    M.carriers = {{"w", n}};
    for (const auto& name : embed::frame_property_names()) {
      TermPtr applied = stt::app(embed::frame_property(name),
                                 stt::constant("rr", embed::acc_ty()));
      for (uint64_t mask : enumerate_frames(n)) {
        M.set("rr", embed::acc_ty(), relation_value(mask, n));
        INFO(name << " n=" << n << " mask=" << mask);
        REQUIRE(eval_stt_bool(M, applied) == check_frame_property(mask, n, name));
      }
    }
  }
  CHECK_THROWS_AS(check_frame_property(0, 2, "nope"), SemanticsError);
}

TEST_CASE("a serial transitive euclidean frame need not be reflexive",
          "[semantics]") {
  // Two worlds, edges 0->1 and 1->1.
  uint64_t mask = 0b1010;
  CHECK(check_frame_property(mask, 2, "serial"));
  CHECK(check_frame_property(mask, 2, "transitive"));
  CHECK(check_frame_property(mask, 2, "euclidean"));
  CHECK_FALSE(check_frame_property(mask, 2, "reflexive"));
  CHECK_FALSE(check_frame_property(mask, 2, "symmetric"));
}

TEST_CASE("Kripke models convert to standard models", "[semantics]") {
  const auto& ms = testgen::oracle_vocabulary();
  KripkeModel K;
  K.n_worlds = 2;
  K.n_individuals = 2;
  K.rel["r"] = 0b1010;
  K.prop["s"] = 0b01;
  K.pred["pa"] = {0b11, 0b10};
  K.pred["pb"] = {0b00, 0b01};

  StandardModel M = standard_model_of(K, ms);
  CHECK(M.carrier("w") == 2);
  CHECK(M.carrier("i") == 2);
  CHECK(M.find("r")->val == relation_value(0b1010, 2));
  CHECK(M.find("r")->val == 10);
  CHECK(M.find("s")->val == 1);
  // Unary predicate: value of individual x sits at stride 4^x.
  CHECK(M.find("pa")->val == 3 + 2 * 4);
  CHECK(M.find("pb")->val == 0 + 1 * 4);
}

TEST_CASE("compiled evaluation matches the reference evaluator", "[semantics]") {
  testgen::TermGen gen(5150);
  const stt::Signature& sig = gen.sig();

  StandardModel M;
  M.carriers = {{"w", 2}, {"i", 2}};
  std::vector<std::pair<std::string, TypePtr>> slots;
  for (const auto& c : sig.constants()) slots.emplace_back(c.name, c.ty);

  std::mt19937_64 rng(99);
  size_t checked = 0;
  for (int k = 0; k < 400; ++k) {
    TermPtr t = gen.closed(stt::bool_ty(), 4);
    CompiledFormula cf = CompiledFormula::compile(t, slots, M);
    for (int m = 0; m < 8; ++m) {
      std::vector<uint64_t> vals;
      for (const auto& [name, ty] : slots) {
        uint64_t card = type_card(ty, M);
        uint64_t v = rng() % card;
        vals.push_back(v);
        M.set(name, ty, v);
      }
      uint64_t ops = 0;
      bool fast = cf.eval(vals, ops);
      bool slow = eval_stt_bool(M, t);
      REQUIRE(fast == slow);
      ++checked;
    }
  }
  CHECK(checked == 400 * 8);
}

TEST_CASE("Kripke truth transfers through the word-for-word translation",
          "[semantics]") {
  // The two independent evaluators agree on every formula, model, and world.
  std::vector<logics::QmlPtr> formulas = testgen::qml_formula_set(60, 3, 424242);

  size_t comparisons = 0;
  size_t bad = 0;
  for (auto [nw, ni] : {std::pair<size_t, size_t>{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    std::vector<testgen::OracleCase> cases = testgen::all_oracle_cases(nw, ni);
    bad += testgen::oracle_disagreements(formulas, cases, nw, ni, comparisons);
  }
  std::vector<testgen::OracleCase> sample = testgen::random_oracle_cases(3, 2, 200, 7);
  bad += testgen::oracle_disagreements(formulas, sample, 3, 2, comparisons);

  CHECK(bad == 0);
  CHECK(comparisons > 2'000'000);
}

TEST_CASE("the slow evaluator agrees with both on a spot sample", "[semantics]") {
  const auto& ms = testgen::oracle_vocabulary();
  std::vector<logics::QmlPtr> formulas = testgen::qml_formula_set(20, 3, 31337);
  std::vector<testgen::OracleCase> cases = testgen::random_oracle_cases(2, 2, 30, 11);

  for (const auto& f : formulas) {
    TermPtr prop = stt::unfold_normalize(embed::embed_qml(f, ms), ms.sig());
    TermPtr at_world =
        stt::beta_eta_normalize(stt::app(prop, stt::constant("wp", stt::world_ty())));
    for (const auto& c : cases) {
      StandardModel M = standard_model_of(c.K, ms);
      for (size_t w = 0; w < c.K.n_worlds; ++w) {
        M.set("wp", stt::world_ty(), w);
        REQUIRE(eval_stt_bool(M, at_world) == eval_qml(c.K, w, f));
      }
    }
  }
}

TEST_CASE("countermodel search refutes and certifies", "[semantics]") {
  embed::ModalSignature ms({"r"}, {{"s", 0}}, {});
  TermPtr r = ms.index_term("r");
  TermPtr s = ms.pred_term("s");

  embed::Problem P;
  P.name = "box-to-here";
  P.sig = ms.sig();
  P.conjecture = embed::wrap_valid(embed::mimp(embed::mbox(r, s), s));
  P.expected = logics::Expectation::CounterSatisfiable;

  BoundedVerdict v = countermodel_search(P);
  REQUIRE(v.refuted());
  CHECK(v.complete);
  CHECK(v.model.carrier("w") == 1);
  REQUIRE(v.witness_world.has_value());
  CHECK(*v.witness_world == 0);
  // The certificate re-evaluates: conjecture false in the reported model.
  CHECK_FALSE(eval_stt_bool(v.model, P.conjecture, &P.sig));
  CHECK(v.stats.candidates > 0);

  // Same witness whether the value range is scanned serially or split.
  BoundedVerdict v2 = countermodel_search(P, {}, 2);
  REQUIRE(v2.refuted());
  CHECK(v2.model.carrier("w") == v.model.carrier("w"));
  REQUIRE(v2.witness_world.has_value());
  CHECK(*v2.witness_world == *v.witness_world);
  for (const auto& c : v.model.consts) {
    const auto* c2 = v2.model.find(c.name);
    REQUIRE(c2 != nullptr);
    CHECK(c2->val == c.val);
  }
}

TEST_CASE("countermodel search exhausts sound bounds", "[semantics]") {
  embed::ModalSignature ms({"r"}, {{"s", 0}}, {});
  TermPtr s = ms.pred_term("s");

  embed::Problem P;
  P.name = "excluded-middle-world";
  P.sig = ms.sig();
  P.conjecture = embed::wrap_valid(embed::mor(s, embed::mnot(s)));
  P.expected = logics::Expectation::Theorem;

  BoundedVerdict v = countermodel_search(P);
  CHECK_FALSE(v.refuted());
  CHECK(v.complete);
  CHECK(v.warning.empty());
  CHECK(v.stats.tuples == 3); // world carrier sizes 1, 2, 3

  // An axiom can force the countermodel's shape: with s required somewhere,
  // the negation of s everywhere must fail.
  embed::Problem Q;
  Q.name = "axiom-guided";
  Q.sig = ms.sig();
  Q.axioms.push_back(embed::wrap_valid(s));
  Q.conjecture = embed::wrap_valid(embed::mnot(s));
  BoundedVerdict vq = countermodel_search(Q);
  REQUIRE(vq.refuted());
  CHECK(eval_stt_bool(vq.model, Q.axioms[0], &Q.sig));
  CHECK_FALSE(eval_stt_bool(vq.model, Q.conjecture, &Q.sig));
}

TEST_CASE("search bounds and budget valves", "[semantics]") {
  SearchBounds b;
  CHECK(b.max_for("w") == 3);
  CHECK(b.max_for("i") == 2);
  CHECK(b.max_for("region") == 3);
  CHECK(b.max_for("unheard_of") == 3);
  b.with("w", 2).with("zone", 5);
  CHECK(b.max_for("w") == 2);
  CHECK(b.max_for("zone") == 5);

  // A starved budget reports incompleteness instead of a verdict.
  embed::ModalSignature ms({"r"}, {{"s", 0}}, {});
  embed::Problem P;
  P.name = "starved";
  P.sig = ms.sig();
  P.conjecture = embed::wrap_valid(
      embed::mor(ms.pred_term("s"), embed::mnot(ms.pred_term("s"))));
  SearchBounds starved;
  starved.budget = 10;
  BoundedVerdict v = countermodel_search(P, starved);
  CHECK_FALSE(v.refuted());
  CHECK_FALSE(v.complete);
  CHECK_FALSE(v.warning.empty());
}
