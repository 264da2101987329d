// Acceptance gate: exercises the full pipeline end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failed criteria,
// so a zero exit means the build meets every stated guarantee.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "holembed/corpus/corpus.hpp"
#include "holembed/embed/modal.hpp"
#include "holembed/semantics/kripke.hpp"
#include "holembed/semantics/search.hpp"
#include "holembed/semantics/standard.hpp"
#include "holembed/stt/normalize.hpp"
#include "holembed/stt/print.hpp"
#include "holembed/stt/typecheck.hpp"
#include "holembed/thf/emit.hpp"
#include "holembed/thf/prover.hpp"
#include "random_formulas.hpp"
#include "random_terms.hpp"

using namespace holembed;

namespace {

struct Gate {
  int failures = 0;
  int index = 0;

  void report(const std::string& name, bool ok, double secs,
              const std::string& detail) {
    ++index;
    std::printf("%d %s %s (%.1fs)%s%s\n", index, ok ? "PASS" : "FAIL",
                name.c_str(), secs, detail.empty() ? "" : " — ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }

  void skip(const std::string& name, const std::string& why) {
    ++index;
    std::printf("%d SKIP %s — %s\n", index, name.c_str(), why.c_str());
    std::fflush(stdout);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool certifies(const embed::Problem& P, const semantics::StandardModel& M) {
  for (const auto& ax : P.axioms)
    if (!semantics::eval_stt_bool(M, ax, &P.sig)) return false;
  return !semantics::eval_stt_bool(M, P.conjecture, &P.sig);
}

std::optional<uint64_t> decode_relation_mask(uint64_t val, size_t n) {
  for (uint64_t mask = 0; mask < (uint64_t{1} << (n * n)); ++mask)
    if (semantics::relation_value(mask, n) == val) return mask;
  return std::nullopt;
}

// --- criterion 1: the modal evaluator against the compiled kernel ----------

void run_direct_vs_compiled(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<logics::QmlPtr> formulas = testgen::qml_formula_set(200, 3, 20260816);
  size_t comparisons = 0, bad = 0;

  for (auto [w, i] : std::vector<std::pair<size_t, size_t>>{
           {1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
    std::vector<testgen::OracleCase> cases = testgen::all_oracle_cases(w, i);
    bad += testgen::oracle_disagreements(formulas, cases, w, i, comparisons);
  }
  std::vector<testgen::OracleCase> sample =
      testgen::random_oracle_cases(3, 2, 1000, 1113);
  bad += testgen::oracle_disagreements(formulas, sample, 3, 2, comparisons);

  double secs = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%zu formulas, %zu world-level checks, %zu disagreements",
                formulas.size(), comparisons, bad);
  gate.report(
      "relational evaluation agrees with the compiled type-theory reading",
      bad == 0 && formulas.size() >= 200 && comparisons >= 7000000 &&
          secs < 60.0,
      secs, detail);
}

// --- criterion 2: frame-condition/schema correspondences --------------------

void run_correspondences(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  size_t verified = 0, total = 0;
  for (const auto& e : corpus::corpus_list()) {
    if (e.id.rfind("corr-", 0) != 0) continue;
    ++total;
    auto v = semantics::countermodel_search(corpus::build(e.id), e.bounds);
    if (!v.refuted() && v.complete && v.warning.empty()) ++verified;
  }
  double secs = seconds_since(t0);
  char detail[120];
  std::snprintf(detail, sizeof detail, "%zu/%zu exhaustively verified",
                verified, total);
  gate.report("all twenty correspondence statements hold up to three worlds",
              total == 20 && verified == 20 && secs < 60.0, secs, detail);
}

// --- criterion 3: system inclusions and the refuted direction --------------

void run_system_rows(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::string> holding = {
      "s5-equiv-mb5", "s5-equiv-m4b5", "s5-equiv-m45",  "s5-equiv-m4b",
      "s5-equiv-d4b", "s5-equiv-d4b5", "s5-equiv-db5",  "kb5-equiv-k4b5",
      "kb5-equiv-k4b", "m5-implies-d45"};
  size_t held = 0;
  for (const auto& id : holding) {
    auto v = semantics::countermodel_search(corpus::build(id),
                                            corpus::find_entry(id).bounds);
    if (!v.refuted() && v.complete) ++held;
  }

  embed::Problem wrong = corpus::build("d45-implies-m5");
  auto v = semantics::countermodel_search(
      wrong, corpus::find_entry("d45-implies-m5").bounds);
  bool refutation_ok = v.refuted() && v.model.carrier("w") <= 2 &&
                       v.witness_world.has_value() && certifies(wrong, v.model);

  double secs = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%zu/10 inclusions certified; reverse direction refuted on %zu "
                "world(s) with a re-checked certificate",
                held, v.refuted() ? v.model.carrier("w") : 0);
  gate.report("system equivalences hold and the reversed inclusion fails",
              held == holding.size() && refutation_ok, secs, detail);
}

// --- criterion 4: quantifier exchange across the box ------------------------

void run_quantifier_exchange(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  size_t ok = 0;
  for (const std::string id : {"barcan", "barcan-converse"}) {
    const auto& e = corpus::find_entry(id);
    auto v = semantics::countermodel_search(corpus::build(id), e.bounds);
    if (!v.refuted() && v.complete && e.bounds.max_for("w") == 3 &&
        e.bounds.max_for("i") == 3)
      ++ok;
  }
  gate.report(
      "both quantifier-exchange schemata hold at three worlds and individuals",
      ok == 2, seconds_since(t0), "");
}

// --- criterion 5: epistemic puzzles and spatial entries ----------------------

void run_puzzles(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  size_t held = 0;
  for (const std::string id :
       {"friends", "wise-men", "rcc-catalunya", "rcc-epistemic-bob"}) {
    auto v = semantics::countermodel_search(corpus::build(id),
                                            corpus::find_entry(id).bounds);
    if (!v.refuted() && v.complete) ++held;
  }
  embed::Problem fool = corpus::build("rcc-epistemic-fool");
  auto v = semantics::countermodel_search(
      fool, corpus::find_entry("rcc-epistemic-fool").bounds);
  bool fool_ok = v.refuted() && certifies(fool, v.model);

  double secs = seconds_since(t0);
  char detail[120];
  std::snprintf(detail, sizeof detail,
                "%zu/4 certified, misattributed variant refuted", held);
  gate.report("puzzle and spatial entries settle at their catalogued bounds",
              held == 4 && fool_ok && secs < 300.0, secs, detail);
}

// --- criterion 6: intuitionistic samples -------------------------------------

void run_intuitionistic(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  for (const std::string id : {"ipl-1", "ipl-2", "ipl-3", "ipl-4", "ipl-5"}) {
    const auto& e = corpus::find_entry(id);
    embed::Problem P = corpus::build(id);
    auto v = semantics::countermodel_search(P, e.bounds);
    bool expect_refuted =
        e.expected == logics::Expectation::CounterSatisfiable;

    if (v.refuted() != expect_refuted) {
      ok = false;
      detail += id + " unexpected verdict; ";
      continue;
    }
    if (v.refuted()) {
      size_t n = v.model.carrier("w");
      const auto* r = v.model.find("r");
      std::optional<uint64_t> mask =
          r ? decode_relation_mask(r->val, n) : std::nullopt;
      bool preorder = mask.has_value() &&
                      semantics::check_frame_property(*mask, n, "reflexive") &&
                      semantics::check_frame_property(*mask, n, "transitive");
      if (!(n <= 3 && preorder && certifies(P, v.model))) {
        ok = false;
        detail += id + " countermodel not a small preorder; ";
      }
    }

    auto schema = corpus::build_ipl_schema_variant(id);
    if (!schema.has_value() ||
        semantics::countermodel_search(*schema, e.bounds).refuted() !=
            v.refuted()) {
      ok = false;
      detail += id + " premise styles disagree; ";
    }
  }
  gate.report(
      "intuitionistic samples settle correctly under both premise styles", ok,
      seconds_since(t0), detail);
}

// --- criterion 7: randomized kernel properties -------------------------------

void run_kernel_properties(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  testgen::TermGen gen(424243);
  const stt::Signature& sig = gen.sig();
  size_t cases = 0, bad = 0;

  for (int round = 0; round < 6000; ++round) {
    stt::TypePtr ty = gen.pick_type();
    stt::TermPtr t = gen.closed(ty, 4);
    ++cases;
    try {
      if (!stt::type_equal(stt::type_of(t, sig), ty)) throw Error("gen");
      stt::TermPtr n = stt::beta_eta_normalize(t);
      if (!stt::type_equal(stt::type_of(n, sig), ty)) throw Error("norm");
      if (!stt::alpha_equal(stt::beta_eta_normalize(n), n))
        throw Error("idem");
    } catch (const Error&) {
      ++bad;
    }
  }

  for (int round = 0; round < 4000; ++round) {
    stt::TypePtr ty = gen.pick_type();
    stt::TermPtr open = gen.open_bool("FREEX", ty, 3);
    stt::TermPtr arg = gen.closed(ty, 3);
    ++cases;
    try {
      stt::TermPtr r = stt::substitute(open, "FREEX", ty, arg);
      if (!stt::type_equal(stt::type_of(r, sig), stt::bool_ty()))
        throw Error("subst");
      if (stt::free_vars(r).count("FREEX")) throw Error("free");
    } catch (const Error&) {
      ++bad;
    }
  }

  // Golden unfolding: necessity of an existential proposition reduces to its
  // quantified first-order core, in shape and in canonical text.
  bool golden = false;
  try {
    stt::Signature sig2;
    embed::declare_modal_operators(sig2);
    sig2.declare_const("r", embed::acc_ty());
    stt::TermPtr t = embed::wrap_valid(
        embed::mbox(sig2.const_term("r"),
                    embed::mexi_p("P", stt::var("P", embed::prop_ty()))));
    stt::TermPtr n = stt::unfold_normalize(t, sig2);
    golden = stt::show_term(n) ==
             "! [W : w] : ! [V : w] : ((~ (r W V)) | (? [P : w > o] : P V))";
  } catch (const Error&) {
    golden = false;
  }

  double secs = seconds_since(t0);
  char detail[120];
  std::snprintf(detail, sizeof detail,
                "%zu randomized cases, %zu violations, golden unfolding %s",
                cases, bad, golden ? "exact" : "WRONG");
  gate.report("kernel invariants hold across randomized terms",
              cases >= 10000 && bad == 0 && golden, secs, detail);
}

// --- criterion 8: THF emission -----------------------------------------------

void run_thf_emission(Gate& gate) {
  auto t0 = std::chrono::steady_clock::now();
  size_t ok = 0, total = 0;
  for (const auto& e : corpus::corpus_list()) {
    for (auto mode : {thf::EmitMode::Defined, thf::EmitMode::Unfolded}) {
      ++total;
      try {
        // to_thf_document lints before returning; a violation throws.
        std::string a = thf::to_thf_document(corpus::build(e.id),
                                             thf::EmitOptions{mode})
                            .render();
        std::string b = thf::to_thf_document(corpus::build(e.id),
                                             thf::EmitOptions{mode})
                            .render();
        if (!a.empty() && a == b) ++ok;
      } catch (const Error&) {
      }
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "%zu/%zu renders lint-clean and stable",
                ok, total);
  gate.report("every entry emits deterministic, lint-clean THF in both modes",
              ok == total && total == 92, seconds_since(t0), detail);
}

// --- criterion 9: optional external prover -----------------------------------

void run_prover_reproduction(Gate& gate) {
  std::optional<thf::ProverConfig> cfg = thf::ProverConfig::from_env();
  if (!cfg) {
    gate.skip("external prover reproduces the corpus statuses",
              "HOLEMBED_PROVER not set");
    return;
  }
  auto t0 = std::chrono::steady_clock::now();
  size_t agreed = 0, undecided = 0, contradictions = 0, total = 0;
  for (const auto& e : corpus::corpus_list()) {
    ++total;
    thf::ProverResult res;
    try {
      res = thf::run_prover(*cfg, thf::to_thf_document(corpus::build(e.id)),
                            "holembed-acceptance-runs");
    } catch (const Error&) {
      ++undecided;
      continue;
    }
    using K = thf::SzsStatus::Kind;
    bool finite_refuted = e.expected == logics::Expectation::CounterSatisfiable;
    if (res.status.kind == K::Theorem && finite_refuted) {
      ++contradictions;
      std::printf("  prover claims Theorem on finitely refuted %s\n",
                  e.id.c_str());
    } else if (res.status.kind == K::Theorem ||
               res.status.kind == K::CounterSatisfiable ||
               res.status.kind == K::Satisfiable) {
      ++agreed;
    } else {
      ++undecided;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%zu/%zu decided in agreement, %zu undecided, %zu contradictions",
                agreed, total, undecided, contradictions);
  gate.report("external prover never contradicts a finite refutation",
              contradictions == 0, seconds_since(t0), detail);
}

} // namespace

int main() {
  Gate gate;
  run_direct_vs_compiled(gate);
  run_correspondences(gate);
  run_system_rows(gate);
  run_quantifier_exchange(gate);
  run_puzzles(gate);
  run_intuitionistic(gate);
  run_kernel_properties(gate);
  run_thf_emission(gate);
  run_prover_reproduction(gate);
  std::printf("%s: %d of %d criteria failed\n",
              gate.failures == 0 ? "ALL CLEAR" : "GATE FAILED", gate.failures,
              gate.index);
  return gate.failures;
}
