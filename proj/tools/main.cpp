// holembed: parse modal/intuitionistic/spatial problems, embed them into
// simple type theory, check them against finite models, and emit THF for
// external higher-order provers.
//
// Exit codes: 0 all expectations met, 1 a check or prover result contradicts
// an expectation, 2 usage or input-parse error, 3 environment error (prover
// missing or unrunnable).

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "holembed/corpus/corpus.hpp"
#include "holembed/embed/from_source.hpp"
#include "holembed/logics/problem_source.hpp"
#include "holembed/semantics/search.hpp"
#include "holembed/stt/typecheck.hpp"
#include "holembed/thf/emit.hpp"
#include "holembed/thf/prover.hpp"

using nlohmann::json;
using namespace holembed;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEnvironment = 3;

// ---------------------------------------------------------------------------
// configuration: flags > config file > environment > built-in defaults

struct Settings {
  std::optional<std::string> prover;
  std::optional<unsigned> timeout;
  std::optional<size_t> max_worlds, max_individuals, max_regions;
  std::optional<unsigned> jobs;
};

// `key = value` lines, '#' comments. Unknown keys are rejected so typos in a
// CI config fail loudly.
Settings load_config(const std::string& path) {
  Settings s;
  std::ifstream f(path);
  if (!f) throw Error("cannot read config file '" + path + "'");
  std::string line;
  size_t ln = 0;
  auto trim = [](std::string t) {
    size_t a = t.find_first_not_of(" \t");
    size_t b = t.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
  };
  while (std::getline(f, line)) {
    ++ln;
    std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(path + ":" + std::to_string(ln) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    auto num = [&](const char* what) -> unsigned long {
      try {
        size_t used = 0;
        unsigned long v = std::stoul(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
        return v;
      } catch (const std::exception&) {
        throw Error(path + ":" + std::to_string(ln) + ": " + what + " wants a number, got '" +
                    val + "'");
      }
    };
    if (key == "prover") s.prover = val;
    else if (key == "timeout") s.timeout = static_cast<unsigned>(num("timeout"));
    else if (key == "max_worlds") s.max_worlds = num("max_worlds");
    else if (key == "max_individuals") s.max_individuals = num("max_individuals");
    else if (key == "max_regions") s.max_regions = num("max_regions");
    else if (key == "jobs") s.jobs = static_cast<unsigned>(num("jobs"));
    else throw Error(path + ":" + std::to_string(ln) + ": unknown key '" + key + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------
// shared helpers

// `corpus:ID` names a built-in entry; anything else is a .lgp path.
bool is_corpus_ref(const std::string& target) { return target.rfind("corpus:", 0) == 0; }

embed::Problem load_problem(const std::string& target) {
  if (is_corpus_ref(target)) return corpus::build(target.substr(7));
  logics::ProblemSource src = logics::read_lgp_file(target);
  return embed::compile_source(src);
}

std::string expectation_str(logics::Expectation e) { return logics::expectation_name(e); }

json bounds_json(const semantics::SearchBounds& b) {
  json j = json::object();
  for (const auto& [base, n] : b.max_size) j[base] = n;
  j["default"] = b.default_max;
  return j;
}

json witness_json(const semantics::BoundedVerdict& v) {
  if (!v.refuted()) return nullptr;
  json j;
  json carriers = json::object();
  for (const auto& [base, n] : v.model.carriers) carriers[base] = n;
  j["carriers"] = carriers;
  json consts = json::object();
  for (const auto& c : v.model.consts)
    consts[c.name] = semantics::show_value(c.val, c.ty, v.model);
  j["constants"] = consts;
  if (v.witness_world) j["world"] = *v.witness_world;
  return j;
}

struct CheckOutcome {
  semantics::BoundedVerdict verdict;
  double elapsed = 0.0;
};

CheckOutcome run_check(const embed::Problem& P, const semantics::SearchBounds& bounds,
                       unsigned jobs) {
  auto t0 = std::chrono::steady_clock::now();
  CheckOutcome out{semantics::countermodel_search(P, bounds, jobs), 0.0};
  out.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// A verdict is consistent with the expectation unless it positively
// contradicts it; an exhausted bound with no countermodel never contradicts
// `countersatisfiable` at larger sizes, but for corpus entries the bound was
// chosen to settle the status, so both directions are enforced.
bool verdict_matches(logics::Expectation e, const semantics::BoundedVerdict& v) {
  switch (e) {
    case logics::Expectation::Theorem: return !v.refuted() && v.complete;
    case logics::Expectation::CounterSatisfiable: return v.refuted();
    case logics::Expectation::Unknown: return true;
  }
  return true;
}

std::optional<thf::ProverConfig> resolve_prover(const Settings& cfg,
                                                const std::string& flag_prover,
                                                unsigned flag_timeout, bool timeout_set) {
  std::optional<thf::ProverConfig> pc;
  if (!flag_prover.empty()) {
    pc.emplace();
    pc->command = flag_prover;
  } else if (cfg.prover) {
    pc.emplace();
    pc->command = *cfg.prover;
  } else {
    pc = thf::ProverConfig::from_env();
  }
  if (pc) {
    if (timeout_set) pc->time_limit = flag_timeout;
    else if (cfg.timeout) pc->time_limit = *cfg.timeout;
  }
  return pc;
}

void apply_bound_overrides(semantics::SearchBounds& b, const Settings& cfg,
                           const std::optional<size_t>& w, const std::optional<size_t>& i,
                           const std::optional<size_t>& r) {
  if (cfg.max_worlds) b.max_size["w"] = *cfg.max_worlds;
  if (cfg.max_individuals) b.max_size["i"] = *cfg.max_individuals;
  if (cfg.max_regions) b.max_size["region"] = *cfg.max_regions;
  if (w) b.max_size["w"] = *w;
  if (i) b.max_size["i"] = *i;
  if (r) b.max_size["region"] = *r;
}

// Prover statuses that positively decide a problem.
bool prover_decided(const thf::SzsStatus& s) {
  using K = thf::SzsStatus::Kind;
  return s.kind == K::Theorem || s.kind == K::CounterSatisfiable || s.kind == K::Satisfiable ||
         s.kind == K::Unsatisfiable;
}

bool prover_matches(logics::Expectation e, const thf::SzsStatus& s) {
  using K = thf::SzsStatus::Kind;
  if (!prover_decided(s)) return true; // timeout/gave-up/error decide nothing
  switch (e) {
    case logics::Expectation::Theorem: return s.kind == K::Theorem;
    case logics::Expectation::CounterSatisfiable:
      return s.kind == K::CounterSatisfiable || s.kind == K::Satisfiable;
    case logics::Expectation::Unknown: return true;
  }
  return true;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"shallow embedding of quantified modal logics into simple type theory"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");

  // --- embed ---------------------------------------------------------------
  auto* c_embed = app.add_subcommand("embed", "compile a .lgp file and write THF");
  std::string embed_file, embed_logic, embed_mode = "defined", embed_out;
  bool embed_swap = false, embed_axiom_defs = false;
  c_embed->add_option("file", embed_file, "problem source (.lgp)")->required();
  c_embed->add_option("--logic", embed_logic, "override the file's logic line")
      ->check(CLI::IsMember({"qml", "ipl", "fo-rcc", "stt"}));
  c_embed->add_option("--mode", embed_mode, "keep definitions or unfold them")
      ->check(CLI::IsMember({"defined", "unfolded"}));
  c_embed->add_option("--out", embed_out, "output path (default: stdout)");
  c_embed->add_flag("--swap-types", embed_swap,
                    "render individuals as $i and worlds as a declared type");
  c_embed->add_flag("--axiom-defs", embed_axiom_defs,
                    "emit definitions under role axiom for strict provers");

  // --- check ---------------------------------------------------------------
  auto* c_check = app.add_subcommand("check", "search for finite countermodels");
  std::string check_target;
  std::optional<size_t> check_w, check_i, check_r;
  std::optional<uint64_t> check_budget;
  unsigned check_jobs = 1;
  c_check->add_option("target", check_target, ".lgp path or corpus:ID")->required();
  c_check->add_option("--max-worlds", check_w, "world carrier bound")->check(CLI::Range(size_t{1}, size_t{62}));
  c_check->add_option("--max-individuals,--max-ind", check_i, "individual carrier bound")
      ->check(CLI::Range(size_t{1}, size_t{62}));
  c_check->add_option("--max-regions", check_r, "region carrier bound")
      ->check(CLI::Range(size_t{1}, size_t{62}));
  c_check->add_option("--budget", check_budget, "evaluation step budget");
  c_check->add_option("--jobs", check_jobs, "worker threads inside the search")
      ->check(CLI::PositiveNumber);

  // --- corpus ----------------------------------------------------------------
  auto* c_corpus = app.add_subcommand("corpus", "operate on the built-in problem corpus");
  c_corpus->require_subcommand(1);
  auto* c_list = c_corpus->add_subcommand("list", "print every entry with its expected status");
  auto* c_export = c_corpus->add_subcommand("export", "write .lgp and .p files for every entry");
  std::string export_dir;
  std::string export_mode = "defined";
  c_export->add_option("dir", export_dir, "output directory")->required();
  c_export->add_option("--mode", export_mode, "THF emission mode")
      ->check(CLI::IsMember({"defined", "unfolded"}));
  auto* c_run = c_corpus->add_subcommand("run", "finite-check every entry, optionally prove");
  std::string run_prover_cmd, run_dir = "holembed-runs";
  unsigned run_timeout = 30, run_jobs = 1;
  c_run->add_option("--prover", run_prover_cmd,
                    "command template with {file} and optional {timeout}");
  c_run->add_option("--timeout", run_timeout, "prover time limit, seconds")
      ->check(CLI::PositiveNumber);
  c_run->add_option("--run-dir", run_dir, "directory for problem/output/witness files");
  c_run->add_option("--jobs", run_jobs, "worker threads inside each search")
      ->check(CLI::PositiveNumber);

  // --- prove -----------------------------------------------------------------
  auto* c_prove = app.add_subcommand("prove", "emit one problem and run the external prover");
  std::string prove_target, prove_prover_cmd, prove_mode = "defined", prove_dir = "holembed-runs";
  unsigned prove_timeout = 30;
  c_prove->add_option("target", prove_target, ".lgp path or corpus:ID")->required();
  c_prove->add_option("--prover", prove_prover_cmd,
                      "command template with {file} and optional {timeout}");
  c_prove->add_option("--timeout", prove_timeout, "prover time limit, seconds")
      ->check(CLI::PositiveNumber);
  c_prove->add_option("--mode", prove_mode, "THF emission mode")
      ->check(CLI::IsMember({"defined", "unfolded"}));
  c_prove->add_option("--run-dir", prove_dir, "directory for problem/output files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    Settings cfg;
    if (!config_path.empty())
      cfg = load_config(config_path);
    else if (std::filesystem::exists("holembed.cfg"))
      cfg = load_config("holembed.cfg");

    // ----- embed -----
    if (c_embed->parsed()) {
      logics::ProblemSource src = logics::read_lgp_file(embed_file);
      if (!embed_logic.empty() && embed_logic != logics::source_logic_name(src.logic)) {
        std::cerr << "error: '" << embed_file << "' declares logic "
                  << logics::source_logic_name(src.logic) << ", but --logic says " << embed_logic
                  << "\n";
        return kExitUsage;
      }
      embed::Problem P = embed::compile_source(src);
      stt::TypePtr cty = stt::type_of(P.conjecture, P.sig);
      thf::EmitOptions opt;
      opt.mode = embed_mode == "unfolded" ? thf::EmitMode::Unfolded : thf::EmitMode::Defined;
      opt.world_as_dollar_i = !embed_swap;
      opt.definition_role = !embed_axiom_defs;
      std::string text = thf::to_thf_document(P, opt).render();
      if (embed_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(embed_out);
        if (!f) throw Error("cannot write '" + embed_out + "'");
        f << text;
        json rec{{"file", embed_file},
                 {"problem", P.name},
                 {"mode", embed_mode},
                 {"out", embed_out},
                 {"axioms", P.axioms.size()},
                 {"conjecture_type", stt::show_type(cty)}};
        std::cout << rec.dump() << "\n";
      }
      std::cerr << "conjecture : " << stt::show_type(cty) << "\n";
      return kExitOk;
    }

    // ----- check -----
    if (c_check->parsed()) {
      embed::Problem P = load_problem(check_target);
      semantics::SearchBounds bounds;
      logics::Expectation expected = P.expected;
      if (is_corpus_ref(check_target))
        bounds = corpus::find_entry(check_target.substr(7)).bounds;
      apply_bound_overrides(bounds, cfg, check_w, check_i, check_r);
      if (check_budget) bounds.budget = *check_budget;
      unsigned jobs = check_jobs > 1 ? check_jobs : cfg.jobs.value_or(1);
      CheckOutcome out = run_check(P, bounds, jobs);
      bool consistent = verdict_matches(expected, out.verdict);
      json rec{{"id", P.name},
               {"verdict", out.verdict.refuted() ? "refuted" : "no-countermodel"},
               {"complete", out.verdict.complete},
               {"bounds", bounds_json(bounds)},
               {"elapsed_s", out.elapsed},
               {"expected", expectation_str(expected)},
               {"consistent", consistent},
               {"witness", witness_json(out.verdict)}};
      if (!out.verdict.warning.empty()) rec["warning"] = out.verdict.warning;
      std::cout << rec.dump() << "\n";
      std::cerr << P.name << ": "
                << (out.verdict.refuted()
                        ? "countermodel found"
                        : (out.verdict.complete ? "no countermodel up to bound"
                                                : "no countermodel (budget exhausted)"))
                << " in " << out.elapsed << "s\n";
      if (out.verdict.refuted())
        std::cerr << semantics::show_model(out.verdict.model) << "\n";
      return consistent ? kExitOk : kExitMismatch;
    }

    // ----- corpus list -----
    if (c_list->parsed()) {
      for (const corpus::CorpusEntry& e : corpus::corpus_list()) {
        json rec{{"id", e.id},
                 {"expected", expectation_str(e.expected)},
                 {"bounds", bounds_json(e.bounds)},
                 {"summary", e.summary}};
        if (!e.tptp.empty()) rec["tptp"] = e.tptp;
        std::cout << rec.dump() << "\n";
      }
      std::cerr << corpus::corpus_list().size() << " entries\n";
      return kExitOk;
    }

    // ----- corpus export -----
    if (c_export->parsed()) {
      std::filesystem::create_directories(export_dir);
      thf::EmitOptions opt;
      opt.mode = export_mode == "unfolded" ? thf::EmitMode::Unfolded : thf::EmitMode::Defined;
      size_t files = 0;
      for (const corpus::CorpusEntry& e : corpus::corpus_list()) {
        logics::ProblemSource src = corpus::build_source(e.id);
        std::filesystem::path lgp = std::filesystem::path(export_dir) / (e.id + ".lgp");
        {
          std::ofstream f(lgp);
          if (!f) throw Error("cannot write '" + lgp.string() + "'");
          f << logics::write_lgp(src);
        }
        embed::Problem P = corpus::build(e.id);
        std::filesystem::path thf_path = std::filesystem::path(export_dir) / (e.id + ".p");
        {
          std::ofstream f(thf_path);
          if (!f) throw Error("cannot write '" + thf_path.string() + "'");
          f << thf::to_thf_document(P, opt).render();
        }
        files += 2;
        if (std::optional<embed::Problem> S = corpus::build_schema_variant(e.id)) {
          std::filesystem::path sp = std::filesystem::path(export_dir) / (e.id + ".schema.p");
          std::ofstream f(sp);
          if (!f) throw Error("cannot write '" + sp.string() + "'");
          f << thf::to_thf_document(*S, opt).render();
          ++files;
        }
        json rec{{"id", e.id}, {"lgp", lgp.string()}, {"thf", thf_path.string()}};
        std::cout << rec.dump() << "\n";
      }
      std::cerr << "wrote " << files << " files to " << export_dir << "\n";
      return kExitOk;
    }

    // ----- corpus run -----
    if (c_run->parsed()) {
      std::optional<thf::ProverConfig> prover =
          resolve_prover(cfg, run_prover_cmd, run_timeout, c_run->count("--timeout") > 0);
      unsigned jobs = run_jobs > 1 ? run_jobs : cfg.jobs.value_or(1);
      size_t total = 0, consistent_n = 0, refuted_n = 0, proved_n = 0;
      bool all_consistent = true;
      for (const corpus::CorpusEntry& e : corpus::corpus_list()) {
        embed::Problem P = corpus::build(e.id);
        semantics::SearchBounds bounds = e.bounds;
        apply_bound_overrides(bounds, cfg, std::nullopt, std::nullopt, std::nullopt);
        CheckOutcome out = run_check(P, bounds, jobs);
        bool consistent = verdict_matches(e.expected, out.verdict);
        json rec{{"id", e.id},
                 {"expected", expectation_str(e.expected)},
                 {"verdict", out.verdict.refuted() ? "refuted" : "no-countermodel"},
                 {"complete", out.verdict.complete},
                 {"bounds", bounds_json(bounds)},
                 {"elapsed_s", out.elapsed}};
        if (out.verdict.refuted()) {
          ++refuted_n;
          std::filesystem::create_directories(run_dir);
          std::filesystem::path wpath =
              std::filesystem::path(run_dir) / (e.id + ".witness.txt");
          std::ofstream wf(wpath);
          wf << semantics::show_model(out.verdict.model);
          if (out.verdict.witness_world)
            wf << "conjecture fails at world " << *out.verdict.witness_world << "\n";
          rec["witness_path"] = wpath.string();
          rec["witness"] = witness_json(out.verdict);
        }
        if (prover) {
          thf::ThfDocument doc = thf::to_thf_document(P);
          thf::ProverResult pr = thf::run_prover(*prover, doc, run_dir);
          rec["szs"] = thf::show_szs(pr.status);
          rec["prover_s"] = pr.wall_seconds;
          rec["problem_file"] = pr.problem_file.string();
          if (prover_decided(pr.status)) ++proved_n;
          if (!prover_matches(e.expected, pr.status)) consistent = false;
          // A prover Theorem on a finitely refuted entry (or vice versa)
          // means one of the two pipelines is wrong.
          if (out.verdict.refuted() && pr.status.kind == thf::SzsStatus::Kind::Theorem)
            consistent = false;
        }
        rec["consistent"] = consistent;
        all_consistent = all_consistent && consistent;
        ++total;
        consistent_n += consistent ? 1 : 0;
        std::cout << rec.dump() << "\n";
      }
      std::cerr << total << " entries, " << consistent_n << " consistent, " << refuted_n
                << " refuted";
      if (prover) std::cerr << ", " << proved_n << " decided by prover";
      std::cerr << "\n";
      return all_consistent ? kExitOk : kExitMismatch;
    }

    // ----- prove -----
    if (c_prove->parsed()) {
      std::optional<thf::ProverConfig> prover =
          resolve_prover(cfg, prove_prover_cmd, prove_timeout, c_prove->count("--timeout") > 0);
      if (!prover) {
        std::cerr << "no prover configured: pass --prover, set HOLEMBED_PROVER, or add "
                     "`prover = ...` to the config file\n";
        return kExitEnvironment;
      }
      embed::Problem P = load_problem(prove_target);
      thf::EmitOptions opt;
      opt.mode = prove_mode == "unfolded" ? thf::EmitMode::Unfolded : thf::EmitMode::Defined;
      thf::ThfDocument doc = thf::to_thf_document(P, opt);
      thf::ProverResult pr = thf::run_prover(*prover, doc, prove_dir);
      bool consistent = prover_matches(P.expected, pr.status);
      json rec{{"id", P.name},
               {"szs", thf::show_szs(pr.status)},
               {"expected", expectation_str(P.expected)},
               {"consistent", consistent},
               {"elapsed_s", pr.wall_seconds},
               {"problem_file", pr.problem_file.string()},
               {"output_file", pr.output_file.string()}};
      std::cout << rec.dump() << "\n";
      std::cerr << P.name << ": " << thf::show_szs(pr.status) << " in " << pr.wall_seconds
                << "s (expected " << expectation_str(P.expected) << ")\n";
      return consistent ? kExitOk : kExitMismatch;
    }
  } catch (const thf::SpawnError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const logics::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const corpus::UnknownId& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
