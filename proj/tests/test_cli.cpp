// End-to-end tests of the command-line driver: spawn the installed binary,
// parse its JSON-lines output, and verify exit codes and produced files.
#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out; // stdout only; stderr is the human-readable channel
};

// Runs the driver in `cwd` with a scrubbed prover environment unless the
// caller supplies its own `env` assignments.
CliResult run_cli(const std::string& args, const fs::path& cwd,
                  const std::string& env = "env -u HOLEMBED_PROVER") {
  std::string cmd = "cd '" + cwd.string() + "' && " + env + " '" +
                    HOLEMBED_CLI_PATH + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::vector<json> json_lines(const std::string& out) {
  std::vector<json> recs;
  size_t start = 0;
  while (start < out.size()) {
    size_t end = out.find('\n', start);
    if (end == std::string::npos) end = out.size();
    std::string line = out.substr(start, end - start);
    if (!line.empty()) recs.push_back(json::parse(line));
    start = end + 1;
  }
  return recs;
}

// Scratch directory per test case, removed on destruction.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& tag) {
    dir = fs::temp_directory_path() /
          ("holembed-cli-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  REQUIRE(f.good());
  f << text;
}

// A stand-in prover: a script that ignores its argument and prints a fixed
// status line.
fs::path fake_prover(const fs::path& dir, const std::string& name,
                     const std::string& status_line) {
  fs::path p = dir / name;
  write_file(p, "#!/bin/sh\necho '" + status_line + "'\n");
  fs::permissions(p, fs::perms::owner_all);
  return p;
}

const std::string kSampleLgp =
    "logic qml\n"
    "index r\n"
    "pred ws/1\n"
    "const alice:i\n"
    "axiom [r] ws(alice)\n"
    "conjecture <r> ws(alice)\n"
    "expect countersatisfiable\n";

} // namespace

TEST_CASE("the corpus listing is machine-readable", "[cli]") {
  Scratch t("list");
  CliResult r = run_cli("corpus list", t.dir);
  REQUIRE(r.exit_code == 0);
  std::vector<json> recs = json_lines(r.out);
  REQUIRE(recs.size() == 46);

  size_t with_tptp = 0;
  std::set<std::string> ids;
  for (const json& rec : recs) {
    ids.insert(rec.at("id").get<std::string>());
    CHECK(rec.contains("expected"));
    CHECK(rec.contains("bounds"));
    CHECK(rec.contains("summary"));
    if (rec.contains("tptp")) ++with_tptp;
  }
  CHECK(ids.size() == 46);
  CHECK(with_tptp == 22);
  CHECK(recs.front().at("id") == "corr-reflexive-fwd");
}

TEST_CASE("finite checking reports verdicts against expectations", "[cli]") {
  Scratch t("check");

  CliResult ok = run_cli("check corpus:corr-reflexive-fwd", t.dir);
  REQUIRE(ok.exit_code == 0);
  json rec = json_lines(ok.out).at(0);
  CHECK(rec.at("verdict") == "no-countermodel");
  CHECK(rec.at("complete") == true);
  CHECK(rec.at("consistent") == true);
  CHECK(rec.at("expected") == "theorem");
  CHECK(rec.at("witness").is_null());

  CliResult refuted = run_cli("check corpus:d45-implies-m5 --max-worlds 2", t.dir);
  REQUIRE(refuted.exit_code == 0);
  rec = json_lines(refuted.out).at(0);
  CHECK(rec.at("verdict") == "refuted");
  CHECK(rec.at("consistent") == true);
  json witness = rec.at("witness");
  CHECK(witness.at("carriers").at("w").get<int>() <= 2);
  CHECK(witness.contains("world"));
  CHECK(witness.at("constants").contains("r"));
  CHECK(rec.at("bounds").at("w") == 2);

  // A starved run cannot certify a theorem: inconsistent, exit 1.
  CliResult starved = run_cli("check corpus:corr-reflexive-fwd --budget 50", t.dir);
  CHECK(starved.exit_code == 1);
  rec = json_lines(starved.out).at(0);
  CHECK(rec.at("complete") == false);
  CHECK(rec.at("consistent") == false);
  CHECK(rec.contains("warning"));

  CHECK(run_cli("check corpus:no-such-entry", t.dir).exit_code == 2);
  CHECK(run_cli("check corpus:corr-reflexive-fwd --max-worlds 0", t.dir).exit_code == 2);
  CHECK(run_cli("check", t.dir).exit_code == 2);
  CHECK(run_cli("check missing.lgp", t.dir).exit_code == 2);
}

TEST_CASE("problem files embed to THF from the command line", "[cli]") {
  Scratch t("embed");
  write_file(t.dir / "sample.lgp", kSampleLgp);

  CliResult r = run_cli("embed sample.lgp", t.dir);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("% Problem  : sample", 0) == 0);
  CHECK(r.out.find("thf(conj, conjecture,") != std::string::npos);
  CHECK(r.out.find("thf(valid_def, definition,") != std::string::npos);

  // Two runs, byte-identical output.
  CHECK(run_cli("embed sample.lgp", t.dir).out == r.out);

  CliResult to_file = run_cli("embed sample.lgp --out sample.p", t.dir);
  REQUIRE(to_file.exit_code == 0);
  json rec = json_lines(to_file.out).at(0);
  CHECK(rec.at("problem") == "sample");
  CHECK(rec.at("mode") == "defined");
  CHECK(rec.at("axioms") == 1);
  CHECK(rec.at("conjecture_type") == "o");
  std::ifstream f(t.dir / "sample.p");
  std::string written((std::istreambuf_iterator<char>(f)), {});
  CHECK(written == r.out);

  CliResult unfolded = run_cli("embed sample.lgp --mode unfolded", t.dir);
  REQUIRE(unfolded.exit_code == 0);
  CHECK(unfolded.out.find("valid") == std::string::npos);

  CHECK(run_cli("embed sample.lgp --logic ipl", t.dir).exit_code == 2);
  CHECK(run_cli("embed missing.lgp", t.dir).exit_code == 2);
  write_file(t.dir / "broken.lgp", "logic qml\nconjecture ws(\nexpect theorem\n");
  CHECK(run_cli("embed broken.lgp", t.dir).exit_code == 2);
}

TEST_CASE("the corpus exports problem and THF files", "[cli]") {
  Scratch t("export");
  CliResult r = run_cli("corpus export out", t.dir);
  REQUIRE(r.exit_code == 0);
  CHECK(json_lines(r.out).size() == 46);

  size_t lgp = 0, thf_total = 0, schema = 0;
  for (const auto& e : fs::directory_iterator(t.dir / "out")) {
    std::string name = e.path().filename().string();
    if (name.size() > 4 && name.substr(name.size() - 4) == ".lgp") ++lgp;
    if (name.size() > 2 && name.substr(name.size() - 2) == ".p") ++thf_total;
    if (name.size() > 9 && name.substr(name.size() - 9) == ".schema.p") ++schema;
  }
  CHECK(lgp == 46);
  CHECK(schema == 11);
  CHECK(thf_total == 46 + 11);

  // Exported problem files are themselves valid inputs.
  CliResult back = run_cli("check out/ipl-3.lgp", t.dir);
  REQUIRE(back.exit_code == 0);
  json rec = json_lines(back.out).at(0);
  CHECK(rec.at("verdict") == "refuted");
  CHECK(rec.at("expected") == "countersatisfiable");
}

TEST_CASE("the corpus re-checks every entry in one sweep", "[cli]") {
  Scratch t("run");
  CliResult r = run_cli("corpus run", t.dir);
  REQUIRE(r.exit_code == 0);
  std::vector<json> recs = json_lines(r.out);
  REQUIRE(recs.size() == 46);
  size_t refuted = 0;
  for (const json& rec : recs) {
    CHECK(rec.at("consistent") == true);
    if (rec.at("verdict") == "refuted") {
      ++refuted;
      CHECK(fs::exists(t.dir / rec.at("witness_path").get<std::string>()));
    }
  }
  CHECK(refuted == 5);
}

TEST_CASE("prover integration propagates statuses into exit codes", "[cli]") {
  Scratch t("prove");
  fs::path thm = fake_prover(t.dir, "theorem.sh", "% SZS status Theorem");
  fs::path csa = fake_prover(t.dir, "csa.sh", "% SZS status CounterSatisfiable");
  fs::path mum = fake_prover(t.dir, "silent.sh", "thinking...");
  auto with = [](const fs::path& p) { return "--prover '" + p.string() + " {file}'"; };

  // No prover anywhere: an environment error, not a crash.
  CHECK(run_cli("prove corpus:corr-reflexive-fwd", t.dir).exit_code == 3);

  CliResult ok = run_cli("prove corpus:corr-reflexive-fwd " + with(thm), t.dir);
  REQUIRE(ok.exit_code == 0);
  json rec = json_lines(ok.out).at(0);
  CHECK(rec.at("szs") == "Theorem");
  CHECK(rec.at("consistent") == true);
  CHECK(fs::exists(t.dir / rec.at("problem_file").get<std::string>()));

  // A counter-satisfiable verdict on a holding entry contradicts it.
  CHECK(run_cli("prove corpus:corr-reflexive-fwd " + with(csa), t.dir).exit_code == 1);
  // ... but matches the refutable entry.
  CHECK(run_cli("prove corpus:d45-implies-m5 " + with(csa), t.dir).exit_code == 0);

  // Undecided output neither confirms nor contradicts.
  CliResult undecided = run_cli("prove corpus:corr-reflexive-fwd " + with(mum), t.dir);
  CHECK(undecided.exit_code == 0);
  CHECK(json_lines(undecided.out).at(0).at("szs").get<std::string>().rfind("Error", 0) == 0);

  // Unrunnable command: environment error.
  CHECK(run_cli("prove corpus:corr-reflexive-fwd --prover '/no/such/bin {file}'", t.dir)
            .exit_code == 3);

  // The environment variable is the fallback configuration channel.
  CliResult via_env = run_cli(
      "prove corpus:corr-reflexive-fwd", t.dir,
      "env HOLEMBED_PROVER='" + thm.string() + " {file}'");
  CHECK(via_env.exit_code == 0);

  // A prover claiming Theorem on a finitely refuted entry is flagged.
  CliResult cross = run_cli("corpus run " + with(thm), t.dir);
  CHECK(cross.exit_code == 1);
  bool saw_contradiction = false;
  for (const json& line : json_lines(cross.out))
    if (line.at("verdict") == "refuted" && line.at("szs") == "Theorem") {
      CHECK(line.at("consistent") == false);
      saw_contradiction = true;
    }
  CHECK(saw_contradiction);
}

TEST_CASE("configuration files set defaults and flags override them", "[cli]") {
  Scratch t("config");
  write_file(t.dir / "bounds.cfg", "# search size\nmax_worlds = 1\n");

  CliResult cfg = run_cli("check corpus:corr-reflexive-fwd --config bounds.cfg", t.dir);
  REQUIRE(cfg.exit_code == 0);
  CHECK(json_lines(cfg.out).at(0).at("bounds").at("w") == 1);

  CliResult flag =
      run_cli("check corpus:corr-reflexive-fwd --config bounds.cfg --max-worlds 2", t.dir);
  REQUIRE(flag.exit_code == 0);
  CHECK(json_lines(flag.out).at(0).at("bounds").at("w") == 2);

  // holembed.cfg in the working directory loads automatically.
  write_file(t.dir / "holembed.cfg", "max_worlds = 1\n");
  CliResult autoload = run_cli("check corpus:corr-reflexive-fwd", t.dir);
  REQUIRE(autoload.exit_code == 0);
  CHECK(json_lines(autoload.out).at(0).at("bounds").at("w") == 1);
  fs::remove(t.dir / "holembed.cfg");

  write_file(t.dir / "bad.cfg", "mystery = 3\n");
  CHECK(run_cli("check corpus:corr-reflexive-fwd --config bad.cfg", t.dir).exit_code == 2);
  write_file(t.dir / "broken.cfg", "max_worlds\n");
  CHECK(run_cli("check corpus:corr-reflexive-fwd --config broken.cfg", t.dir).exit_code == 2);

  // The config file can also name the prover; an explicit flag wins.
  fs::path thm = fake_prover(t.dir, "theorem.sh", "% SZS status Theorem");
  fs::path csa = fake_prover(t.dir, "csa.sh", "% SZS status CounterSatisfiable");
  write_file(t.dir / "prover.cfg", "prover = " + thm.string() + " {file}\n");
  CHECK(run_cli("prove corpus:corr-reflexive-fwd --config prover.cfg", t.dir).exit_code == 0);
  CHECK(run_cli("prove corpus:corr-reflexive-fwd --config prover.cfg --prover '" +
                    csa.string() + " {file}'",
                t.dir)
            .exit_code == 1);
}
