#pragma once

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "holembed/stt/error.hpp"
#include "holembed/thf/document.hpp"
#include "holembed/thf/szs.hpp"

namespace holembed::thf {

// The command never started (not found, not executable, fork failure) —
// distinct from a prover that ran and failed, whose output still gets an SZS
// reading.
struct SpawnError : Error {
  explicit SpawnError(const std::string& msg) : Error("prover spawn: " + msg) {}
};

// External command template. `{file}` is replaced by the problem path and
// `{timeout}` by the time limit in seconds; the command runs under /bin/sh.
struct ProverConfig {
  std::string command;
  unsigned time_limit = 30;
  std::string name = "prover";
  bool cleanup = false; // delete the problem/output files after the run

  // Default configuration from HOLEMBED_PROVER, if set and non-empty.
  static std::optional<ProverConfig> from_env() {
    const char* v = std::getenv("HOLEMBED_PROVER");
    if (!v || !*v) return std::nullopt;
    ProverConfig cfg;
    cfg.command = v;
    return cfg;
  }
};

struct ProverResult {
  SzsStatus status;
  double wall_seconds = 0.0;
  std::string raw_output;
  std::filesystem::path problem_file;
  std::filesystem::path output_file;
  bool timed_out = false;
};

namespace detail {

inline std::string substitute(std::string tmpl, const std::string& key, const std::string& val) {
  for (size_t at = tmpl.find(key); at != std::string::npos; at = tmpl.find(key, at + val.size()))
    tmpl.replace(at, key.size(), val);
  return tmpl;
}

inline std::string safe_file_stem(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out.empty() ? "problem" : out;
}

} // namespace detail

// Writes the document to `<run_dir>/<name>.p`, runs the command on it with a
// hard kill past the time limit, and reads the SZS verdict from the combined
// output (also saved next to the problem for post-mortem). Exit codes are
// ignored except 126/127, the shell's cannot-run markers, which raise
// SpawnError.
inline ProverResult run_prover(const ProverConfig& cfg, const ThfDocument& doc,
                               const std::filesystem::path& run_dir = "holembed-runs") {
  if (cfg.command.find("{file}") == std::string::npos)
    throw Error("prover command template must contain {file}");

  std::filesystem::create_directories(run_dir);
  ProverResult res;
  res.problem_file = run_dir / (detail::safe_file_stem(doc.name) + ".p");
  res.output_file = run_dir / (detail::safe_file_stem(doc.name) + ".out");
  {
    std::ofstream f(res.problem_file);
    if (!f) throw Error("cannot write " + res.problem_file.string());
    f << doc.render();
  }

  std::string cmd = detail::substitute(cfg.command, "{file}",
                                       "'" + res.problem_file.string() + "'");
  cmd = detail::substitute(cmd, "{timeout}", std::to_string(cfg.time_limit));

  int fds[2];
  if (pipe(fds) != 0) throw SpawnError("pipe failed");
  auto t0 = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw SpawnError("fork failed");
  }
  if (pid == 0) {
    setpgid(0, 0); // own process group so a timeout kill reaps grandchildren
    dup2(fds[1], 1);
    dup2(fds[1], 2);
    close(fds[0]);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(fds[1]);

  // Drain the pipe while watching the clock; SIGKILL the group on overrun.
  std::string output;
  bool killed = false;
  const auto deadline = t0 + std::chrono::seconds(cfg.time_limit + 1);
  char buf[4096];
  bool eof = false;
  while (!eof) {
    if (!killed && std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      killed = true;
    }
    struct pollfd p{fds[0], POLLIN, 0};
    int pr = poll(&p, 1, 50);
    if (pr > 0) {
      ssize_t n = read(fds[0], buf, sizeof buf);
      if (n > 0)
        output.append(buf, static_cast<size_t>(n));
      else
        eof = true; // n == 0 at EOF; < 0 only on a broken pipe
    }
  }
  close(fds[0]);
  int wstatus = 0;
  waitpid(pid, &wstatus, 0);
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.raw_output = output;
  {
    std::ofstream f(res.output_file);
    f << output;
  }

  if (killed) {
    res.timed_out = true;
    res.status = {SzsStatus::Kind::Timeout, ""};
  } else if (WIFEXITED(wstatus) &&
             (WEXITSTATUS(wstatus) == 126 || WEXITSTATUS(wstatus) == 127)) {
    std::string first = output.substr(0, output.find('\n'));
    throw SpawnError("command exited " + std::to_string(WEXITSTATUS(wstatus)) +
                     (first.empty() ? "" : ": " + first));
  } else {
    res.status = parse_szs(output);
  }

  if (cfg.cleanup) {
    std::error_code ec;
    std::filesystem::remove(res.problem_file, ec);
    std::filesystem::remove(res.output_file, ec);
  }
  return res;
}

} // namespace holembed::thf
