#pragma once

#include <string>

namespace holembed::thf {

// Result ontology statuses we act on. Anything else a tool prints becomes
// Error with the offending token preserved.
struct SzsStatus {
  enum class Kind {
    Theorem,
    CounterSatisfiable,
    Satisfiable,
    Unsatisfiable,
    Timeout,
    GaveUp,
    Error
  };
  Kind kind = Kind::Error;
  std::string text; // Error detail; empty for recognized statuses

  bool operator==(const SzsStatus& o) const { return kind == o.kind && text == o.text; }
};

inline std::string szs_name(SzsStatus::Kind k) {
  switch (k) {
    case SzsStatus::Kind::Theorem: return "Theorem";
    case SzsStatus::Kind::CounterSatisfiable: return "CounterSatisfiable";
    case SzsStatus::Kind::Satisfiable: return "Satisfiable";
    case SzsStatus::Kind::Unsatisfiable: return "Unsatisfiable";
    case SzsStatus::Kind::Timeout: return "Timeout";
    case SzsStatus::Kind::GaveUp: return "GaveUp";
    case SzsStatus::Kind::Error: return "Error";
  }
  return "Error";
}

inline std::string show_szs(const SzsStatus& s) {
  if (s.kind == SzsStatus::Kind::Error && !s.text.empty())
    return "Error(" + s.text + ")";
  return szs_name(s.kind);
}

// Total: scans for the first `SZS status <word>` occurrence; the status word
// is the next whitespace-delimited token. Missing line or unknown token maps
// to Error rather than throwing, so callers can always report something.
inline SzsStatus parse_szs(const std::string& output) {
  static const char needle[] = "SZS status";
  size_t at = output.find(needle);
  while (at != std::string::npos) {
    size_t i = at + sizeof(needle) - 1;
    while (i < output.size() && (output[i] == ' ' || output[i] == '\t')) ++i;
    size_t start = i;
    while (i < output.size() && (std::isalnum(static_cast<unsigned char>(output[i])) ||
                                 output[i] == '_'))
      ++i;
    std::string tok = output.substr(start, i - start);
    if (!tok.empty()) {
      if (tok == "Theorem") return {SzsStatus::Kind::Theorem, ""};
      if (tok == "CounterSatisfiable") return {SzsStatus::Kind::CounterSatisfiable, ""};
      if (tok == "Satisfiable") return {SzsStatus::Kind::Satisfiable, ""};
      if (tok == "Unsatisfiable") return {SzsStatus::Kind::Unsatisfiable, ""};
      if (tok == "Timeout" || tok == "ResourceOut") return {SzsStatus::Kind::Timeout, ""};
      if (tok == "GaveUp") return {SzsStatus::Kind::GaveUp, ""};
      return {SzsStatus::Kind::Error, "unrecognized SZS status '" + tok + "'"};
    }
    at = output.find(needle, at + 1);
  }
  return {SzsStatus::Kind::Error, "no SZS line"};
}

} // namespace holembed::thf
