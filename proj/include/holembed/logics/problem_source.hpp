#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "holembed/logics/parse.hpp"
#include "holembed/logics/print.hpp"
#include "holembed/stt/parse.hpp"
#include "holembed/stt/print.hpp"
#include "holembed/stt/signature.hpp"
#include "holembed/stt/typecheck.hpp"

namespace holembed::logics {

enum class Expectation { Theorem, CounterSatisfiable, Unknown };

inline std::string expectation_name(Expectation e) {
  switch (e) {
    case Expectation::Theorem: return "theorem";
    case Expectation::CounterSatisfiable: return "countersatisfiable";
    case Expectation::Unknown: return "unknown";
  }
  return "unknown";
}

enum class SourceLogic { Qml, Ipl, FoRcc, Stt };

inline std::string source_logic_name(SourceLogic l) {
  switch (l) {
    case SourceLogic::Qml: return "qml";
    case SourceLogic::Ipl: return "ipl";
    case SourceLogic::FoRcc: return "fo-rcc";
    case SourceLogic::Stt: return "stt";
  }
  return "?";
}

// A problem as stated in a .lgp file: one source logic, declarations,
// axioms, exactly one conjecture, and an optional expected status.
//
// Line kinds: `logic <tag>`, `index r`, `pred k/2`, `const a:i`,
// `axiom <formula>`, `conjecture <formula>`, `expect <status>`, comments
// with `#`. Problems in the kernel language (tag `stt`) additionally use
// `base <name>` and `def <name> : <type> = <term>`, and state axioms and
// conjecture in the canonical kernel syntax.
struct ProblemSource {
  std::string name;
  SourceLogic logic = SourceLogic::Qml;
  SourceDecls decls;
  Expectation expected = Expectation::Unknown;

  std::vector<QmlPtr> qml_axioms;
  QmlPtr qml_conjecture;
  std::vector<IplPtr> ipl_axioms;
  IplPtr ipl_conjecture;
  std::vector<FoPtr> fo_axioms;
  FoPtr fo_conjecture;

  stt::Signature stt_sig;                 // logic == Stt only
  std::vector<stt::TermPtr> stt_axioms;
  stt::TermPtr stt_conjecture;
};

namespace detail {

inline std::string strip_lgp_line(const std::string& raw) {
  std::string s = raw;
  if (size_t h = s.find('#'); h != std::string::npos) s.erase(h);
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::pair<std::string, std::string> split_keyword(const std::string& line) {
  size_t sp = line.find_first_of(" \t");
  if (sp == std::string::npos) return {line, ""};
  size_t rest = line.find_first_not_of(" \t", sp);
  return {line.substr(0, sp), rest == std::string::npos ? "" : line.substr(rest)};
}

} // namespace detail

inline ProblemSource read_lgp(const std::string& text, const std::string& name) {
  ProblemSource src;
  src.name = name;
  bool logic_seen = false;
  bool conjecture_seen = false;
  size_t lineno = 0;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_lgp_line(raw);
    if (line.empty()) continue;
    auto [kw, rest] = detail::split_keyword(line);

    auto err = [&](const std::string& msg) -> ParseError {
      return ParseError(msg, lineno, 1);
    };

    if (kw == "logic") {
      if (logic_seen) throw err("duplicate logic line");
      if (rest == "qml") src.logic = SourceLogic::Qml;
      else if (rest == "ipl") src.logic = SourceLogic::Ipl;
      else if (rest == "fo-rcc") src.logic = SourceLogic::FoRcc;
      else if (rest == "stt") src.logic = SourceLogic::Stt;
      else throw err("unknown logic '" + rest + "'");
      logic_seen = true;
      continue;
    }
    if (!logic_seen) throw err("first line must declare the logic");

    if (kw == "index") {
      if (src.logic != SourceLogic::Qml) throw err("'index' only applies to qml");
      if (rest.empty() || is_variable_name(rest)) throw err("index must be lowercase");
      src.decls.indices.push_back(rest);
      continue;
    }
    if (kw == "pred") {
      size_t slash = rest.find('/');
      if (slash == std::string::npos) throw err("pred line needs name/arity");
      std::string pname = rest.substr(0, slash);
      size_t arity = 0;
      try {
        arity = std::stoul(rest.substr(slash + 1));
      } catch (...) {
        throw err("bad arity in pred line");
      }
      src.decls.preds.emplace_back(pname, arity);
      continue;
    }
    if (kw == "const") {
      size_t colon = rest.find(':');
      if (colon == std::string::npos) throw err("const line needs name:type");
      std::string cname = detail::strip_lgp_line(rest.substr(0, colon));
      std::string tyname = detail::strip_lgp_line(rest.substr(colon + 1));
      if (src.logic == SourceLogic::Stt) {
        src.stt_sig.declare_const(cname, stt::parse_type(tyname));
      } else {
        const char* want = src.logic == SourceLogic::FoRcc ? "region" : "i";
        if (tyname != want)
          throw err("constants in this logic have type " + std::string(want));
        src.decls.consts.emplace_back(cname, tyname);
      }
      continue;
    }
    if (kw == "base") {
      if (src.logic != SourceLogic::Stt) throw err("'base' only applies to stt");
      src.stt_sig.declare_base(rest);
      continue;
    }
    if (kw == "def") {
      if (src.logic != SourceLogic::Stt) throw err("'def' only applies to stt");
      size_t eq = rest.find('=');
      size_t colon = rest.find(':');
      if (colon == std::string::npos || eq == std::string::npos || colon > eq)
        throw err("def line needs name : type = term");
      std::string dname = detail::strip_lgp_line(rest.substr(0, colon));
      std::string tytext = detail::strip_lgp_line(rest.substr(colon + 1, eq - colon - 1));
      std::string body = detail::strip_lgp_line(rest.substr(eq + 1));
      stt::TypePtr ty = stt::parse_type(tytext);
      stt::TermPtr t = stt::parse_stt_term(body, src.stt_sig);
      stt::define_checked(src.stt_sig, dname, ty, t);
      continue;
    }
    if (kw == "axiom" || kw == "conjecture") {
      bool is_conj = kw == "conjecture";
      if (is_conj && conjecture_seen) throw err("more than one conjecture");
      try {
        switch (src.logic) {
          case SourceLogic::Qml: {
            QmlPtr f = parse_qml(rest, &src.decls);
            if (is_conj) src.qml_conjecture = f; else src.qml_axioms.push_back(f);
            break;
          }
          case SourceLogic::Ipl: {
            IplPtr f = parse_ipl(rest, &src.decls);
            if (is_conj) src.ipl_conjecture = f; else src.ipl_axioms.push_back(f);
            break;
          }
          case SourceLogic::FoRcc: {
            FoPtr f = parse_fo(rest, &src.decls);
            if (is_conj) src.fo_conjecture = f; else src.fo_axioms.push_back(f);
            break;
          }
          case SourceLogic::Stt: {
            stt::TermPtr t = stt::parse_stt_term(rest, src.stt_sig);
            stt::TypePtr ty = stt::type_of(t, src.stt_sig);
            if (!stt::type_equal(ty, stt::bool_ty()))
              throw err("formula must have type o, got " + stt::show_type(ty));
            if (is_conj) src.stt_conjecture = t; else src.stt_axioms.push_back(t);
            break;
          }
        }
      } catch (const ParseError& e) {
        // rebase the inner (single-line) position onto the file line
        throw ParseError(e.expected.empty() ? std::string("bad formula: ") + e.what()
                                            : std::string("bad formula: ") + e.what(),
                         lineno, e.col);
      } catch (const stt::SttParseError& e) {
        throw ParseError(std::string("bad formula: ") + e.what(), lineno, e.position + 1);
      }
      if (is_conj) conjecture_seen = true;
      continue;
    }
    if (kw == "expect") {
      if (rest == "theorem") src.expected = Expectation::Theorem;
      else if (rest == "countersatisfiable") src.expected = Expectation::CounterSatisfiable;
      else if (rest == "unknown") src.expected = Expectation::Unknown;
      else throw err("unknown expectation '" + rest + "'");
      continue;
    }
    throw err("unknown line kind '" + kw + "'");
  }

  if (!logic_seen) throw ParseError("empty problem file", 1, 1);
  if (!conjecture_seen) throw ParseError("missing conjecture", lineno ? lineno : 1, 1);
  return src;
}

inline ProblemSource read_lgp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (size_t slash = stem.find_last_of('/'); slash != std::string::npos)
    stem = stem.substr(slash + 1);
  if (size_t dot = stem.find_last_of('.'); dot != std::string::npos)
    stem = stem.substr(0, dot);
  return read_lgp(buf.str(), stem);
}

// Canonical writer; read_lgp(write_lgp(src)) reproduces src, and writing a
// file read back from disk reproduces it byte for byte when the file was
// produced by this writer.
inline std::string write_lgp(const ProblemSource& src) {
  std::ostringstream out;
  out << "logic " << source_logic_name(src.logic) << "\n";
  if (src.logic == SourceLogic::Stt) {
    for (const std::string& b : src.stt_sig.bases())
      if (b != "o") out << "base " << b << "\n";
    for (const auto& c : src.stt_sig.constants()) {
      if (c.def)
        out << "def " << c.name << " : " << stt::show_type(c.ty) << " = "
            << stt::show_term(c.def) << "\n";
      else
        out << "const " << c.name << " : " << stt::show_type(c.ty) << "\n";
    }
    for (const auto& a : src.stt_axioms) out << "axiom " << stt::show_term(a) << "\n";
    out << "conjecture " << stt::show_term(src.stt_conjecture) << "\n";
  } else {
    for (const auto& i : src.decls.indices) out << "index " << i << "\n";
    for (const auto& [p, a] : src.decls.preds) out << "pred " << p << "/" << a << "\n";
    for (const auto& [c, t] : src.decls.consts) out << "const " << c << ":" << t << "\n";
    switch (src.logic) {
      case SourceLogic::Qml:
        for (const auto& a : src.qml_axioms) out << "axiom " << print_qml(a) << "\n";
        out << "conjecture " << print_qml(src.qml_conjecture) << "\n";
        break;
      case SourceLogic::Ipl:
        for (const auto& a : src.ipl_axioms) out << "axiom " << print_ipl(a) << "\n";
        out << "conjecture " << print_ipl(src.ipl_conjecture) << "\n";
        break;
      default:
        for (const auto& a : src.fo_axioms) out << "axiom " << print_fo(a) << "\n";
        out << "conjecture " << print_fo(src.fo_conjecture) << "\n";
        break;
    }
  }
  out << "expect " << expectation_name(src.expected) << "\n";
  return out.str();
}

} // namespace holembed::logics
