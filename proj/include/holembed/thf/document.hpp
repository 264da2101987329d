#pragma once

#include <set>
#include <string>
#include <vector>

#include "holembed/stt/error.hpp"

namespace holembed::thf {

struct ThfError : Error {
  explicit ThfError(const std::string& msg) : Error("thf: " + msg) {}
};

// One `thf(name, role, ...)` line. For role "type" `body` is "sym: ty";
// otherwise it is a formula.
struct ThfLine {
  std::string name;
  std::string role; // "type" | "definition" | "axiom" | "conjecture"
  std::string body;
};

// An ordered THF0 problem file: comments, type declarations (base types
// before constant signatures), definitions, axioms, and exactly one
// conjecture. `render()` produces the file text; `lint()` re-checks the
// structural invariants on the assembled document and throws on violation.
struct ThfDocument {
  std::string name;
  std::vector<std::string> comments;
  std::vector<ThfLine> types;
  std::vector<ThfLine> definitions;
  std::vector<ThfLine> axioms;
  ThfLine conjecture;

  std::string render() const {
    std::string out;
    for (const std::string& c : comments) out += "% " + c + "\n";
    if (!comments.empty()) out += "\n";
    auto emit = [&](const ThfLine& l) {
      out += "thf(" + l.name + ", " + l.role + ", " + l.body + ").\n";
    };
    for (const ThfLine& l : types) emit(l);
    if (!types.empty()) out += "\n";
    for (const ThfLine& l : definitions) emit(l);
    if (!definitions.empty()) out += "\n";
    for (const ThfLine& l : axioms) emit(l);
    if (!axioms.empty()) out += "\n";
    emit(conjecture);
    return out;
  }

  // Structural checks: unique line names, exactly one conjecture (by shape),
  // balanced parentheses/brackets per formula, and every lowercase symbol
  // used in a formula declared by an earlier type line. Violations are
  // emission bugs, hence exceptions rather than a result value.
  void lint() const {
    std::set<std::string> names;
    auto add_name = [&](const ThfLine& l) {
      if (l.name.empty()) throw ThfError("document '" + name + "': unnamed line");
      if (!names.insert(l.name).second)
        throw ThfError("document '" + name + "': duplicate line name '" + l.name + "'");
    };
    for (const ThfLine& l : types) add_name(l);
    for (const ThfLine& l : definitions) add_name(l);
    for (const ThfLine& l : axioms) add_name(l);
    add_name(conjecture);
    if (conjecture.role != "conjecture")
      throw ThfError("document '" + name + "': conjecture line has role '" +
                     conjecture.role + "'");
    for (const ThfLine& l : types)
      if (l.role != "type")
        throw ThfError("document '" + name + "': type line '" + l.name +
                       "' has role '" + l.role + "'");

    std::set<std::string> declared;
    for (const ThfLine& l : types) {
      size_t colon = l.body.find(':');
      if (colon == std::string::npos)
        throw ThfError("type line '" + l.name + "' lacks ':'");
      std::string sym = l.body.substr(0, colon);
      while (!sym.empty() && sym.back() == ' ') sym.pop_back();
      declared.insert(sym);
      check_symbols(l, declared); // the type itself may use earlier bases
    }
    for (const ThfLine& l : definitions) check_symbols(l, declared);
    for (const ThfLine& l : axioms) check_symbols(l, declared);
    check_symbols(conjecture, declared);
  }

private:
  static void check_balance(const ThfLine& l) {
    long paren = 0, brack = 0;
    for (char c : l.body) {
      if (c == '(') ++paren;
      if (c == ')') --paren;
      if (c == '[') ++brack;
      if (c == ']') --brack;
      if (paren < 0 || brack < 0)
        throw ThfError("line '" + l.name + "': unbalanced delimiters");
    }
    if (paren != 0 || brack != 0)
      throw ThfError("line '" + l.name + "': unbalanced delimiters");
  }

  // Lowercase-led words are constants and must be declared; uppercase-led
  // words are bound variables; '$'-words are TPTP builtins.
  static void check_symbols(const ThfLine& l, const std::set<std::string>& declared) {
    check_balance(l);
    const std::string& s = l.body;
    size_t i = 0;
    bool first_token = l.role == "type"; // the declared symbol itself
    while (i < s.size()) {
      char c = s[i];
      if (c == '$') { // builtin word
        ++i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        std::string word = s.substr(start, i - start);
        bool lower = std::islower(static_cast<unsigned char>(word[0])) != 0;
        if (lower && !first_token && !declared.count(word))
          throw ThfError("line '" + l.name + "': symbol '" + word +
                         "' used before declaration");
        first_token = false;
        continue;
      }
      ++i;
    }
  }
};

} // namespace holembed::thf
