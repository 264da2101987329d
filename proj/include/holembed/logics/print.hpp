#pragma once

#include <string>

#include "holembed/logics/ast.hpp"

namespace holembed::logics {

// Minimal-parentheses printers, exact inverses of the parsers: for every
// formula f, parse(print(f)) is structurally equal to f (including sugar
// nodes). Precedence levels, loosest first: <=> (0), => (1), | (2), & (3),
// unary prefixes (4), atoms (5).

namespace detail {

inline void print_args(const std::vector<std::string>& args, std::string& out) {
  if (args.empty()) return;
  out += "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i];
  }
  out += ")";
}

template <class Node, class KindOf>
struct PrecTable; // specialized per logic below

inline void qml_print(const QmlPtr& f, std::string& out, int min_level);

inline int qml_prec(const QmlPtr& f) {
  switch (f->kind) {
    case QmlKind::Iff: return 0;
    case QmlKind::Implies: return 1;
    case QmlKind::Or: return 2;
    case QmlKind::And: return 3;
    case QmlKind::Neg:
    case QmlKind::Box:
    case QmlKind::Diamond:
    case QmlKind::ForallInd:
    case QmlKind::ExistsInd:
    case QmlKind::ForallProp:
    case QmlKind::ExistsProp: return 4;
    default: return 5;
  }
}

inline void qml_print(const QmlPtr& f, std::string& out, int min_level) {
  int prec = qml_prec(f);
  bool need = prec < min_level;
  if (need) out += "(";
  switch (f->kind) {
    case QmlKind::PropVar: out += f->name; break;
    case QmlKind::Atom:
      out += f->name;
      print_args(f->args, out);
      break;
    case QmlKind::Neg:
      out += "~ ";
      qml_print(f->sub0, out, 4);
      break;
    case QmlKind::And:
      qml_print(f->sub0, out, 3); out += " & "; qml_print(f->sub1, out, 4);
      break;
    case QmlKind::Or:
      qml_print(f->sub0, out, 2); out += " | "; qml_print(f->sub1, out, 3);
      break;
    case QmlKind::Implies:
      qml_print(f->sub0, out, 2); out += " => "; qml_print(f->sub1, out, 1);
      break;
    case QmlKind::Iff:
      qml_print(f->sub0, out, 0); out += " <=> "; qml_print(f->sub1, out, 1);
      break;
    case QmlKind::Box:
      out += "[" + f->name + "] ";
      qml_print(f->sub0, out, 4);
      break;
    case QmlKind::Diamond:
      out += "<" + f->name + "> ";
      qml_print(f->sub0, out, 4);
      break;
    case QmlKind::ForallInd:
      out += "![" + f->name + "]: ";
      qml_print(f->sub0, out, 4);
      break;
    case QmlKind::ExistsInd:
      out += "?[" + f->name + "]: ";
      qml_print(f->sub0, out, 4);
      break;
    case QmlKind::ForallProp:
      out += "![" + f->name + ":$prop]: ";
      qml_print(f->sub0, out, 4);
      break;
    case QmlKind::ExistsProp:
      out += "?[" + f->name + ":$prop]: ";
      qml_print(f->sub0, out, 4);
      break;
  }
  if (need) out += ")";
}

inline int ipl_prec(const IplPtr& f) {
  switch (f->kind) {
    case IplKind::Iff: return 0;
    case IplKind::Implies: return 1;
    case IplKind::Or: return 2;
    case IplKind::And: return 3;
    case IplKind::Neg: return 4;
    case IplKind::Atom: return 5;
  }
  return 5;
}

inline void ipl_print(const IplPtr& f, std::string& out, int min_level) {
  int prec = ipl_prec(f);
  bool need = prec < min_level;
  if (need) out += "(";
  switch (f->kind) {
    case IplKind::Atom: out += f->name; break;
    case IplKind::Neg: out += "~ "; ipl_print(f->sub0, out, 4); break;
    case IplKind::And: ipl_print(f->sub0, out, 3); out += " & "; ipl_print(f->sub1, out, 4); break;
    case IplKind::Or: ipl_print(f->sub0, out, 2); out += " | "; ipl_print(f->sub1, out, 3); break;
    case IplKind::Implies: ipl_print(f->sub0, out, 2); out += " => "; ipl_print(f->sub1, out, 1); break;
    case IplKind::Iff: ipl_print(f->sub0, out, 0); out += " <=> "; ipl_print(f->sub1, out, 1); break;
  }
  if (need) out += ")";
}

inline int fo_prec(const FoPtr& f) {
  switch (f->kind) {
    case FoKind::Iff: return 0;
    case FoKind::Implies: return 1;
    case FoKind::Or: return 2;
    case FoKind::And: return 3;
    case FoKind::Neg:
    case FoKind::Forall:
    case FoKind::Exists: return 4;
    case FoKind::Atom: return 5;
  }
  return 5;
}

inline void fo_print(const FoPtr& f, std::string& out, int min_level) {
  int prec = fo_prec(f);
  bool need = prec < min_level;
  if (need) out += "(";
  switch (f->kind) {
    case FoKind::Atom:
      out += f->name;
      print_args(f->args, out);
      break;
    case FoKind::Neg: out += "~ "; fo_print(f->sub0, out, 4); break;
    case FoKind::And: fo_print(f->sub0, out, 3); out += " & "; fo_print(f->sub1, out, 4); break;
    case FoKind::Or: fo_print(f->sub0, out, 2); out += " | "; fo_print(f->sub1, out, 3); break;
    case FoKind::Implies: fo_print(f->sub0, out, 2); out += " => "; fo_print(f->sub1, out, 1); break;
    case FoKind::Iff: fo_print(f->sub0, out, 0); out += " <=> "; fo_print(f->sub1, out, 1); break;
    case FoKind::Forall:
      out += "![" + f->name + "]: ";
      fo_print(f->sub0, out, 4);
      break;
    case FoKind::Exists:
      out += "?[" + f->name + "]: ";
      fo_print(f->sub0, out, 4);
      break;
  }
  if (need) out += ")";
}

} // namespace detail

inline std::string print_qml(const QmlPtr& f) {
  std::string out;
  detail::qml_print(f, out, 0);
  return out;
}
inline std::string print_ipl(const IplPtr& f) {
  std::string out;
  detail::ipl_print(f, out, 0);
  return out;
}
inline std::string print_fo(const FoPtr& f) {
  std::string out;
  detail::fo_print(f, out, 0);
  return out;
}

} // namespace holembed::logics
