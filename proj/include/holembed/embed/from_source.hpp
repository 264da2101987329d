#pragma once

#include <string>
#include <vector>

#include "holembed/embed/ipl.hpp"
#include "holembed/embed/modal.hpp"
#include "holembed/embed/problem.hpp"
#include "holembed/embed/rcc.hpp"
#include "holembed/logics/problem_source.hpp"

namespace holembed::embed {

// Compiles a parsed .lgp problem to a typed STT problem.
//
// Per-logic reading:
//   qml    — axioms and conjecture are validity assertions over the declared
//            modal signature.
//   ipl    — axioms fold into the conjecture as nested implications (the
//            hypothetical reading), then the whole formula goes through the
//            S4 transformation; `ipl_mode` picks schema vs. frame premises.
//   fo-rcc — region predicates/constants; the two c postulates are always in
//            force, declared consts add regions, declared preds add
//            uninterpreted region relations.
//   stt    — already kernel terms; passed through unchanged.
inline Problem compile_source(const logics::ProblemSource& src,
                              IplMode ipl_mode = IplMode::FrameConditions) {
  Problem P;
  P.name = src.name;
  P.expected = src.expected;
  P.origin = "lgp:" + logics::source_logic_name(src.logic);

  switch (src.logic) {
    case logics::SourceLogic::Qml: {
      std::vector<std::string> individuals;
      for (const auto& [c, base] : src.decls.consts) {
        if (base != "i")
          throw EmbedError("constant '" + c + "' must have type i in a modal problem");
        individuals.push_back(c);
      }
      ModalSignature ms(src.decls.indices, src.decls.preds, individuals);
      for (const auto& ax : src.qml_axioms)
        P.axioms.push_back(wrap_valid(embed_qml(ax, ms)));
      P.conjecture = wrap_valid(embed_qml(src.qml_conjecture, ms));
      P.sig = ms.sig();
      break;
    }
    case logics::SourceLogic::Ipl: {
      logics::IplPtr goal = src.ipl_conjecture;
      for (auto it = src.ipl_axioms.rbegin(); it != src.ipl_axioms.rend(); ++it)
        goal = logics::ipl::implies(*it, goal);
      Problem built = build_ipl_problem(src.name, goal, ipl_mode, src.expected);
      built.origin = P.origin;
      return built;
    }
    case logics::SourceLogic::FoRcc: {
      add_rcc_core(P.sig);
      for (const auto& [k, arity] : src.decls.preds) {
        TypePtr ty = stt::bool_ty();
        for (size_t j = 0; j < arity; ++j) ty = stt::fn(region_ty(), ty);
        P.sig.declare_const(k, ty);
      }
      for (const auto& [c, base] : src.decls.consts) {
        if (base != "region")
          throw EmbedError("constant '" + c + "' must have type region in a region problem");
        P.sig.declare_const(c, region_ty());
      }
      P.axioms = rcc_axioms(P.sig);
      for (const auto& ax : src.fo_axioms) P.axioms.push_back(embed_fo(ax, P.sig));
      P.conjecture = embed_fo(src.fo_conjecture, P.sig);
      break;
    }
    case logics::SourceLogic::Stt: {
      P.sig = src.stt_sig;
      P.axioms = src.stt_axioms;
      P.conjecture = src.stt_conjecture;
      break;
    }
  }
  P.validate();
  return P;
}

} // namespace holembed::embed
