#pragma once

#include <string>
#include <vector>

#include "holembed/logics/problem_source.hpp"
#include "holembed/stt/normalize.hpp"
#include "holembed/stt/signature.hpp"
#include "holembed/stt/typecheck.hpp"

namespace holembed::embed {

// A fully elaborated reasoning problem in the kernel language: a signature,
// axioms and conjecture of type o, and the status the problem is expected
// to have.
struct Problem {
  std::string name;
  stt::Signature sig;
  std::vector<stt::TermPtr> axioms;
  stt::TermPtr conjecture;
  logics::Expectation expected = logics::Expectation::Unknown;
  std::string origin; // human-readable provenance: builder id or source path

  // Type-checks every formula against the signature; throws on violation.
  void validate() const {
    for (const auto& a : axioms) require_bool(a);
    require_bool(conjecture);
  }

private:
  void require_bool(const stt::TermPtr& t) const {
    if (!t) throw Error("problem '" + name + "' has a null formula");
    if (!stt::free_vars(t).empty())
      throw Error("problem '" + name + "' has an open formula");
    stt::TypePtr ty = stt::type_of(t, sig);
    if (!stt::type_equal(ty, stt::bool_ty()))
      throw Error("problem '" + name + "' has a formula of type " + stt::show_type(ty));
  }
};

} // namespace holembed::embed
