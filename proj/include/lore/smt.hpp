#pragma once

// SMT-LIB v2 emission of the preservation and confluence obligations for the
// encodable fragment: membership sets over record sorts, linear integer
// arithmetic, and sum aggregates tracked as ghost constants. An `unsat`
// answer on the emitted negation implies the unbounded property; solving is
// optional and external.

#include <string>
#include <vector>

#include "lore/graph.hpp"

namespace lore {

struct SmtResult {
  std::string obligation;  // preservation:a / confluence:a1:a2
  bool encodable = false;
  std::string script;  // SMT-LIB text when encodable
  std::string why;     // reason when not encodable
};

SmtResult emit_preservation_smt(const CheckedProgram& cp, const std::string& interaction);
SmtResult emit_confluence_smt(const CheckedProgram& cp, const std::string& a1,
                              const std::string& a2);

// Preservation for every executable plus confluence for every overlapping
// pair, in deterministic order.
std::vector<SmtResult> emit_all_smt(const CheckedProgram& cp);

}  // namespace lore
