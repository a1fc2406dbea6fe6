#pragma once

// Name resolution, cycle detection, arity checks and the monomorphic typing
// pass. Produces a CheckedProgram whose terms carry resolved slots so the
// evaluator never needs string lookups.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lore/ast.hpp"
#include "lore/errors.hpp"

namespace lore {

struct CheckedProgram {
  Program program;

  std::map<std::string, int> sourceIndex;   // name → index into program.sources
  std::map<std::string, int> derivedIndex;  // name → index into program.deriveds
  std::vector<int> derivedTopo;             // dependency order (dependees first)
  std::vector<int> executables;             // indices of complete interactions

  const SourceDecl& source(int i) const { return program.sources[i]; }
  const DerivedDecl& derived(int i) const { return program.deriveds[i]; }
  const InteractionDecl* executable(const std::string& name) const;
  bool is_executable(const std::string& name) const { return executable(name) != nullptr; }
  std::vector<std::string> executable_names() const;
};

CheckedProgram resolve_and_check(const Program& p);

// Convenience: parse + check.
CheckedProgram load_program(const std::string& text);

}  // namespace lore
