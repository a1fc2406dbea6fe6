#pragma once

// Concrete grammar for .lore programs. Mirrors the builder-chain style of the
// calendar application: Source/Derived declarations, Interaction[...][...]
// chains, `invariant` formulas, and UI glue lines that are kept verbatim.

#include <string>

#include "lore/ast.hpp"
#include "lore/errors.hpp"

namespace lore {

Program parse_program(const std::string& text);

// Canonical text form; parse(pretty(parse(t))) is structurally equal to
// parse(t).
std::string pretty_print(const Program& p);

bool structurally_equal(const Program& a, const Program& b);

}  // namespace lore
