#pragma once

#include <stdexcept>
#include <string>

#include "lore/ast.hpp"

namespace lore {

struct LoreError : std::runtime_error {
  Pos pos;
  LoreError(std::string msg, Pos p = {}) : std::runtime_error(std::move(msg)), pos(p) {}
};

struct ParseError : LoreError {
  using LoreError::LoreError;
};
struct DuplicateName : ParseError {
  using ParseError::ParseError;
};
struct UnknownIdentifier : LoreError {
  using LoreError::LoreError;
};

struct SemanticError : LoreError {
  using LoreError::LoreError;
};
struct CycleError : SemanticError {
  using SemanticError::SemanticError;
};
struct ArityError : SemanticError {
  using SemanticError::SemanticError;
};
struct TypeError : SemanticError {
  using SemanticError::SemanticError;
};

struct EvalError : LoreError {
  using LoreError::LoreError;
};
struct Stuck : EvalError {
  using EvalError::EvalError;
};
struct UnknownReactive : EvalError {
  using EvalError::EvalError;
};
struct UniverseMissing : EvalError {
  using EvalError::EvalError;
};
struct Overflow : EvalError {
  using EvalError::EvalError;
};

// `file:line:col: message`
std::string format_error(const std::string& file, const LoreError& e);

}  // namespace lore
