#pragma once

// Big-step evaluation of terms and first-order formulas against a source
// store, and the update/merge store algebra.

#include <optional>
#include <vector>

#include "lore/checker.hpp"
#include "lore/crdt.hpp"

namespace lore {

// One MergeValue per declared source, indexed like CheckedProgram::sources.
using Store = std::vector<MergeValue>;

Store initial_store(const CheckedProgram& cp);

// Quantifier domains. The default is the active domain: every element held
// by any source reactive, grouped by type, plus explicitly supplied extras
// (the interaction argument during verification).
class Universe {
 public:
  static Universe active_domain(const CheckedProgram& cp, const Store& store);
  void add_value(const Type& t, const Value& v);
  const std::vector<Value>* domain(const Type& t) const;

 private:
  std::vector<std::pair<std::string, std::vector<Value>>> domains_;  // by type name
};

struct EvalCtx {
  const CheckedProgram* cp = nullptr;
  const Store* store = nullptr;
  Replica replica = 0;             // mints dots for add/inc/dec/set effects
  const Universe* universe = nullptr;  // may be null when no quantifier occurs
  mutable std::vector<std::optional<Value>> derivedMemo;  // per-store cache

  EvalCtx(const CheckedProgram& c, const Store& s, Replica r = 0,
          const Universe* u = nullptr)
      : cp(&c), store(&s), replica(r), universe(u),
        derivedMemo(c.program.deriveds.size()) {}
};

using Env = std::vector<Value>;

Value eval_term(const EvalCtx& ctx, const Term& t, Env& env);
bool eval_logic(const EvalCtx& ctx, const Term& t, Env& env);

// Evaluates a curried clause (requires/ensures/executes) by pushing the
// modified reactives' current values and the argument.
Value eval_clause(const EvalCtx& ctx, const InteractionDecl& d, const Term& clause,
                  const Value& arg);

// Pointwise merge on the targets, identity elsewhere.
Store update_store(const CheckedProgram& cp, const Store& s,
                   const std::vector<std::string>& targets,
                   const std::vector<MergeValue>& values);
Store merge_store(const Store& a, const Store& b);
bool leq_store(const Store& a, const Store& b);

// `extras` widens the quantifier universe (e.g. with the interaction
// argument during verification).
bool invariant_holds(const CheckedProgram& cp, const Store& s, const InvariantDecl& inv,
                     const std::vector<std::pair<Type, Value>>* extras = nullptr);
// Returns the id of the first violated invariant, or nullopt.
std::optional<int> first_violated_invariant(const CheckedProgram& cp, const Store& s);

std::string store_text(const CheckedProgram& cp, const Store& s);
std::uint64_t store_digest(const CheckedProgram& cp, const Store& s);

}  // namespace lore
