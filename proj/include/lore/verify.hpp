#pragma once

// The two proof obligations — invariant preservation and confluence — are
// discharged by bounded exhaustive checking over enumerated valid stores and
// argument candidates. Refutations carry replayable witnesses. The result
// of the confluence pass is the conflicts oracle used by the runtime.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "lore/eval.hpp"
#include "lore/graph.hpp"

namespace lore {

struct VerifyError : LoreError {
  using LoreError::LoreError;
};
struct BoundsTooLarge : VerifyError {
  using VerifyError::VerifyError;
};
struct PreservationFailed : VerifyError {
  using VerifyError::VerifyError;
};
struct NotExecutable : VerifyError {
  using VerifyError::VerifyError;
};

struct BoundConfig {
  // Appointment element universe: id x start x end with start,end in
  // [0, apptStartMax) x [0, apptEndMax), plus (id0, 0, d) for each day-domain
  // entry d below dayBound. Argument candidates for appointments come from
  // the day domain alone; stores range over the whole element universe.
  std::int64_t apptStartMax = 4;
  std::int64_t apptEndMax = 4;
  std::vector<std::int64_t> dayDomain = {12, 20, 31};
  std::int64_t dayBound = 40;
  std::vector<std::int64_t> apptIds = {1};

  std::int64_t intMin = 0;
  std::int64_t intMax = 4;
  std::vector<std::string> stringUniverse = {"a", "b"};

  int maxSetSize = 2;
  std::int64_t counterMax = 4;
  std::size_t maxArgs = 64;
  std::size_t maxStores = 60000;
  std::uint64_t maxChecks = 200000000;
};

enum class VerdictStatus { ProvedBounded, Refuted, SkippedByOverlap };

enum class RefutationKind {
  None,
  MergedInvalid,
  ReExecutionBlocked,
  ReExecutionPostconditionFailed,
  Diverged,
  PostconditionFailed,
  InvariantViolated
};

struct Witness {
  // Preservation: the enumerated starting store. Confluence: the common
  // valid snapshot both devices diverged from.
  std::string storeI;
  std::string storeJ;  // unused (kept for report stability)
  Value arg1;
  Value arg2;  // unit for preservation witnesses
  int invariantId = 0;
  std::string detail;
};

struct Verdict {
  std::string obligation;
  VerdictStatus status = VerdictStatus::ProvedBounded;
  RefutationKind kind = RefutationKind::None;
  std::optional<Witness> witness;
  std::uint64_t checksRun = 0;
  // Blocked re-executions accepted because they were observable no-ops
  // (duplicate applications discarded by merge idempotence).
  std::uint64_t idempotentSkips = 0;
};

struct ConflictTable {
  std::map<std::string, std::set<std::string>> m;

  std::set<std::string> conflicts(const std::string& a) const {
    auto it = m.find(a);
    return it == m.end() ? std::set<std::string>{} : it->second;
  }
  void add_pair(const std::string& a, const std::string& b) {
    m[a].insert(a);
    m[a].insert(b);
    m[b].insert(a);
    m[b].insert(b);
  }
  bool symmetric() const;
};

struct CheckReport {
  std::vector<Verdict> obligations;
  OverlapReport overlap;
  ConflictTable conflicts;
  bool preservationOk = true;
  std::string boundsNote;
};

// Enumeration helpers, also used by the test-side oracles.
std::vector<Value> element_universe(const BoundConfig& cfg, const Type& t);
std::vector<Value> argument_candidates(const BoundConfig& cfg, const Type& t);
std::vector<MergeValue> enumerate_crdt_states(const BoundConfig& cfg, const SourceDecl& s,
                                              Replica side);
// Valid stores in ascending (total element count, lexicographic) order.
std::vector<Store> enumerate_valid_stores(const CheckedProgram& cp, const BoundConfig& cfg,
                                          Replica side);

Verdict check_preservation(const CheckedProgram& cp, const std::string& interaction,
                           const BoundConfig& cfg);
Verdict check_confluence(const CheckedProgram& cp, const std::string& a1,
                         const std::string& a2, const BoundConfig& cfg);

ConflictTable compute_conflicts(const CheckedProgram& cp, const BoundConfig& cfg);

// Full pipeline: graph, preservation, confluence over overlapping pairs,
// conflict table. Does not throw on refuted preservation; inspect the report.
CheckReport check_program(const CheckedProgram& cp, const BoundConfig& cfg);

// Replica ids reserved for enumerated states; devices use 1..n.
constexpr Replica kEnumSideI = 101;
constexpr Replica kEnumSideJ = 102;
constexpr Replica kExecI = 1;
constexpr Replica kExecJ = 2;

}  // namespace lore
