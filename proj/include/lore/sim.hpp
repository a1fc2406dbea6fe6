#pragma once

// Deterministic multi-device simulation: drives the runtime under a
// schedule, checks validity of every reachable state, and mechanizes the
// serialization construction as a trace oracle.

#include <optional>

#include "lore/runtime.hpp"
#include "lore/schedule.hpp"

namespace lore {

struct TransitionLabel {
  enum class Kind { Interact, Sync, Crash, Recover, Refused, Queued } kind;
  Replica device = 0;  // Interact/Crash/Recover/Refused/Queued
  std::string interaction;
  Value arg;
  Replica sender = 0, receiver = 0;        // Sync
  std::set<std::string> lockset;           // Sync; Crash: reassigned tokens
  Replica reassignedTo = 0;                // Crash
  std::string refusalReason;               // Refused
};

struct TraceStep {
  TransitionLabel label;
  std::vector<std::uint64_t> digests;      // per-device store digest after the step
  std::vector<DeviceState> after;          // full snapshot (in-memory only)
};

struct Trace {
  int deviceCount = 0;
  std::vector<DeviceState> initial;
  std::vector<TraceStep> steps;

  const std::vector<DeviceState>& state_after(std::size_t step) const {
    return step == 0 ? initial : steps[step - 1].after;
  }
  const std::vector<DeviceState>& final_state() const {
    return steps.empty() ? initial : steps.back().after;
  }
};

Trace run_schedule(const CheckedProgram& cp, const ConflictTable& conflicts,
                   const Schedule& sched);

// Stepwise simulation state: devices plus the token-protocol bookkeeping.
// Copyable, so exhaustive explorers can fork it per event.
struct SimWorld {
  std::vector<DeviceState> devices;
  std::map<std::string, std::set<Replica>> pending;  // token → requesters
  std::map<Replica, PendingInteraction> queued;
};

SimWorld sim_init(const CheckedProgram& cp, int devices);

// Applies one schedule event (attempts resolve tokens per the conflict
// table; pump moves grants and fires queued interactions to quiescence).
// Transitions are appended to `trace` when given.
void sim_apply(const CheckedProgram& cp, const ConflictTable& conflicts, SimWorld& world,
               const ScheduleStep& step, Trace* trace);

// Canonical text of a world, used for state deduplication in explorers.
std::string sim_world_key(const CheckedProgram& cp, const SimWorld& world);

struct ValidityReport {
  bool valid = true;
  std::size_t firstViolationStep = 0;  // 0 = initial state, else 1-based step
  int invariantId = 0;
  Replica device = 0;
};

ValidityReport check_validity(const CheckedProgram& cp, const Trace& trace);

struct SerStep {
  Replica device = 0;
  std::string interaction;
  Value arg;
};

struct Serialization {
  bool ok = false;
  std::vector<SerStep> steps;
  std::string whyNot;  // set when !ok (NoSerialization)
  bool usedIdempotenceShortcut = false;  // duplicate sync absorbed by idempotence
};

// Rewrites the trace right-to-left into a sequential history; the returned
// sequence replays from the initial all-locks device (checking pre- and
// postconditions) to a store structurally equal to the device's final store.
Serialization serialize_device(const CheckedProgram& cp, const Trace& trace, Replica device);

// One line per transition: step#, label, devices, lockset, store digest.
std::string trace_log(const CheckedProgram& cp, const Trace& trace);

std::string trace_to_json(const CheckedProgram& cp, const Trace& trace,
                          const std::string& programPath);
// Rebuilds a trace by replaying the recorded transitions.
Trace trace_from_json(const CheckedProgram& cp, const std::string& text);

}  // namespace lore
