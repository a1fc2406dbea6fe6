#pragma once

// The labelled transition system over a device vector: Interact and Sync
// transitions plus the token-based locking protocol with lowest-ID grants
// and crash timeouts.

#include <optional>
#include <set>
#include <variant>

#include "lore/eval.hpp"
#include "lore/verify.hpp"

namespace lore {

struct RuntimeFault : LoreError {
  using LoreError::LoreError;
};
struct LockNotHeld : RuntimeFault {
  using RuntimeFault::RuntimeFault;
};
struct ProtocolViolation : RuntimeFault {
  using RuntimeFault::RuntimeFault;
};
struct PostconditionFalse : RuntimeFault {
  using RuntimeFault::RuntimeFault;
};

struct DeviceState {
  Replica id = 0;  // 1-based device ordinal
  Store store;
  std::set<std::string> locks;
  Counter dotCounter = 0;  // mirrors the store's own-replica causal context
  bool alive = true;
};

// All devices share the initial store; device 1 holds every lock.
std::vector<DeviceState> init_program(const CheckedProgram& cp, int deviceCount);

struct Refusal {
  enum class Reason { MissingLocks, PreconditionFalse, NotExecutable, DeviceDown } reason;
  std::string detail;
};

// Applies the Interact rule on device `i` (0-based index into the vector).
// Returns a refusal without mutating anything when the rule does not apply;
// throws PostconditionFalse when the ensures clause fails after execution
// (a verified program never does this).
std::optional<Refusal> interact(const CheckedProgram& cp, std::vector<DeviceState>& devices,
                                std::size_t i, const std::string& interaction,
                                const Value& arg, const ConflictTable& conflicts);

// Applies the Sync rule: receiver merges the sender's store; the lockset
// moves atomically with the state.
void sync(const CheckedProgram& cp, std::vector<DeviceState>& devices, std::size_t sender,
          std::size_t receiver, const std::set<std::string>& lockset);

// ---- token protocol ----

struct TokenMessage {
  enum class Kind { Request, Grant, Release, TimeoutFired } kind;
  std::string token;
  Replica device = 0;  // requester (Request) / grantee (Grant) / crashed (Timeout)
};

struct PendingInteraction {
  std::string interaction;
  Value arg;
  std::set<std::string> awaiting;  // tokens not yet held
};

struct ProtocolNode {
  Replica id = 0;
  // Requests parked at this holder, per held token.
  std::map<std::string, std::set<Replica>> pendingRequests;
  std::optional<PendingInteraction> queued;
};

// One protocol step: consumes a message addressed to this node and yields
// outgoing messages. Grants are not sent here — the driver turns a Release
// decision into a Sync transition so state moves with the token.
std::vector<TokenMessage> lock_protocol_step(ProtocolNode& node, const TokenMessage& msg);

}  // namespace lore
