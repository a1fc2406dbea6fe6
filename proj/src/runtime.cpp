#include "lore/runtime.hpp"

namespace lore {

std::vector<DeviceState> init_program(const CheckedProgram& cp, int deviceCount) {
  if (deviceCount < 1) throw RuntimeFault("device count must be at least 1");
  std::vector<DeviceState> devices;
  Store init = initial_store(cp);
  for (int i = 1; i <= deviceCount; ++i) {
    DeviceState d;
    d.id = static_cast<Replica>(i);
    d.store = init;
    if (i == 1)
      for (const auto& name : cp.executable_names()) d.locks.insert(name);
    devices.push_back(std::move(d));
  }
  return devices;
}

std::optional<Refusal> interact(const CheckedProgram& cp, std::vector<DeviceState>& devices,
                                std::size_t i, const std::string& interaction,
                                const Value& arg, const ConflictTable& conflicts) {
  DeviceState& dev = devices.at(i);
  if (!dev.alive)
    return Refusal{Refusal::Reason::DeviceDown, "device is down"};
  const InteractionDecl* d = cp.executable(interaction);
  if (!d)
    return Refusal{Refusal::Reason::NotExecutable,
                   "'" + interaction + "' is partial or undeclared"};
  for (const auto& c : conflicts.conflicts(interaction))
    if (!dev.locks.count(c))
      return Refusal{Refusal::Reason::MissingLocks, "missing token '" + c + "'"};

  Universe u = Universe::active_domain(cp, dev.store);
  u.add_value(d->argType, arg);
  EvalCtx ctx(cp, dev.store, dev.id, &u);
  for (const auto& c : d->requiresClauses)
    if (!eval_clause(ctx, *d, *c, arg).as_bool())
      return Refusal{Refusal::Reason::PreconditionFalse, "precondition false"};

  Value result = eval_clause(ctx, *d, *d->executes, arg);
  std::vector<MergeValue> values;
  if (d->modifies.size() == 1) {
    values.push_back(std::get<MergeValue>(result.v));
  } else {
    for (const Value& item : std::get<TupleValue>(result.v).items)
      values.push_back(std::get<MergeValue>(item.v));
  }
  Store post = update_store(cp, dev.store, d->modifies, values);

  Universe u2 = Universe::active_domain(cp, post);
  u2.add_value(d->argType, arg);
  EvalCtx ctx2(cp, post, dev.id, &u2);
  for (const auto& c : d->ensuresClauses)
    if (!eval_clause(ctx2, *d, *c, arg).as_bool())
      throw PostconditionFalse("postcondition of '" + interaction +
                               "' false after execution; checker bounds gap");

  dev.store = std::move(post);
  for (const MergeValue& m : dev.store)
    if (m.kind == CrdtKind::AWSet) dev.dotCounter = std::max(dev.dotCounter, m.aw.ctx.get(dev.id));
  return std::nullopt;
}

void sync(const CheckedProgram& cp, std::vector<DeviceState>& devices, std::size_t sender,
          std::size_t receiver, const std::set<std::string>& lockset) {
  (void)cp;
  DeviceState& s = devices.at(sender);
  DeviceState& r = devices.at(receiver);
  if (!s.alive || !r.alive) throw RuntimeFault("sync with a crashed device");
  for (const auto& l : lockset)
    if (!s.locks.count(l)) throw LockNotHeld("sender does not hold token '" + l + "'");
  r.store = merge_store(r.store, s.store);
  for (const auto& l : lockset) {
    s.locks.erase(l);
    r.locks.insert(l);
  }
}

std::vector<TokenMessage> lock_protocol_step(ProtocolNode& node, const TokenMessage& msg) {
  std::vector<TokenMessage> out;
  switch (msg.kind) {
    case TokenMessage::Kind::Request:
      node.pendingRequests[msg.token].insert(msg.device);
      return out;
    case TokenMessage::Kind::Grant: {
      if (!node.queued) return out;
      node.queued->awaiting.erase(msg.token);
      // Acquire remaining tokens in ascending order, one at a time.
      if (!node.queued->awaiting.empty())
        out.push_back({TokenMessage::Kind::Request, *node.queued->awaiting.begin(), node.id});
      return out;
    }
    case TokenMessage::Kind::Release: {
      auto it = node.pendingRequests.find(msg.token);
      if (it == node.pendingRequests.end() || it->second.empty()) return out;
      Replica lowest = *it->second.begin();
      it->second.erase(lowest);
      if (it->second.empty()) node.pendingRequests.erase(it);
      out.push_back({TokenMessage::Kind::Grant, msg.token, lowest});
      return out;
    }
    case TokenMessage::Kind::TimeoutFired: {
      // The driver reassigns the crashed device's tokens; the node only
      // drops its interest in anything the dead device was asked for.
      for (auto& [tok, reqs] : node.pendingRequests) reqs.erase(msg.device);
      return out;
    }
  }
  return out;
}

}  // namespace lore
