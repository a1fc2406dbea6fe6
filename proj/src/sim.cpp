#include "lore/sim.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace lore {

using nlohmann::json;

namespace {

std::vector<std::uint64_t> digests_of(const CheckedProgram& cp,
                                      const std::vector<DeviceState>& devices) {
  std::vector<std::uint64_t> out;
  out.reserve(devices.size());
  for (const auto& d : devices) out.push_back(store_digest(cp, d.store));
  return out;
}

class Driver {
 public:
  Driver(const CheckedProgram& cp, const ConflictTable& conflicts, SimWorld& world,
         Trace* trace)
      : cp_(cp), conflicts_(conflicts), world_(world), trace_(trace) {}

  void apply(const ScheduleStep& step) {
    switch (step.kind) {
      case ScheduleStep::Kind::Attempt: attempt(step); break;
      case ScheduleStep::Kind::Sync: do_sync(step); break;
      case ScheduleStep::Kind::Pump: pump(); break;
      case ScheduleStep::Kind::Crash: crash(step.device); break;
      case ScheduleStep::Kind::Recover: recover(step.device); break;
    }
  }

 private:
  const CheckedProgram& cp_;
  const ConflictTable& conflicts_;
  SimWorld& world_;
  Trace* trace_;

  std::size_t idx(Replica dev) const { return static_cast<std::size_t>(dev) - 1; }
  std::vector<DeviceState>& devices() { return world_.devices; }

  DeviceState* find_holder(const std::string& token) {
    DeviceState* holder = nullptr;
    for (auto& d : devices()) {
      if (d.locks.count(token)) {
        if (holder) throw ProtocolViolation("token '" + token + "' held twice");
        holder = &d;
      }
    }
    return holder;
  }

  void record(TransitionLabel label) {
    if (!trace_) return;
    TraceStep step;
    step.label = std::move(label);
    step.digests = digests_of(cp_, devices());
    step.after = devices();
    trace_->steps.push_back(std::move(step));
  }

  std::set<std::string> needed_tokens(const std::string& interaction) const {
    return conflicts_.conflicts(interaction);
  }

  void attempt(const ScheduleStep& step) {
    Replica dev = step.device;
    DeviceState& d = devices().at(idx(dev));
    if (!d.alive) {
      record({TransitionLabel::Kind::Refused, dev, step.interaction, step.arg, 0, 0, {}, 0,
              "device down"});
      return;
    }
    std::set<std::string> needed = needed_tokens(step.interaction);
    std::set<std::string> missing;
    for (const auto& t : needed)
      if (!d.locks.count(t)) missing.insert(t);
    if (missing.empty()) {
      fire(dev, step.interaction, step.arg);
      return;
    }
    // Queue the attempt and request the smallest missing token. One queued
    // interaction per device; a newer attempt replaces an older one.
    world_.queued[dev] = PendingInteraction{step.interaction, step.arg, missing};
    world_.pending[*missing.begin()].insert(dev);
    record({TransitionLabel::Kind::Queued, dev, step.interaction, step.arg, 0, 0, missing, 0,
            "awaiting tokens"});
  }

  void fire(Replica dev, const std::string& interaction, const Value& arg) {
    auto refusal = interact(cp_, devices(), idx(dev), interaction, arg, conflicts_);
    if (refusal) {
      std::string reason;
      switch (refusal->reason) {
        case Refusal::Reason::MissingLocks: reason = "missing locks"; break;
        case Refusal::Reason::PreconditionFalse: reason = "precondition false"; break;
        case Refusal::Reason::NotExecutable: reason = "not executable"; break;
        case Refusal::Reason::DeviceDown: reason = "device down"; break;
      }
      record({TransitionLabel::Kind::Refused, dev, interaction, arg, 0, 0, {}, 0, reason});
      return;
    }
    record({TransitionLabel::Kind::Interact, dev, interaction, arg, 0, 0, {}, 0, ""});
  }

  void do_sync(const ScheduleStep& step) {
    const DeviceState& s = devices().at(idx(step.from));
    const DeviceState& r = devices().at(idx(step.to));
    if (!s.alive || !r.alive) {
      record({TransitionLabel::Kind::Refused, step.from, "", Value(), step.from, step.to, {},
              0, "sync with down device"});
      return;
    }
    sync(cp_, devices(), idx(step.from), idx(step.to), {});
    record({TransitionLabel::Kind::Sync, 0, "", Value(), step.from, step.to, {}, 0, ""});
  }

  // Moves grantable tokens (lowest requester id first), fires queued
  // interactions whose token sets completed, and repeats to quiescence.
  void pump() {
    bool progress = true;
    while (progress) {
      progress = false;
      // Grants: a held token with pending requesters moves to the lowest id,
      // unless the holder itself still needs it for a queued interaction.
      for (auto it = world_.pending.begin(); it != world_.pending.end();) {
        const std::string& token = it->first;
        std::set<Replica>& reqs = it->second;
        for (auto rit = reqs.begin(); rit != reqs.end();) {
          if (!devices().at(idx(*rit)).alive) rit = reqs.erase(rit);
          else ++rit;
        }
        DeviceState* holder = find_holder(token);
        if (reqs.empty() || !holder) {
          it = reqs.empty() ? world_.pending.erase(it) : ++it;
          continue;
        }
        if (!holder->alive) {
          ++it;  // waits for the crash timeout to reassign
          continue;
        }
        auto qit = world_.queued.find(holder->id);
        bool holderNeedsIt = qit != world_.queued.end() &&
                             qit->second.awaiting.count(token) == 0 &&
                             needed_tokens(qit->second.interaction).count(token) > 0;
        if (holderNeedsIt) {
          ++it;  // holder is about to use it; releases after firing
          continue;
        }
        Replica grantee = *reqs.begin();
        if (grantee == holder->id) {
          reqs.erase(grantee);
          progress = true;
          ++it;
          continue;
        }
        // Grant ≡ Sync carrying the token: state moves with the lock.
        sync(cp_, devices(), idx(holder->id), idx(grantee), {token});
        record({TransitionLabel::Kind::Sync, 0, "", Value(), holder->id, grantee, {token}, 0,
                ""});
        reqs.erase(grantee);
        auto q2 = world_.queued.find(grantee);
        if (q2 != world_.queued.end()) q2->second.awaiting.erase(token);
        progress = true;
        ++it;
      }
      // Fire or advance queued interactions.
      for (auto it = world_.queued.begin(); it != world_.queued.end();) {
        Replica dev = it->first;
        DeviceState& d = devices().at(idx(dev));
        if (!d.alive) {
          it = world_.queued.erase(it);
          progress = true;
          continue;
        }
        PendingInteraction& q = it->second;
        std::set<std::string> missing;
        for (const auto& t : needed_tokens(q.interaction))
          if (!d.locks.count(t)) missing.insert(t);
        if (missing.empty()) {
          fire(dev, q.interaction, q.arg);
          it = world_.queued.erase(it);
          progress = true;
          continue;
        }
        q.awaiting = missing;
        const std::string& first = *missing.begin();
        if (world_.pending[first].insert(dev).second) progress = true;
        ++it;
      }
    }
  }

  // Crash-stop with idealized accurate failure detection: the timeout fires
  // with the crash and the device's queued interaction aborts. Reassigned
  // tokens land on the lowest live device, which first pools the knowledge
  // of every live device; a protected effect that already escaped through
  // anti-entropy therefore reaches the new holder before it can run a
  // conflicting interaction. Effects no live device saw die with the crash.
  void crash(Replica dev) {
    DeviceState& d = devices().at(idx(dev));
    if (!d.alive) return;
    d.alive = false;
    world_.queued.erase(dev);
    for (auto& [tok, reqs] : world_.pending) reqs.erase(dev);
    std::set<std::string> lost = d.locks;
    Replica lowestLive = 0;
    for (const auto& other : devices())
      if (other.alive) {
        lowestLive = other.id;
        break;
      }
    TransitionLabel label{TransitionLabel::Kind::Crash, dev, "", Value(), 0, 0, {}, 0, ""};
    if (lowestLive != 0 && !lost.empty()) {
      d.locks.clear();
      DeviceState& heir = devices().at(idx(lowestLive));
      for (const auto& t : lost) heir.locks.insert(t);
      for (const auto& other : devices())
        if (other.alive && other.id != heir.id)
          heir.store = merge_store(heir.store, other.store);
      label.lockset = lost;
      label.reassignedTo = lowestLive;
    }
    record(std::move(label));
  }

  // A recovered device rejoins with the merged knowledge of the live
  // devices; its pre-crash unsynced effects are gone (crash-stop).
  void recover(Replica dev) {
    DeviceState& d = devices().at(idx(dev));
    if (d.alive) return;
    Store merged;
    bool any = false;
    for (const auto& other : devices()) {
      if (!other.alive) continue;
      merged = any ? merge_store(merged, other.store) : other.store;
      any = true;
    }
    if (any) d.store = merged;
    d.alive = true;
    record({TransitionLabel::Kind::Recover, dev, "", Value(), 0, 0, {}, 0, ""});
  }
};

}  // namespace

SimWorld sim_init(const CheckedProgram& cp, int devices) {
  SimWorld w;
  w.devices = init_program(cp, devices);
  return w;
}

void sim_apply(const CheckedProgram& cp, const ConflictTable& conflicts, SimWorld& world,
               const ScheduleStep& step, Trace* trace) {
  Driver(cp, conflicts, world, trace).apply(step);
}

std::string sim_world_key(const CheckedProgram& cp, const SimWorld& world) {
  std::ostringstream os;
  for (const auto& d : world.devices) {
    os << "d" << d.id << (d.alive ? "+" : "-") << "[" << store_text(cp, d.store) << "|";
    for (const auto& l : d.locks) os << l << ",";
    os << "]";
  }
  os << "P{";
  for (const auto& [tok, reqs] : world.pending) {
    os << tok << ":";
    for (Replica r : reqs) os << r << ",";
    os << ";";
  }
  os << "}Q{";
  for (const auto& [dev, q] : world.queued) {
    os << dev << ":" << q.interaction << "(" << canonical_text(q.arg) << ");";
  }
  os << "}";
  return os.str();
}

Trace run_schedule(const CheckedProgram& cp, const ConflictTable& conflicts,
                   const Schedule& sched) {
  static const ConflictTable kNoConflicts;
  const ConflictTable& effective = sched.coordination ? conflicts : kNoConflicts;
  SimWorld world = sim_init(cp, sched.devices);
  Trace trace;
  trace.deviceCount = sched.devices;
  trace.initial = world.devices;
  for (const auto& step : sched.steps) sim_apply(cp, effective, world, step, &trace);
  return trace;
}

ValidityReport check_validity(const CheckedProgram& cp, const Trace& trace) {
  ValidityReport rep;
  auto check = [&](const std::vector<DeviceState>& devices, std::size_t step) {
    for (const auto& d : devices) {
      if (auto inv = first_violated_invariant(cp, d.store)) {
        rep.valid = false;
        rep.firstViolationStep = step;
        rep.invariantId = *inv;
        rep.device = d.id;
        return false;
      }
    }
    return true;
  };
  if (!check(trace.initial, 0)) return rep;
  for (std::size_t i = 0; i < trace.steps.size(); ++i)
    if (!check(trace.steps[i].after, i + 1)) return rep;
  return rep;
}

namespace {

// Working transition for the serialization rewrite.
struct WorkT {
  enum class Kind { Interact, Sync } kind;
  Replica device = 0;  // Interact
  std::string interaction;
  Value arg;
  Replica sender = 0, receiver = 0;  // Sync
};

// Raw replay of a (possibly rewritten) working trace: interactions
// re-execute their bodies on the current store without precondition checks;
// the final replay of the produced serialization re-checks everything.
std::vector<std::vector<Store>> raw_replay(const CheckedProgram& cp,
                                           const std::vector<DeviceState>& initial,
                                           const std::vector<WorkT>& w) {
  std::vector<Store> current;
  for (const auto& d : initial) current.push_back(d.store);
  std::vector<std::vector<Store>> states;  // states[k] = stores BEFORE w[k]
  states.reserve(w.size() + 1);
  for (const auto& t : w) {
    states.push_back(current);
    if (t.kind == WorkT::Kind::Sync) {
      std::size_t r = t.receiver - 1, s = t.sender - 1;
      current[r] = merge_store(current[r], current[s]);
    } else {
      const InteractionDecl* d = cp.executable(t.interaction);
      std::size_t ix = t.device - 1;
      Universe u = Universe::active_domain(cp, current[ix]);
      u.add_value(d->argType, t.arg);
      EvalCtx ctx(cp, current[ix], t.device, &u);
      Value result = eval_clause(ctx, *d, *d->executes, t.arg);
      std::vector<MergeValue> values;
      if (d->modifies.size() == 1) values.push_back(std::get<MergeValue>(result.v));
      else
        for (const Value& item : std::get<TupleValue>(result.v).items)
          values.push_back(std::get<MergeValue>(item.v));
      current[ix] = update_store(cp, current[ix], d->modifies, values);
    }
  }
  states.push_back(current);
  return states;
}

}  // namespace

namespace {
Serialization serialize_device_inner(const CheckedProgram& cp, const Trace& trace,
                                     Replica device);
}

Serialization serialize_device(const CheckedProgram& cp, const Trace& trace,
                               Replica device) {
  try {
    return serialize_device_inner(cp, trace, device);
  } catch (const LoreError& e) {
    Serialization out;
    out.whyNot = std::string("rewriting failed: ") + e.what();
    return out;
  }
}

namespace {

Serialization serialize_device_inner(const CheckedProgram& cp, const Trace& trace,
                                     Replica device) {
  Serialization out;
  std::vector<WorkT> w;
  for (const auto& step : trace.steps) {
    switch (step.label.kind) {
      case TransitionLabel::Kind::Interact:
        w.push_back({WorkT::Kind::Interact, step.label.device, step.label.interaction,
                     step.label.arg, 0, 0});
        break;
      case TransitionLabel::Kind::Sync:
        w.push_back({WorkT::Kind::Sync, 0, "", Value(), step.label.sender,
                     step.label.receiver});
        break;
      case TransitionLabel::Kind::Refused:
      case TransitionLabel::Kind::Queued:
        break;
      case TransitionLabel::Kind::Crash:
      case TransitionLabel::Kind::Recover:
        out.whyNot = "traces with crash or recover transitions are not serialized";
        return out;
    }
  }

  const Store& target = trace.final_state().at(device - 1).store;
  Replica cur = device;
  std::vector<SerStep> steps;
  std::size_t cap = (w.size() + 2) * (w.size() + 2) * 4 + 64;

  while (!w.empty()) {
    if (cap-- == 0) {
      out.whyNot = "rewriting iteration cap exceeded";
      return out;
    }
    auto states = raw_replay(cp, trace.initial, w);
    const WorkT& t = w.back();
    if (t.kind == WorkT::Kind::Interact) {
      if (t.device == cur) {
        steps.insert(steps.begin(), {t.device, t.interaction, t.arg});
      }
      w.pop_back();
      continue;
    }
    if (t.receiver != cur) {
      w.pop_back();
      continue;
    }
    // Sync into the chosen device.
    const Store& senderPre = states[w.size() - 1][t.sender - 1];
    const Store& curPre = states[w.size() - 1][cur - 1];
    if (leq_store(senderPre, curPre)) {  // no new information
      w.pop_back();
      continue;
    }
    if (leq_store(curPre, senderPre)) {  // all changes are on the sender
      Replica next = t.sender;
      w.pop_back();
      cur = next;
      continue;
    }
    // Concurrent changes on both sides: find what produced cur's state.
    std::ptrdiff_t k = -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(w.size()) - 2; i >= 0; --i) {
      const WorkT& c = w[static_cast<std::size_t>(i)];
      if ((c.kind == WorkT::Kind::Interact && c.device == cur) ||
          (c.kind == WorkT::Kind::Sync && c.receiver == cur)) {
        k = i;
        break;
      }
    }
    if (k < 0) {
      out.whyNot = "device has concurrent changes with no producing transition";
      return out;
    }
    WorkT producer = w[static_cast<std::size_t>(k)];
    if (producer.kind == WorkT::Kind::Interact) {
      // Reorder the interaction past the sync (confluence) and serialize it.
      steps.insert(steps.begin(), {producer.device, producer.interaction, producer.arg});
      w.erase(w.begin() + k);
      continue;
    }
    if (producer.sender == t.sender) {
      // Same device synchronized twice with no changes to cur in between;
      // the earlier sync is absorbed by the later one (merge idempotence).
      out.usedIdempotenceShortcut = true;
      w.erase(w.begin() + k);
      continue;
    }
    // Redirect the third device's sync into the current sender.
    w[static_cast<std::size_t>(k)].receiver = t.sender;
  }

  // Final replay: a legal Interact chain from the initial store, dots minted
  // by each step's original device so the result is structurally comparable.
  Store replay = trace.initial.at(0).store;
  for (const auto& s : steps) {
    const InteractionDecl* d = cp.executable(s.interaction);
    Universe u = Universe::active_domain(cp, replay);
    u.add_value(d->argType, s.arg);
    EvalCtx ctx(cp, replay, s.device, &u);
    for (const auto& c : d->requiresClauses) {
      if (!eval_clause(ctx, *d, *c, s.arg).as_bool()) {
        out.whyNot = "replay precondition of '" + s.interaction + "' fails";
        return out;
      }
    }
    Value result = eval_clause(ctx, *d, *d->executes, s.arg);
    std::vector<MergeValue> values;
    if (d->modifies.size() == 1) values.push_back(std::get<MergeValue>(result.v));
    else
      for (const Value& item : std::get<TupleValue>(result.v).items)
        values.push_back(std::get<MergeValue>(item.v));
    Store post = update_store(cp, replay, d->modifies, values);
    Universe u2 = Universe::active_domain(cp, post);
    u2.add_value(d->argType, s.arg);
    EvalCtx ctx2(cp, post, s.device, &u2);
    for (const auto& c : d->ensuresClauses) {
      if (!eval_clause(ctx2, *d, *c, s.arg).as_bool()) {
        out.whyNot = "replay postcondition of '" + s.interaction + "' fails";
        return out;
      }
    }
    replay = std::move(post);
  }
  for (std::size_t i = 0; i < replay.size(); ++i) {
    if (!(replay[i] == target[i])) {
      out.whyNot = "replayed store differs from the device's final store";
      return out;
    }
  }
  out.ok = true;
  out.steps = std::move(steps);
  return out;
}

}  // namespace

std::string trace_log(const CheckedProgram& cp, const Trace& trace) {
  std::ostringstream os;
  os << "step 0: init devices=" << trace.deviceCount;
  for (const auto& d : trace.initial) os << " d" << d.id << "=" << std::hex << store_digest(cp, d.store) << std::dec;
  os << "\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    os << "step " << (i + 1) << ": ";
    switch (s.label.kind) {
      case TransitionLabel::Kind::Interact:
        os << "interact d" << s.label.device << " " << s.label.interaction << " "
           << canonical_text(s.label.arg);
        break;
      case TransitionLabel::Kind::Sync: {
        os << "sync d" << s.label.sender << "->d" << s.label.receiver << " locks={";
        bool first = true;
        for (const auto& l : s.label.lockset) {
          if (!first) os << ",";
          first = false;
          os << l;
        }
        os << "}";
        break;
      }
      case TransitionLabel::Kind::Crash:
        os << "crash d" << s.label.device;
        if (s.label.reassignedTo)
          os << " tokens->d" << s.label.reassignedTo;
        break;
      case TransitionLabel::Kind::Recover: os << "recover d" << s.label.device; break;
      case TransitionLabel::Kind::Refused:
        os << "refused d" << s.label.device << " " << s.label.interaction << " ("
           << s.label.refusalReason << ")";
        break;
      case TransitionLabel::Kind::Queued:
        os << "queued d" << s.label.device << " " << s.label.interaction;
        break;
    }
    os << " |";
    for (std::size_t di = 0; di < s.after.size(); ++di) {
      os << " d" << s.after[di].id << "={";
      bool first = true;
      for (const auto& l : s.after[di].locks) {
        if (!first) os << ",";
        first = false;
        os << l;
      }
      os << "}@" << std::hex << s.digests[di] << std::dec;
    }
    os << "\n";
  }
  return os.str();
}

std::string trace_to_json(const CheckedProgram& cp, const Trace& trace,
                          const std::string& programPath) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    json j;
    switch (s.label.kind) {
      case TransitionLabel::Kind::Interact:
        j = {{"type", "interact"},
             {"device", s.label.device},
             {"interaction", s.label.interaction},
             {"arg", json::parse(value_to_json(s.label.arg))}};
        break;
      case TransitionLabel::Kind::Sync: {
        json ls = json::array();
        for (const auto& l : s.label.lockset) ls.push_back(l);
        j = {{"type", "sync"},
             {"from", s.label.sender},
             {"to", s.label.receiver},
             {"lockset", ls}};
        break;
      }
      case TransitionLabel::Kind::Crash: {
        json ls = json::array();
        for (const auto& l : s.label.lockset) ls.push_back(l);
        j = {{"type", "crash"}, {"device", s.label.device}, {"lockset", ls},
             {"reassignedTo", s.label.reassignedTo}};
        break;
      }
      case TransitionLabel::Kind::Recover:
        j = {{"type", "recover"}, {"device", s.label.device}};
        break;
      case TransitionLabel::Kind::Refused:
        j = {{"type", "refused"},
             {"device", s.label.device},
             {"interaction", s.label.interaction},
             {"arg", json::parse(value_to_json(s.label.arg))},
             {"reason", s.label.refusalReason}};
        break;
      case TransitionLabel::Kind::Queued:
        j = {{"type", "queued"},
             {"device", s.label.device},
             {"interaction", s.label.interaction},
             {"arg", json::parse(value_to_json(s.label.arg))}};
        break;
    }
    json ds = json::array();
    for (std::uint64_t d : s.digests) ds.push_back(d);
    j["digests"] = ds;
    steps.push_back(j);
  }
  json out = {{"schemaVersion", 1},
              {"program", programPath},
              {"devices", trace.deviceCount},
              {"transitions", steps}};
  return out.dump(2);
}

Trace trace_from_json(const CheckedProgram& cp, const std::string& text) {
  json j = json::parse(text);
  int devices = j.at("devices").get<int>();
  Trace trace;
  trace.deviceCount = devices;
  std::vector<DeviceState> current = init_program(cp, devices);
  trace.initial = current;
  for (const auto& st : j.at("transitions")) {
    std::string type = st.at("type").get<std::string>();
    TransitionLabel label;
    if (type == "interact") {
      label.kind = TransitionLabel::Kind::Interact;
      label.device = st.at("device").get<Replica>();
      label.interaction = st.at("interaction").get<std::string>();
      label.arg = value_from_json_text(st.at("arg").dump());
      ConflictTable none;
      auto refusal =
          interact(cp, current, label.device - 1, label.interaction, label.arg, none);
      if (refusal) throw LoreError("trace replay: recorded interact is not applicable");
    } else if (type == "sync") {
      label.kind = TransitionLabel::Kind::Sync;
      label.sender = st.at("from").get<Replica>();
      label.receiver = st.at("to").get<Replica>();
      for (const auto& l : st.at("lockset")) label.lockset.insert(l.get<std::string>());
      sync(cp, current, label.sender - 1, label.receiver - 1, label.lockset);
    } else if (type == "crash") {
      label.kind = TransitionLabel::Kind::Crash;
      label.device = st.at("device").get<Replica>();
      label.reassignedTo = st.value("reassignedTo", 0u);
      for (const auto& l : st.at("lockset")) label.lockset.insert(l.get<std::string>());
      DeviceState& d = current.at(label.device - 1);
      d.alive = false;
      if (label.reassignedTo) {
        DeviceState& heir = current.at(label.reassignedTo - 1);
        for (const auto& t : label.lockset) {
          d.locks.erase(t);
          heir.locks.insert(t);
        }
        for (const auto& other : current)
          if (other.alive && other.id != heir.id)
            heir.store = merge_store(heir.store, other.store);
      }
    } else if (type == "recover") {
      label.kind = TransitionLabel::Kind::Recover;
      label.device = st.at("device").get<Replica>();
      DeviceState& d = current.at(label.device - 1);
      Store merged;
      bool any = false;
      for (const auto& other : current) {
        if (!other.alive) continue;
        merged = any ? merge_store(merged, other.store) : other.store;
        any = true;
      }
      if (any) d.store = merged;
      d.alive = true;
    } else if (type == "refused" || type == "queued") {
      label.kind = type == "refused" ? TransitionLabel::Kind::Refused
                                     : TransitionLabel::Kind::Queued;
      label.device = st.at("device").get<Replica>();
      label.interaction = st.at("interaction").get<std::string>();
      label.arg = value_from_json_text(st.at("arg").dump());
      if (st.contains("reason")) label.refusalReason = st.at("reason").get<std::string>();
    } else {
      throw LoreError("unknown transition type in trace: " + type);
    }
    TraceStep outStep;
    outStep.label = std::move(label);
    outStep.after = current;
    outStep.digests = digests_of(cp, current);
    trace.steps.push_back(std::move(outStep));
  }
  return trace;
}

}  // namespace lore
