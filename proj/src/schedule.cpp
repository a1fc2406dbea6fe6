#include "lore/schedule.hpp"

#include <json.hpp>

namespace lore {

using nlohmann::json;

namespace {

json value_to_j(const Value& v) {
  switch (v.v.index()) {
    case 0: return json{{"kind", "unit"}};
    case 1: return json{{"kind", "bool"}, {"value", std::get<bool>(v.v)}};
    case 2: return json{{"kind", "int"}, {"value", std::get<std::int64_t>(v.v)}};
    case 3: return json{{"kind", "string"}, {"value", std::get<std::string>(v.v)}};
    case 4: {
      const auto& r = std::get<RecordValue>(v.v);
      const RecordTypeDef& def = record_registry()[r.type];
      json fields = json::object();
      for (std::size_t i = 0; i < def.fields.size(); ++i)
        fields[def.fields[i].first] = value_to_j(r.fields[i]);
      return json{{"kind", "record"}, {"type", def.name}, {"fields", fields}};
    }
    case 5: {
      json items = json::array();
      for (const Value& x : std::get<TupleValue>(v.v).items) items.push_back(value_to_j(x));
      return json{{"kind", "tuple"}, {"items", items}};
    }
    case 6: {
      json items = json::array();
      for (const Value& x : std::get<SetValue>(v.v).elems) items.push_back(value_to_j(x));
      return json{{"kind", "set"}, {"items", items}};
    }
    default: throw LoreError("value not serializable to JSON");
  }
}

Value value_from_j(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "unit") return Value();
  if (kind == "bool") return Value(j.at("value").get<bool>());
  if (kind == "int") return Value(j.at("value").get<std::int64_t>());
  if (kind == "string") return Value(j.at("value").get<std::string>());
  if (kind == "record") {
    std::string type = j.at("type").get<std::string>();
    const RecordTypeDef* def = find_record(type);
    if (!def) throw LoreError("unknown record type in JSON: " + type);
    RecordValue r;
    r.type = record_index(type);
    for (const auto& [fn, ft] : def->fields) r.fields.push_back(value_from_j(j.at("fields").at(fn)));
    Value v;
    v.v = std::move(r);
    return v;
  }
  if (kind == "tuple") {
    TupleValue t;
    for (const auto& x : j.at("items")) t.items.push_back(value_from_j(x));
    Value v;
    v.v = std::move(t);
    return v;
  }
  if (kind == "set") {
    SetValue s;
    for (const auto& x : j.at("items")) set_insert(s.elems, value_from_j(x));
    Value v;
    v.v = std::move(s);
    return v;
  }
  throw LoreError("unknown JSON value kind: " + kind);
}

}  // namespace

std::string value_to_json(const Value& v) { return value_to_j(v).dump(); }
Value value_from_json_text(const std::string& text) { return value_from_j(json::parse(text)); }

std::string schedule_to_json(const Schedule& s) {
  json steps = json::array();
  for (const auto& st : s.steps) {
    json j;
    switch (st.kind) {
      case ScheduleStep::Kind::Attempt:
        j = {{"type", "attempt"},
             {"device", st.device},
             {"interaction", st.interaction},
             {"arg", value_to_j(st.arg)}};
        break;
      case ScheduleStep::Kind::Sync:
        j = {{"type", "sync"}, {"from", st.from}, {"to", st.to}};
        break;
      case ScheduleStep::Kind::Pump: j = {{"type", "pump"}}; break;
      case ScheduleStep::Kind::Crash: j = {{"type", "crash"}, {"device", st.device}}; break;
      case ScheduleStep::Kind::Recover:
        j = {{"type", "recover"}, {"device", st.device}};
        break;
    }
    steps.push_back(j);
  }
  json out = {{"schemaVersion", 1},
              {"seed", s.seed},
              {"devices", s.devices},
              {"coordination", s.coordination},
              {"steps", steps}};
  return out.dump(2);
}

Schedule schedule_from_json(const std::string& text) {
  json j = json::parse(text);
  Schedule s;
  s.seed = j.value("seed", std::uint64_t(0));
  s.devices = j.at("devices").get<int>();
  s.coordination = j.value("coordination", true);
  for (const auto& st : j.at("steps")) {
    std::string type = st.at("type").get<std::string>();
    ScheduleStep out;
    if (type == "attempt") {
      out.kind = ScheduleStep::Kind::Attempt;
      out.device = st.at("device").get<Replica>();
      out.interaction = st.at("interaction").get<std::string>();
      out.arg = value_from_j(st.at("arg"));
    } else if (type == "sync") {
      out.kind = ScheduleStep::Kind::Sync;
      out.from = st.at("from").get<Replica>();
      out.to = st.at("to").get<Replica>();
    } else if (type == "pump") {
      out.kind = ScheduleStep::Kind::Pump;
    } else if (type == "crash") {
      out.kind = ScheduleStep::Kind::Crash;
      out.device = st.at("device").get<Replica>();
    } else if (type == "recover") {
      out.kind = ScheduleStep::Kind::Recover;
      out.device = st.at("device").get<Replica>();
    } else {
      throw LoreError("unknown schedule step type: " + type);
    }
    s.steps.push_back(std::move(out));
  }
  return s;
}

namespace {

// Random argument for one interaction; record ids come from `freshId` so
// independently generated arguments never collide as set elements.
Value random_arg(Rng& rng, const BoundConfig& bounds, const Type& t, std::int64_t& freshId) {
  switch (t.kind) {
    case TypeKind::Int:
      return Value(bounds.intMin +
                   static_cast<std::int64_t>(rng.below(
                       static_cast<std::uint64_t>(bounds.intMax - bounds.intMin))));
    case TypeKind::Bool: return Value(rng.below(2) == 1);
    case TypeKind::String:
      return Value(bounds.stringUniverse[rng.below(bounds.stringUniverse.size())]);
    case TypeKind::Record: {
      const RecordTypeDef* def = find_record(t.record);
      RecordValue r;
      r.type = record_index(t.record);
      for (const auto& [fn, ft] : def->fields) {
        if (fn == "id") r.fields.push_back(Value(freshId++));
        else if (t.record == "Appointment" && fn == "end") {
          std::int64_t start = r.fields[1].as_int();
          std::int64_t d = bounds.dayDomain.empty()
                               ? 1 + static_cast<std::int64_t>(rng.below(3))
                               : bounds.dayDomain[rng.below(bounds.dayDomain.size())];
          r.fields.push_back(Value(start + d));
        } else {
          r.fields.push_back(random_arg(rng, bounds, ft, freshId));
        }
      }
      Value v;
      v.v = std::move(r);
      return v;
    }
    case TypeKind::Tuple: {
      TupleValue tv;
      for (const Type& it : t.params) tv.items.push_back(random_arg(rng, bounds, it, freshId));
      Value v;
      v.v = std::move(tv);
      return v;
    }
    default: throw LoreError("cannot generate random argument of type " + type_name(t));
  }
}

}  // namespace

Schedule random_schedule(const CheckedProgram& cp, std::uint64_t seed,
                         const RandomScheduleOptions& opt) {
  Rng rng(seed);
  Schedule s;
  s.seed = seed;
  s.devices = opt.devices;
  s.coordination = opt.coordination;
  std::vector<std::string> names = cp.executable_names();
  std::int64_t freshId = 1000;
  for (int i = 0; i < opt.steps; ++i) {
    std::uint64_t roll = rng.below(10);
    if (opt.crashes && roll == 9) {
      ScheduleStep st;
      st.kind = rng.below(2) ? ScheduleStep::Kind::Crash : ScheduleStep::Kind::Recover;
      st.device = static_cast<Replica>(1 + rng.below(static_cast<std::uint64_t>(opt.devices)));
      s.steps.push_back(st);
      continue;
    }
    if (roll < 4 && !names.empty()) {
      ScheduleStep st;
      st.kind = ScheduleStep::Kind::Attempt;
      st.device = static_cast<Replica>(1 + rng.below(static_cast<std::uint64_t>(opt.devices)));
      st.interaction = names[rng.below(names.size())];
      const InteractionDecl* d = cp.executable(st.interaction);
      st.arg = random_arg(rng, opt.bounds, d->argType, freshId);
      s.steps.push_back(st);
      s.steps.push_back({ScheduleStep::Kind::Pump, 0, "", Value(), 0, 0});
      continue;
    }
    if (roll < 7 && opt.devices > 1) {
      ScheduleStep st;
      st.kind = ScheduleStep::Kind::Sync;
      st.from = static_cast<Replica>(1 + rng.below(static_cast<std::uint64_t>(opt.devices)));
      do {
        st.to = static_cast<Replica>(1 + rng.below(static_cast<std::uint64_t>(opt.devices)));
      } while (st.to == st.from);
      s.steps.push_back(st);
      continue;
    }
    s.steps.push_back({ScheduleStep::Kind::Pump, 0, "", Value(), 0, 0});
  }
  return s;
}

}  // namespace lore
