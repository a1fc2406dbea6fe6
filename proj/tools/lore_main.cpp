// lore: verifying compiler and deterministic multi-device simulator for
// .lore programs. Subcommands: check, conflicts, simulate, serialize,
// emit-smt, emit-graph.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lore/parser.hpp"
#include "lore/sim.hpp"
#include "lore/smt.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lore;

namespace {

// Exit codes: 0 ok / valid run; 1 preservation failure or observed
// invariant violation or failed serialization; 2 parse or semantic error;
// 3 runtime fault or protocol violation; 4 usage or I/O error.
constexpr int kOk = 0;
constexpr int kAnalysisFailure = 1;
constexpr int kInputError = 2;
constexpr int kRuntimeFault = 3;
constexpr int kUsage = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct BoundFlags {
  BoundConfig cfg;
  void attach(CLI::App* app) {
    app->add_option("--max-set-size", cfg.maxSetSize, "AWSet size bound per source");
    app->add_option("--int-max", cfg.intMax, "integer universe upper bound (exclusive)");
    app->add_option("--int-min", cfg.intMin, "integer universe lower bound");
    app->add_option("--start-max", cfg.apptStartMax, "appointment start bound (exclusive)");
    app->add_option("--end-max", cfg.apptEndMax, "appointment end bound (exclusive)");
    app->add_option("--days", cfg.dayDomain, "appointment day domain for arguments");
    app->add_option("--day-bound", cfg.dayBound, "upper bound on appointment days");
    app->add_option("--max-args", cfg.maxArgs, "argument candidate cap per interaction");
    app->add_option("--max-stores", cfg.maxStores, "enumerated store cap");
    app->add_option("--max-checks", cfg.maxChecks, "enumeration cap per obligation");
  }
};

CheckedProgram load_or_exit(const std::string& path) {
  std::string text = read_file(path);
  try {
    return load_program(text);
  } catch (const LoreError& e) {
    std::cerr << format_error(path, e) << "\n";
    std::exit(kInputError);
  }
}

const char* status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::ProvedBounded: return "proved-bounded";
    case VerdictStatus::Refuted: return "refuted";
    case VerdictStatus::SkippedByOverlap: return "skipped-by-overlap";
  }
  return "?";
}

json witness_json(const Witness& w) {
  json j;
  j["storeI"] = w.storeI;
  if (!w.storeJ.empty()) j["storeJ"] = w.storeJ;
  j["arg1"] = json::parse(value_to_json(w.arg1));
  if (!w.arg2.is_unit()) j["arg2"] = json::parse(value_to_json(w.arg2));
  if (w.invariantId) j["invariant"] = w.invariantId;
  j["detail"] = w.detail;
  return j;
}

json report_json(const CheckReport& rep, const std::string& path) {
  json obligations = json::array();
  for (const auto& v : rep.obligations) {
    json o;
    o["obligation"] = v.obligation;
    o["status"] = status_name(v.status);
    o["checks"] = v.checksRun;
    if (v.witness) o["witness"] = witness_json(*v.witness);
    obligations.push_back(o);
  }
  json conflicts = json::object();
  for (const auto& [a, cs] : rep.conflicts.m) {
    json arr = json::array();
    for (const auto& c : cs) arr.push_back(c);
    conflicts[a] = arr;
  }
  json reaches = json::object();
  for (const auto& [a, rs] : rep.overlap.reaches) {
    json arr = json::array();
    for (const auto& r : rs) arr.push_back(r);
    reaches[a] = arr;
  }
  json invOverlaps = json::object();
  for (const auto& [a, ids] : rep.overlap.invariantOverlaps) {
    json arr = json::array();
    for (int id : ids) arr.push_back(id);
    invOverlaps[a] = arr;
  }
  json pairs = json::array();
  for (const auto& [a, b] : rep.overlap.interactionPairs)
    pairs.push_back(json::array({a, b}));
  return json{{"schemaVersion", 1},
              {"program", path},
              {"preservationOk", rep.preservationOk},
              {"boundsNote", rep.boundsNote},
              {"overlap",
               {{"reaches", reaches},
                {"invariantOverlaps", invOverlaps},
                {"interactionPairs", pairs}}},
              {"obligations", obligations},
              {"conflicts", conflicts}};
}

void print_conflict_table(std::ostream& os, const CheckReport& rep) {
  os << "conflicts:\n";
  for (const auto& [a, cs] : rep.conflicts.m) {
    os << "  " << a << " -> {";
    bool first = true;
    for (const auto& c : cs) {
      if (!first) os << ", ";
      first = false;
      os << c;
    }
    os << "}\n";
  }
}

int cmd_check(const std::string& path, const BoundFlags& bounds, const std::string& format,
              const std::string& reportOut, bool tableOnly) {
  CheckedProgram cp = load_or_exit(path);
  CheckReport rep;
  try {
    rep = check_program(cp, bounds.cfg);
  } catch (const BoundsTooLarge& e) {
    std::cerr << "bounds too large: " << e.what() << "\n";
    return kUsage;
  }
  if (!reportOut.empty()) write_file(reportOut, report_json(rep, path).dump(2));
  if (format == "json") {
    std::cout << report_json(rep, path).dump(2) << "\n";
  } else {
    if (!tableOnly) {
      for (const auto& v : rep.obligations) {
        std::cout << v.obligation << ": " << status_name(v.status);
        if (v.witness) {
          std::cout << " [" << v.witness->detail;
          std::cout << "; device i: " << v.witness->storeI;
          if (!v.witness->storeJ.empty()) std::cout << "; device j: " << v.witness->storeJ;
          std::cout << "; arg1 " << canonical_text(v.witness->arg1);
          if (!v.witness->arg2.is_unit())
            std::cout << "; arg2 " << canonical_text(v.witness->arg2);
          std::cout << "]";
        }
        std::cout << "\n";
      }
      std::cout << "note: " << rep.boundsNote << "\n";
    }
    print_conflict_table(std::cout, rep);
  }
  return rep.preservationOk ? kOk : kAnalysisFailure;
}

int cmd_simulate(const std::string& path, const BoundFlags& bounds, std::uint64_t seed,
                 int devices, int steps, bool noCoordination, const std::string& script,
                 const std::string& traceOut, const std::string& format) {
  CheckedProgram cp = load_or_exit(path);
  ConflictTable conflicts;
  bool coordination = !noCoordination;
  if (coordination) {
    try {
      conflicts = compute_conflicts(cp, bounds.cfg);
    } catch (const PreservationFailed& e) {
      std::cerr << e.what() << "\n";
      return kAnalysisFailure;
    } catch (const BoundsTooLarge& e) {
      std::cerr << "bounds too large: " << e.what() << "\n";
      return kUsage;
    }
  }
  Schedule sched;
  if (!script.empty()) {
    sched = schedule_from_json(read_file(script));
    if (noCoordination) sched.coordination = false;
  } else {
    RandomScheduleOptions opt;
    opt.devices = devices;
    opt.steps = steps;
    opt.coordination = coordination;
    opt.bounds = bounds.cfg;
    sched = random_schedule(cp, seed, opt);
    sched.coordination = coordination;
  }
  Trace trace;
  try {
    trace = run_schedule(cp, conflicts, sched);
  } catch (const RuntimeFault& e) {
    std::cerr << "runtime fault: " << e.what() << "\n";
    return kRuntimeFault;
  }
  ValidityReport validity = check_validity(cp, trace);
  if (!traceOut.empty()) write_file(traceOut, trace_to_json(cp, trace, path));

  if (format == "json") {
    json finals = json::array();
    for (const auto& d : trace.final_state()) {
      json locks = json::array();
      for (const auto& l : d.locks) locks.push_back(l);
      finals.push_back({{"device", d.id},
                        {"alive", d.alive},
                        {"locks", locks},
                        {"store", store_text(cp, d.store)}});
    }
    json out = {{"schemaVersion", 1},
                {"program", path},
                {"steps", trace.steps.size()},
                {"valid", validity.valid},
                {"finalDevices", finals}};
    if (!validity.valid) {
      out["violation"] = {{"step", validity.firstViolationStep},
                          {"invariant", validity.invariantId},
                          {"device", validity.device}};
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << trace_log(cp, trace);
    for (const auto& d : trace.final_state())
      std::cout << "final d" << d.id << ": " << store_text(cp, d.store) << "\n";
    if (validity.valid) {
      std::cout << "all invariants hold in every reachable state\n";
    } else {
      std::cout << "invariant " << validity.invariantId << " violated at step "
                << validity.firstViolationStep << " on device " << validity.device << "\n";
    }
  }
  return validity.valid ? kOk : kAnalysisFailure;
}

int cmd_serialize(const std::string& tracePath, int deviceFlag) {
  std::string text = read_file(tracePath);
  json j = json::parse(text);
  std::string programPath = j.at("program").get<std::string>();
  CheckedProgram cp = load_or_exit(programPath);
  Trace trace = trace_from_json(cp, text);
  bool allOk = true;
  for (int d = 1; d <= trace.deviceCount; ++d) {
    if (deviceFlag != 0 && deviceFlag != d) continue;
    Serialization s = serialize_device(cp, trace, static_cast<Replica>(d));
    std::cout << "device " << d << ": ";
    if (s.ok) {
      std::cout << "serializable via";
      if (s.steps.empty()) std::cout << " (empty sequence)";
      for (const auto& st : s.steps)
        std::cout << " [d" << st.device << " " << st.interaction << " "
                  << canonical_text(st.arg) << "]";
      if (s.usedIdempotenceShortcut) std::cout << " (used idempotence shortcut)";
      std::cout << "\n";
    } else {
      std::cout << "NoSerialization (" << s.whyNot << ")\n";
      allOk = false;
    }
  }
  return allOk ? kOk : kAnalysisFailure;
}

int cmd_emit_smt(const std::string& path, const std::string& outDir) {
  CheckedProgram cp = load_or_exit(path);
  fs::create_directories(outDir.empty() ? "." : outDir);
  std::string stem = fs::path(path).stem().string();
  auto results = emit_all_smt(cp);
  int written = 0;
  for (const auto& r : results) {
    std::string name = r.obligation;
    for (char& c : name)
      if (c == ':') c = '.';
    if (!r.encodable) {
      std::cout << stem << "." << name << ": NotEncodable (" << r.why << ")\n";
      continue;
    }
    fs::path out = fs::path(outDir.empty() ? "." : outDir) / (stem + "." + name + ".smt2");
    write_file(out.string(), r.script);
    std::cout << out.string() << "\n";
    ++written;
  }
  std::cout << written << " file(s) written\n";
  return kOk;
}

int cmd_emit_graph(const std::string& path, const std::string& out) {
  CheckedProgram cp = load_or_exit(path);
  DataflowGraph g = build_graph(cp);
  std::string dot = to_dot(g, cp);
  if (out.empty()) std::cout << dot;
  else write_file(out, dot);
  for (int id : g.constantInvariants)
    std::cerr << "warning: invariant " << id
              << " reads no reactive and overlaps nothing\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifying compiler and deterministic simulator for local-first reactive programs"};
  app.require_subcommand(1);

  std::string path, format = "text", reportOut, script, traceOut, outDir, graphOut;
  std::uint64_t seed = 1;
  int devices = 2, steps = 24, deviceFlag = 0;
  bool noCoordination = false;

  BoundFlags checkBounds, simBounds;

  auto* check = app.add_subcommand("check", "parse, verify obligations, print conflicts");
  check->add_option("program", path)->required();
  check->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  check->add_option("--report", reportOut, "write the JSON report to a file");
  checkBounds.attach(check);

  auto* conflictsCmd = app.add_subcommand("conflicts", "print only the conflict table");
  conflictsCmd->add_option("program", path)->required();
  checkBounds.attach(conflictsCmd);

  auto* sim = app.add_subcommand("simulate", "run a schedule over n devices");
  sim->add_option("program", path)->required();
  sim->add_option("--seed", seed);
  sim->add_option("--devices", devices);
  sim->add_option("--steps", steps);
  sim->add_flag("--no-coordination", noCoordination,
                "run with an empty conflict table (anomaly demos)");
  sim->add_option("--script", script, "scripted schedule JSON instead of a random one");
  sim->add_option("--trace-out", traceOut, "write the trace JSON to a file");
  sim->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  simBounds.attach(sim);

  auto* ser = app.add_subcommand("serialize", "serialization oracle over a trace file");
  ser->add_option("trace", path)->required();
  ser->add_option("--device", deviceFlag, "serialize a single device (default: all)");

  auto* smt = app.add_subcommand("emit-smt", "emit one SMT-LIB file per obligation");
  smt->add_option("program", path)->required();
  smt->add_option("--out-dir", outDir);

  auto* graph = app.add_subcommand("emit-graph", "emit the data-flow graph as DOT");
  graph->add_option("program", path)->required();
  graph->add_option("--out", graphOut);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(path, checkBounds, format, reportOut, false);
    if (conflictsCmd->parsed()) return cmd_check(path, checkBounds, "text", "", true);
    if (sim->parsed())
      return cmd_simulate(path, simBounds, seed, devices, steps, noCoordination, script,
                          traceOut, format);
    if (ser->parsed()) return cmd_serialize(path, deviceFlag);
    if (smt->parsed()) return cmd_emit_smt(path, outDir);
    if (graph->parsed()) return cmd_emit_graph(path, graphOut);
  } catch (const LoreError& e) {
    std::cerr << format_error(path, e) << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
