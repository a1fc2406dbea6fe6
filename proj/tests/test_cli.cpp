#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "test_helpers.hpp"

using nlohmann::json;

namespace {

struct ToolRun {
  int exitCode = 0;
  std::string out;
};

ToolRun run_tool(const std::string& args) {
  std::string path = "/tmp/lore_cli_test_out.txt";
  std::string cmd = std::string(LORE_TOOL) + " " + args + " > " + path + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  ToolRun r;
  r.exitCode = WEXITSTATUS(rc);
  r.out = lore::test::read_file(path);
  return r;
}

std::string src(const std::string& rel) {
  return std::string(LORE_SOURCE_DIR) + "/" + rel;
}

// Minimal structural validation against our draft-07 subset: checks type,
// required properties, enum membership, and const, recursively.
bool validates(const json& schema, const json& value, std::string& why) {
  if (schema.contains("const") && value != schema["const"]) {
    why = "const mismatch";
    return false;
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"])
      if (e == value) found = true;
    if (!found) {
      why = "enum mismatch: " + value.dump();
      return false;
    }
  }
  if (schema.contains("type")) {
    std::string t = schema["type"].get<std::string>();
    bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
              (t == "string" && value.is_string()) ||
              (t == "integer" && value.is_number_integer()) ||
              (t == "boolean" && value.is_boolean());
    if (!ok) {
      why = "expected " + t + ", got " + value.dump().substr(0, 40);
      return false;
    }
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& req : schema["required"]) {
        if (!value.contains(req.get<std::string>())) {
          why = "missing required key " + req.get<std::string>();
          return false;
        }
      }
    }
    if (schema.contains("properties")) {
      for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
        if (value.contains(it.key())) {
          if (!validates(it.value(), value[it.key()], why)) {
            why = it.key() + ": " + why;
            return false;
          }
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (const auto& item : value) {
      if (!validates(schema["items"], item, why)) {
        why = "item: " + why;
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("check: calendar exits 0 and prints the conflict table") {
  ToolRun r = run_tool("check " + src("corpus/calendar.lore"));
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("add_vacation -> {add_vacation}") != std::string::npos);
  CHECK(r.out.find("add_work -> {}") != std::string::npos);
}

TEST_CASE("check: a preservation failure exits 1 with a witness") {
  std::string text = lore::test::corpus("calendar.lore");
  std::string needle = "  .requires{ cal => a => remaining_vacation - a.days >= 0 }\n";
  auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.erase(pos, needle.size());
  std::ofstream("/tmp/lore_cli_broken.lore") << text;
  ToolRun r = run_tool("check /tmp/lore_cli_broken.lore");
  CHECK(r.exitCode == 1);
  CHECK(r.out.find("refuted") != std::string::npos);
  CHECK(r.out.find("rec0(1,0,31)") != std::string::npos);  // the 31-day witness
}

TEST_CASE("check: malformed input exits 2") {
  std::ofstream("/tmp/lore_cli_malformed.lore") << "val x: Source[ = nonsense\n";
  ToolRun r = run_tool("check /tmp/lore_cli_malformed.lore");
  CHECK(r.exitCode == 2);
}

TEST_CASE("check --format json validates against the shipped schema") {
  ToolRun r = run_tool("check " + src("corpus/calendar.lore") + " --format json");
  REQUIRE(r.exitCode == 0);
  json report = json::parse(r.out);
  json schema = json::parse(lore::test::read_file(src("docs/schemas/check-report.schema.json")));
  std::string why;
  CHECK_MESSAGE(validates(schema, report, why), why);
}

TEST_CASE("simulate: the anomaly script reports the violation step and exits 1") {
  ToolRun r = run_tool("simulate " + src("corpus/calendar.lore") + " --script " +
                       src("corpus/schedules/anomaly.json") + " --no-coordination");
  CHECK(r.exitCode == 1);
  CHECK(r.out.find("invariant 2 violated at step 3") != std::string::npos);
}

TEST_CASE("simulate: identical seeds give identical output") {
  std::string args = "simulate " + src("corpus/calendar.lore") + " --seed 42 --devices 3";
  ToolRun a = run_tool(args);
  ToolRun b = run_tool(args);
  CHECK(a.exitCode == 0);
  CHECK(a.out == b.out);
  ToolRun c = run_tool("simulate " + src("corpus/calendar.lore") + " --seed 43 --devices 3");
  CHECK(a.out != c.out);
}

TEST_CASE("simulate --format json validates against the shipped schema") {
  ToolRun r = run_tool("simulate " + src("corpus/calendar.lore") +
                       " --seed 7 --devices 2 --format json");
  REQUIRE(r.exitCode == 0);
  json report = json::parse(r.out);
  json schema =
      json::parse(lore::test::read_file(src("docs/schemas/simulate-report.schema.json")));
  std::string why;
  CHECK_MESSAGE(validates(schema, report, why), why);
}

TEST_CASE("trace export validates and serialize replays it") {
  ToolRun sim = run_tool("simulate " + src("corpus/calendar.lore") +
                         " --seed 9 --devices 2 --trace-out /tmp/lore_cli_trace.json");
  REQUIRE(sim.exitCode == 0);
  json trace = json::parse(lore::test::read_file("/tmp/lore_cli_trace.json"));
  json schema = json::parse(lore::test::read_file(src("docs/schemas/trace.schema.json")));
  std::string why;
  CHECK_MESSAGE(validates(schema, trace, why), why);

  ToolRun ser = run_tool("serialize /tmp/lore_cli_trace.json");
  CHECK(ser.exitCode == 0);
  CHECK(ser.out.find("device 1: serializable") != std::string::npos);
  CHECK(ser.out.find("device 2: serializable") != std::string::npos);
}

TEST_CASE("serialize flags the uncoordinated anomaly trace") {
  ToolRun sim = run_tool("simulate " + src("corpus/calendar.lore") + " --script " +
                         src("corpus/schedules/anomaly.json") +
                         " --no-coordination --trace-out /tmp/lore_cli_anomaly_trace.json");
  REQUIRE(sim.exitCode == 1);
  ToolRun ser = run_tool("serialize /tmp/lore_cli_anomaly_trace.json");
  CHECK(ser.exitCode == 1);
  CHECK(ser.out.find("NoSerialization") != std::string::npos);
}

TEST_CASE("emit-smt writes five files for the calendar corpus") {
  int rcPrep = std::system("rm -rf /tmp/lore_cli_smt && mkdir -p /tmp/lore_cli_smt");
  REQUIRE(rcPrep == 0);
  ToolRun r = run_tool("emit-smt " + src("corpus/calendar.lore") + " --out-dir /tmp/lore_cli_smt");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("5 file(s) written") != std::string::npos);
  std::string listing = "/tmp/lore_cli_smt_ls.txt";
  int rcList = std::system(("ls /tmp/lore_cli_smt/*.smt2 | wc -l > " + listing).c_str());
  REQUIRE(rcList == 0);
  int count = std::stoi(lore::test::read_file(listing));
  CHECK(count == 5);
}

TEST_CASE("emit-graph prints DOT with the calendar nodes") {
  ToolRun r = run_tool("emit-graph " + src("corpus/calendar.lore"));
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("digraph") == 0);
  CHECK(r.out.find("remaining_vacation") != std::string::npos);
}

TEST_CASE("schedule fixture validates against the schedule schema") {
  json sched = json::parse(lore::test::read_file(src("corpus/schedules/anomaly.json")));
  json schema = json::parse(lore::test::read_file(src("docs/schemas/schedule.schema.json")));
  std::string why;
  CHECK_MESSAGE(validates(schema, sched, why), why);
}
