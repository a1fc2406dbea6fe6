#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lore/parser.hpp"
#include "test_helpers.hpp"

using namespace lore;

TEST_CASE("calendar program parses into the expected shape") {
  Program p = parse_program(lore::test::corpus("calendar.lore"));
  CHECK(p.sources.size() == 2);
  CHECK(p.deriveds.size() == 2);
  REQUIRE(p.interactions.size() == 3);
  CHECK(p.invariants.size() == 2);
  CHECK(p.uiDirectives.size() == 2);

  const InteractionDecl* base = p.find_interaction("add_appointment");
  REQUIRE(base != nullptr);
  CHECK_FALSE(base->complete());  // partial: no modifies
  CHECK(base->requiresClauses.size() == 2);
  CHECK(base->ensuresClauses.size() == 1);

  const InteractionDecl* av = p.find_interaction("add_vacation");
  REQUIRE(av != nullptr);
  CHECK(av->complete());
  CHECK(av->modifies == std::vector<std::string>{"vacation"});
  // Specialization copies the base's clauses and appends its own.
  CHECK(av->requiresClauses.size() == 3);
  CHECK(av->ensuresClauses.size() == 1);

  const InteractionDecl* aw = p.find_interaction("add_work");
  REQUIRE(aw != nullptr);
  CHECK(aw->complete());
  CHECK(aw->modifies == std::vector<std::string>{"work"});
  CHECK(aw->requiresClauses.size() == 2);
}

TEST_CASE("empty input parses to an empty program") {
  Program p = parse_program("");
  CHECK(p.sources.empty());
  CHECK(p.deriveds.empty());
  CHECK(p.interactions.empty());
  CHECK(p.invariants.empty());
}

TEST_CASE("duplicate source names are rejected") {
  std::string text =
      "type Calendar = AWSet[Appointment]\n"
      "val x: Source[Calendar] = Source(AWSet())\n"
      "val x: Source[Calendar] = Source(AWSet())\n";
  CHECK_THROWS_AS(parse_program(text), DuplicateName);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_program("val x: Source[Calendar = Source(AWSet())\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos.line == 1);
    CHECK(e.pos.col > 1);
  }
}

TEST_CASE("unknown base interaction is reported") {
  CHECK_THROWS_AS(parse_program("val x: Unit = nosuch.modifies(work)\n"),
                  UnknownIdentifier);
}

TEST_CASE("resolve_and_check resolves the calendar and finds executables") {
  CheckedProgram cp = lore::test::load_calendar();
  auto names = cp.executable_names();
  REQUIRE(names.size() == 2);
  CHECK(names[0] == "add_vacation");
  CHECK(names[1] == "add_work");
  CHECK(cp.executable("add_appointment") == nullptr);
}

TEST_CASE("self-referential derived is a cycle error") {
  std::string text =
      "val d: Derived[Int] = Derived{ d + 1 }\n";
  CHECK_THROWS_AS(load_program(text), CycleError);
}

TEST_CASE("forward reference between deriveds is rejected") {
  std::string text =
      "type Calendar = AWSet[Appointment]\n"
      "val a: Derived[Int] = Derived{ b + 1 }\n"
      "val b: Derived[Int] = Derived{ 1 }\n";
  CHECK_THROWS_AS(load_program(text), SemanticError);
}

TEST_CASE("executes arity must match the modifies list") {
  std::string text =
      "type Calendar = AWSet[Appointment]\n"
      "val work: Source[Calendar] = Source(AWSet())\n"
      "val vacation: Source[Calendar] = Source(AWSet())\n"
      "val both: Unit = Interaction[Calendar, Calendar][Appointment]\n"
      "  .modifies(work, vacation)\n"
      "  .requires{ w => v => a => true }\n"
      "  .executes{ w => v => a => w.add(a) }\n";
  CHECK_THROWS_AS(load_program(text), ArityError);
}

TEST_CASE("unknown identifiers inside terms are reported") {
  std::string text = "val d: Derived[Int] = Derived{ nope + 1 }\n";
  CHECK_THROWS_AS(load_program(text), UnknownIdentifier);
}

TEST_CASE("type errors are reported") {
  std::string text = "invariant 1 + 2\n";
  CHECK_THROWS_AS(load_program(text), TypeError);
}

TEST_CASE("modifies target must exist and match the declared type") {
  std::string bad =
      "type Calendar = AWSet[Appointment]\n"
      "val work: Source[Calendar] = Source(AWSet())\n"
      "val x: Unit = Interaction[Calendar][Appointment]\n"
      "  .modifies(nowhere)\n"
      "  .requires{ c => a => true }\n"
      "  .executes{ c => a => c.add(a) }\n";
  CHECK_THROWS_AS(load_program(bad), UnknownIdentifier);

  std::string mismatched =
      "val count: Source[PNCounter] = Source(PNCounter(0))\n"
      "val x: Unit = Interaction[AWSet[Appointment]][Appointment]\n"
      "  .modifies(count)\n"
      "  .requires{ c => a => true }\n"
      "  .executes{ c => a => c.add(a) }\n";
  CHECK_THROWS_AS(load_program(mismatched), TypeError);
}

TEST_CASE("explicit .value reads parse and resolve") {
  std::string text =
      "type Calendar = AWSet[Appointment]\n"
      "val work: Source[Calendar] = Source(AWSet())\n"
      "val n: Derived[Int] = Derived{ work.value.toSet.size() }\n";
  CheckedProgram cp = load_program(text);
  CHECK(cp.program.deriveds.size() == 1);
}

TEST_CASE("parse-print round trip is structurally stable") {
  for (const char* name : {"calendar.lore", "calendar-extended.lore", "tpcc-mini.lore"}) {
    CAPTURE(name);
    Program first = parse_program(lore::test::corpus(name));
    std::string printed = pretty_print(first);
    Program second = parse_program(printed);
    CHECK(structurally_equal(first, second));
    // And printing is a fixed point after one round.
    CHECK(pretty_print(second) == printed);
  }
}

TEST_CASE("initial values with elements parse") {
  std::string text = "val districts: Source[AWSet[Int]] = Source(AWSet(1, 2))\n";
  CheckedProgram cp = load_program(text);
  auto elems = awset_elements(cp.program.sources[0].initial);
  REQUIRE(elems.size() == 2);
  CHECK(elems[0].as_int() == 1);
  CHECK(elems[1].as_int() == 2);
}

TEST_CASE("counter and register declarations round-trip") {
  std::string text =
      "val acct: Source[PNCounter] = Source(PNCounter(10))\n"
      "val cursor: Source[LWWRegister[Int]] = Source(LWWRegister(3))\n"
      "val level: Derived[Int] = Derived{ acct.count + cursor.get }\n"
      "invariant acct.count >= 0\n";
  Program first = parse_program(text);
  Program second = parse_program(pretty_print(first));
  CHECK(structurally_equal(first, second));
  CheckedProgram cp = resolve_and_check(first);
  CHECK(pncounter_value(cp.program.sources[0].initial) == 10);
}

TEST_CASE("all corpus programs typecheck") {
  CHECK_NOTHROW(lore::test::load_calendar());
  CHECK_NOTHROW(lore::test::load_extended());
  CHECK_NOTHROW(lore::test::load_tpcc());
}
