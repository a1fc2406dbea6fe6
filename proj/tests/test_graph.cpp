#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lore/graph.hpp"
#include "lore/parser.hpp"
#include "test_helpers.hpp"

using namespace lore;

TEST_CASE("calendar dataflow edges are the derivation relation") {
  CheckedProgram cp = lore::test::load_calendar();
  DataflowGraph g = build_graph(cp);
  CHECK(g.edges.at("work") == std::set<std::string>{"all_appointments"});
  CHECK(g.edges.at("vacation") ==
        std::set<std::string>({"all_appointments", "remaining_vacation"}));
  CHECK(g.invariantReads.at(1) == std::set<std::string>{"all_appointments"});
  CHECK(g.invariantReads.at(2) == std::set<std::string>{"remaining_vacation"});
}

TEST_CASE("a program without deriveds has no edges") {
  CheckedProgram cp = load_program(
      "type Calendar = AWSet[Appointment]\n"
      "val work: Source[Calendar] = Source(AWSet())\n");
  DataflowGraph g = build_graph(cp);
  CHECK(g.edges.empty());
  CHECK(g.nodes == std::vector<std::string>{"work"});
}

TEST_CASE("tpcc graph: districts and history feed district_ytd") {
  CheckedProgram cp = lore::test::load_tpcc();
  DataflowGraph g = build_graph(cp);
  CHECK(g.edges.at("districts").count("district_ytd"));
  CHECK(g.edges.at("history").count("district_ytd"));
}

TEST_CASE("reaches closes the modifies set over the dataflow edges") {
  CheckedProgram cp = lore::test::load_calendar();
  DataflowGraph g = build_graph(cp);
  CHECK(reaches(g, cp, "add_work") ==
        std::set<std::string>({"work", "all_appointments"}));
  // Transitive closure over the graph's edges (vacation -> all_appointments,
  // vacation -> remaining_vacation).
  CHECK(reaches(g, cp, "add_vacation") ==
        std::set<std::string>({"vacation", "all_appointments", "remaining_vacation"}));
  // No modifies, nothing reached.
  CHECK(reaches(g, cp, "add_appointment").empty());
}

TEST_CASE("overlap verdicts for the calendar") {
  CheckedProgram cp = lore::test::load_calendar();
  DataflowGraph g = build_graph(cp);
  CHECK_FALSE(overlaps(g, cp, "add_work", 2));
  CHECK(overlaps(g, cp, "add_work", 1));
  CHECK(overlaps(g, cp, "add_vacation", 2));
  CHECK(overlaps(g, cp, "add_vacation", 1));
}

TEST_CASE("overlapping pairs follow the shared-invariant rule") {
  CheckedProgram cp = lore::test::load_calendar();
  DataflowGraph g = build_graph(cp);
  OverlapReport rep = overlapping_pairs(g, cp);
  CHECK(rep.invariantOverlaps.at("add_vacation") == std::set<int>({1, 2}));
  CHECK(rep.invariantOverlaps.at("add_work") == std::set<int>({1}));
  std::set<std::pair<std::string, std::string>> expect = {
      {"add_vacation", "add_vacation"},
      {"add_vacation", "add_work"},
      {"add_work", "add_work"}};
  CHECK(rep.interactionPairs == expect);
}

TEST_CASE("pruning: disjoint programs generate no pairs") {
  CheckedProgram cp = load_program(
      "type Calendar = AWSet[Appointment]\n"
      "val a: Source[Calendar] = Source(AWSet())\n"
      "val b: Source[Calendar] = Source(AWSet())\n"
      "val touch_a: Unit = Interaction[Calendar][Appointment]\n"
      "  .modifies(a)\n"
      "  .requires{ c => x => !(x in c.toSet) }\n"
      "  .executes{ c => x => c.add(x) }\n"
      "val touch_b: Unit = Interaction[Calendar][Appointment]\n"
      "  .modifies(b)\n"
      "  .requires{ c => x => !(x in c.toSet) }\n"
      "  .executes{ c => x => c.add(x) }\n"
      "invariant forall x: Appointment :: x in a.toSet ==> get_start(x) < get_end(x)\n");
  DataflowGraph g = build_graph(cp);
  OverlapReport rep = overlapping_pairs(g, cp);
  // touch_b modifies only b, which no invariant reads: it pairs with nothing.
  CHECK(rep.invariantOverlaps.at("touch_b").empty());
  CHECK(rep.interactionPairs ==
        std::set<std::pair<std::string, std::string>>{{"touch_a", "touch_a"}});
}

TEST_CASE("reaches is monotone in the modifies set") {
  // touch_both modifies a superset of touch_a's reactives, so it reaches a
  // superset of touch_a's reach.
  CheckedProgram cp = load_program(
      "type Calendar = AWSet[Appointment]\n"
      "val a: Source[Calendar] = Source(AWSet())\n"
      "val b: Source[Calendar] = Source(AWSet())\n"
      "val union_ab: Derived[Set[Appointment]] = Derived{ a.toSet.union(b.toSet) }\n"
      "val touch_a: Unit = Interaction[Calendar][Appointment]\n"
      "  .modifies(a)\n"
      "  .executes{ c => x => c.add(x) }\n"
      "val touch_both: Unit = Interaction[Calendar, Calendar][Appointment]\n"
      "  .modifies(a, b)\n"
      "  .executes{ c => d => x => (c.add(x), d.add(x)) }\n");
  DataflowGraph g = build_graph(cp);
  auto ra = reaches(g, cp, "touch_a");
  auto rb = reaches(g, cp, "touch_both");
  for (const auto& n : ra) CHECK(rb.count(n));
}

TEST_CASE("graph construction is deterministic") {
  CheckedProgram cp1 = lore::test::load_extended();
  CheckedProgram cp2 = lore::test::load_extended();
  DataflowGraph g1 = build_graph(cp1);
  DataflowGraph g2 = build_graph(cp2);
  CHECK(g1.nodes == g2.nodes);
  CHECK(g1.edges == g2.edges);
  CHECK(g1.invariantReads == g2.invariantReads);
  CHECK(to_dot(g1, cp1) == to_dot(g2, cp2));
}

TEST_CASE("constant invariants are flagged as overlapping nothing") {
  CheckedProgram cp = load_program(
      "type Calendar = AWSet[Appointment]\n"
      "val a: Source[Calendar] = Source(AWSet())\n"
      "val touch_a: Unit = Interaction[Calendar][Appointment]\n"
      "  .modifies(a)\n"
      "  .executes{ c => x => c.add(x) }\n"
      "invariant true\n");
  DataflowGraph g = build_graph(cp);
  CHECK(g.constantInvariants == std::vector<int>{1});
  OverlapReport rep = overlapping_pairs(g, cp);
  CHECK(rep.invariantOverlaps.at("touch_a").empty());
}

TEST_CASE("dot output names every reactive") {
  CheckedProgram cp = lore::test::load_calendar();
  DataflowGraph g = build_graph(cp);
  std::string dot = to_dot(g, cp);
  for (const char* n : {"work", "vacation", "all_appointments", "remaining_vacation"})
    CHECK(dot.find(n) != std::string::npos);
  CHECK(dot.find("digraph") == 0);
}
