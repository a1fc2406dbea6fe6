#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lore/runtime.hpp"
#include "lore/parser.hpp"
#include "test_helpers.hpp"

using namespace lore;
using lore::test::appointment;

namespace {

ConflictTable calendar_conflicts() {
  ConflictTable t;
  t.add_pair("add_vacation", "add_vacation");
  return t;
}

std::int64_t remaining(const CheckedProgram& cp, const Store& s) {
  const DerivedDecl& d = cp.derived(cp.derivedIndex.at("remaining_vacation"));
  EvalCtx ctx(cp, s);
  Env env;
  return eval_term(ctx, *d.body, env).as_int();
}

}  // namespace

TEST_CASE("init gives every token to device 1 and shares the initial store") {
  CheckedProgram cp = lore::test::load_calendar();
  auto devices = init_program(cp, 3);
  REQUIRE(devices.size() == 3);
  CHECK(devices[0].locks == std::set<std::string>({"add_vacation", "add_work"}));
  CHECK(devices[1].locks.empty());
  CHECK(devices[2].locks.empty());
  for (const auto& d : devices) {
    CHECK(d.store == devices[0].store);
    CHECK_FALSE(first_violated_invariant(cp, d.store).has_value());
  }
  auto single = init_program(cp, 1);
  CHECK(single[0].locks.size() == 2);
}

TEST_CASE("interact applies the rule on the executing device only") {
  CheckedProgram cp = lore::test::load_calendar();
  ConflictTable conflicts = calendar_conflicts();
  auto devices = init_program(cp, 2);

  // D1 holds all locks: the 20-day vacation goes through and the derived
  // remaining_vacation drops to 10.
  auto r = interact(cp, devices, 0, "add_vacation", appointment(1, 0, 20), conflicts);
  CHECK_FALSE(r.has_value());
  CHECK(remaining(cp, devices[0].store) == 10);
  CHECK(remaining(cp, devices[1].store) == 30);  // untouched

  // D2 without the token is refused.
  auto r2 = interact(cp, devices, 1, "add_vacation", appointment(2, 0, 12), conflicts);
  REQUIRE(r2.has_value());
  CHECK(r2->reason == Refusal::Reason::MissingLocks);

  // add_work has no conflicts, so D2 may run it lock-free.
  auto r3 = interact(cp, devices, 1, "add_work", appointment(3, 1, 3), conflicts);
  CHECK_FALSE(r3.has_value());

  // Precondition refusals do not change the store.
  Store before = devices[1].store;
  auto r4 = interact(cp, devices, 1, "add_work", appointment(3, 1, 3), conflicts);
  REQUIRE(r4.has_value());
  CHECK(r4->reason == Refusal::Reason::PreconditionFalse);  // duplicate element
  CHECK(devices[1].store == before);

  // Partial interactions are rejected at apply time.
  auto r5 = interact(cp, devices, 0, "add_appointment", appointment(4, 0, 1), conflicts);
  REQUIRE(r5.has_value());
  CHECK(r5->reason == Refusal::Reason::NotExecutable);
}

TEST_CASE("a false postcondition is a hard runtime fault") {
  CheckedProgram cp = load_program(
      "type Calendar = AWSet[Appointment]\n"
      "val a: Source[Calendar] = Source(AWSet())\n"
      "val bogus: Unit = Interaction[Calendar][Appointment]\n"
      "  .modifies(a)\n"
      "  .executes{ c => x => c.add(x) }\n"
      "  .ensures{ c => x => false }\n");
  auto devices = init_program(cp, 1);
  ConflictTable none;
  CHECK_THROWS_AS(interact(cp, devices, 0, "bogus", appointment(1, 0, 1), none),
                  PostconditionFalse);
}

TEST_CASE("sync merges state and moves locks atomically") {
  CheckedProgram cp = lore::test::load_calendar();
  ConflictTable conflicts = calendar_conflicts();
  auto devices = init_program(cp, 2);
  REQUIRE_FALSE(
      interact(cp, devices, 0, "add_vacation", appointment(1, 0, 20), conflicts));

  // Empty lockset: anti-entropy only.
  sync(cp, devices, 0, 1, {});
  CHECK(remaining(cp, devices[1].store) == 10);
  CHECK(devices[0].locks.size() == 2);
  CHECK(devices[1].locks.empty());

  // Token moves with the state; the receiver can now run the interaction.
  sync(cp, devices, 0, 1, {"add_vacation"});
  CHECK(devices[0].locks == std::set<std::string>{"add_work"});
  CHECK(devices[1].locks == std::set<std::string>{"add_vacation"});
  auto r = interact(cp, devices, 1, "add_vacation", appointment(2, 0, 5), conflicts);
  CHECK_FALSE(r.has_value());

  // Sending a token you do not hold is an error and changes nothing.
  auto locksBefore0 = devices[0].locks;
  CHECK_THROWS_AS(sync(cp, devices, 0, 1, {"add_vacation"}), LockNotHeld);
  CHECK(devices[0].locks == locksBefore0);
}

TEST_CASE("sync keeps the sender's store unchanged and is upward monotone") {
  CheckedProgram cp = lore::test::load_calendar();
  ConflictTable conflicts;
  auto devices = init_program(cp, 2);
  REQUIRE_FALSE(interact(cp, devices, 0, "add_work", appointment(1, 0, 2), conflicts));
  REQUIRE_FALSE(interact(cp, devices, 1, "add_work", appointment(2, 0, 2), conflicts));
  Store sender = devices[0].store;
  Store receiverBefore = devices[1].store;
  sync(cp, devices, 0, 1, {});
  CHECK(devices[0].store == sender);
  CHECK(leq_store(sender, devices[1].store));
  CHECK(leq_store(receiverBefore, devices[1].store));
}

TEST_CASE("interact moves the executing device weakly upward") {
  CheckedProgram cp = lore::test::load_calendar();
  ConflictTable conflicts;
  auto devices = init_program(cp, 1);
  for (int i = 1; i <= 4; ++i) {
    Store before = devices[0].store;
    auto r = interact(cp, devices, 0, "add_work", appointment(i, 0, 2), conflicts);
    CHECK_FALSE(r.has_value());
    CHECK(leq_store(before, devices[0].store));
  }
}

TEST_CASE("protocol node: requests park, releases grant to the lowest id") {
  ProtocolNode holder;
  holder.id = 1;
  auto none = lock_protocol_step(holder, {TokenMessage::Kind::Request, "t", 3});
  CHECK(none.empty());
  lock_protocol_step(holder, {TokenMessage::Kind::Request, "t", 2});
  auto out = lock_protocol_step(holder, {TokenMessage::Kind::Release, "t", 0});
  REQUIRE(out.size() == 1);
  CHECK(out[0].kind == TokenMessage::Kind::Grant);
  CHECK(out[0].device == 2);  // lowest requester id first
  auto out2 = lock_protocol_step(holder, {TokenMessage::Kind::Release, "t", 0});
  REQUIRE(out2.size() == 1);
  CHECK(out2[0].device == 3);
  CHECK(lock_protocol_step(holder, {TokenMessage::Kind::Release, "t", 0}).empty());
}

TEST_CASE("protocol node: grants advance multi-token acquisition in order") {
  ProtocolNode node;
  node.id = 2;
  node.queued = PendingInteraction{"x", Value(), {"a", "b", "c"}};
  auto out = lock_protocol_step(node, {TokenMessage::Kind::Grant, "a", 2});
  REQUIRE(out.size() == 1);
  CHECK(out[0].kind == TokenMessage::Kind::Request);
  CHECK(out[0].token == "b");  // ascending token order
  auto out2 = lock_protocol_step(node, {TokenMessage::Kind::Grant, "b", 2});
  REQUIRE(out2.size() == 1);
  CHECK(out2[0].token == "c");
  CHECK(lock_protocol_step(node, {TokenMessage::Kind::Grant, "c", 2}).empty());
  CHECK(node.queued->awaiting.empty());
}

TEST_CASE("protocol node: a timeout clears the dead device's requests") {
  ProtocolNode node;
  node.id = 1;
  lock_protocol_step(node, {TokenMessage::Kind::Request, "t", 2});
  lock_protocol_step(node, {TokenMessage::Kind::Request, "t", 3});
  lock_protocol_step(node, {TokenMessage::Kind::TimeoutFired, "", 2});
  auto out = lock_protocol_step(node, {TokenMessage::Kind::Release, "t", 0});
  REQUIRE(out.size() == 1);
  CHECK(out[0].device == 3);
}
