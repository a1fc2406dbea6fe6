#pragma once

// Replayable schedules: scripted or seeded-random sequences of interaction
// attempts, anti-entropy syncs, protocol pumps, and crash/recover events.

#include <cstdint>
#include <string>
#include <vector>

#include "lore/checker.hpp"
#include "lore/verify.hpp"

namespace lore {

struct ScheduleStep {
  enum class Kind { Attempt, Sync, Pump, Crash, Recover } kind = Kind::Pump;
  Replica device = 0;  // Attempt/Crash/Recover
  std::string interaction;
  Value arg;
  Replica from = 0, to = 0;  // Sync
};

struct Schedule {
  std::uint64_t seed = 0;
  int devices = 2;
  bool coordination = true;
  std::vector<ScheduleStep> steps;
};

// Deterministic xorshift-style generator; identical seeds give identical
// schedules on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

 private:
  std::uint64_t s_;
};

struct RandomScheduleOptions {
  int devices = 3;
  int steps = 24;
  bool coordination = true;
  bool crashes = false;
  // Record-typed arguments get fresh ids from a per-schedule counter so
  // concurrent adds are distinct elements.
  BoundConfig bounds;
};

Schedule random_schedule(const CheckedProgram& cp, std::uint64_t seed,
                         const RandomScheduleOptions& opt);

std::string schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const std::string& text);

std::string value_to_json(const Value& v);
Value value_from_json_text(const std::string& text);

}  // namespace lore
