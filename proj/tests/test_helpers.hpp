#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lore/checker.hpp"
#include "lore/crdt.hpp"
#include "lore/schedule.hpp"

namespace lore::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) {
  return std::string(LORE_SOURCE_DIR) + "/corpus/" + name;
}

inline std::string corpus(const std::string& name) { return read_file(corpus_path(name)); }

inline CheckedProgram load_calendar() { return load_program(corpus("calendar.lore")); }
inline CheckedProgram load_extended() {
  return load_program(corpus("calendar-extended.lore"));
}
inline CheckedProgram load_tpcc() { return load_program(corpus("tpcc-mini.lore")); }

inline Value appointment(std::int64_t id, std::int64_t start, std::int64_t end) {
  RecordValue r;
  r.type = record_index("Appointment");
  r.fields = {Value(id), Value(start), Value(end)};
  Value v;
  v.v = std::move(r);
  return v;
}

inline Value record_of(const std::string& type, std::vector<std::int64_t> fields) {
  RecordValue r;
  r.type = record_index(type);
  for (std::int64_t f : fields) r.fields.push_back(Value(f));
  Value v;
  v.v = std::move(r);
  return v;
}

// Random AWSet states over a tiny element pool; branches mint dots at their
// own replica ids so generated pairs are genuine concurrent states.
struct AwsetGen {
  Rng rng;
  std::vector<Value> pool;

  explicit AwsetGen(std::uint64_t seed) : rng(seed) {
    for (std::int64_t i = 1; i <= 4; ++i) pool.push_back(Value(i));
  }

  MergeValue base() {
    MergeValue m = awset_empty();
    std::uint64_t ops = rng.below(4);
    for (std::uint64_t i = 0; i < ops; ++i)
      m = awset_add(m, pool[rng.below(pool.size())], awset_next_dot(m, 0));
    return m;
  }

  MergeValue mutate(MergeValue m, Replica replica) {
    std::uint64_t ops = rng.below(5);
    for (std::uint64_t i = 0; i < ops; ++i) {
      if (rng.below(3) == 0 && !m.aw.entries.empty()) {
        auto elems = awset_elements(m);
        m = awset_remove(m, elems[rng.below(elems.size())]);
      } else {
        m = awset_add(m, pool[rng.below(pool.size())], awset_next_dot(m, replica));
      }
    }
    return m;
  }
};

inline MergeValue random_pncounter(Rng& rng) {
  MergeValue m = pncounter_zero();
  for (Replica r = 1; r <= 3; ++r) {
    if (rng.below(2)) m = pncounter_inc(m, r, rng.below(5));
    if (rng.below(2)) m = pncounter_dec(m, r, rng.below(3));
  }
  return m;
}

}  // namespace lore::test
