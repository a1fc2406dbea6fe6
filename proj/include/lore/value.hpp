#pragma once

// Runtime values and mergeable (CRDT) state. MergeValue and Value are
// mutually recursive: an AWSet stores Values as elements, and a Value can
// hold a MergeValue (the state of a source reactive read in a term).

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace lore {

using Replica = std::uint32_t;
using Counter = std::uint64_t;

struct Dot {
  Replica replica = 0;
  Counter counter = 0;

  friend bool operator==(const Dot& a, const Dot& b) {
    return a.replica == b.replica && a.counter == b.counter;
  }
  friend bool operator<(const Dot& a, const Dot& b) {
    if (a.replica != b.replica) return a.replica < b.replica;
    return a.counter < b.counter;
  }
};

// Causal context compressed to a version vector. Contexts stay gap-free per
// replica because dots are always minted as vv[r]+1 and merges join maxima.
class VersionVector {
 public:
  Counter get(Replica r) const;
  bool contains(const Dot& d) const { return d.counter <= get(d.replica); }
  void bump(const Dot& d);  // requires d.counter == get(d.replica) + 1
  void join(const VersionVector& o);
  bool leq(const VersionVector& o) const;

  const std::vector<std::pair<Replica, Counter>>& entries() const { return entries_; }

  friend bool operator==(const VersionVector& a, const VersionVector& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator<(const VersionVector& a, const VersionVector& b) {
    return a.entries_ < b.entries_;
  }

 private:
  std::vector<std::pair<Replica, Counter>> entries_;  // sorted by replica
};

struct Value;

enum class CrdtKind { AWSet, PNCounter, LWWRegister };

const char* crdt_kind_name(CrdtKind k);

// Add-wins set over dotted entries (optimized OR-set). `add` unions a fresh
// dot into the element's dot set; `remove` drops all currently held dots of
// the element; the context only grows.
struct AWSetState {
  std::vector<std::pair<Value, std::vector<Dot>>> entries;  // sorted by element
  VersionVector ctx;
};

struct PNCounterState {
  std::vector<std::pair<Replica, std::uint64_t>> incs;  // sorted
  std::vector<std::pair<Replica, std::uint64_t>> decs;
};

struct LWWState {
  std::vector<Value> slot;  // empty = bottom, else exactly one value
  Counter stamp = 0;
  Replica writer = 0;
};

struct MergeValue {
  CrdtKind kind = CrdtKind::AWSet;
  AWSetState aw;
  PNCounterState pn;
  LWWState lww;
};

struct RecordValue {
  std::uint32_t type = 0;  // index into the record-type registry
  std::vector<Value> fields;
};

struct TupleValue {
  std::vector<Value> items;
};

struct SetValue {
  std::vector<Value> elems;  // sorted, unique
};

struct Term;
struct ClosureValue {
  const Term* lambda = nullptr;
  std::shared_ptr<std::vector<Value>> env;  // captured stack
};

struct Value {
  std::variant<std::monostate, bool, std::int64_t, std::string, RecordValue,
               TupleValue, SetValue, MergeValue, ClosureValue>
      v;

  Value() = default;
  explicit Value(bool b) : v(b) {}
  explicit Value(std::int64_t i) : v(i) {}
  explicit Value(std::string s) : v(std::move(s)) {}
  explicit Value(MergeValue m) : v(std::move(m)) {}

  bool is_unit() const { return std::holds_alternative<std::monostate>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v); }
  bool as_bool() const { return std::get<bool>(v); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v); }
};

// Total order used for canonical set layout and deterministic enumeration.
int compare(const Value& a, const Value& b);
int compare(const MergeValue& a, const MergeValue& b);

inline bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
inline bool operator!=(const Value& a, const Value& b) { return compare(a, b) != 0; }
inline bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }

inline bool operator==(const MergeValue& a, const MergeValue& b) { return compare(a, b) == 0; }
inline bool operator!=(const MergeValue& a, const MergeValue& b) { return compare(a, b) != 0; }
inline bool operator<(const MergeValue& a, const MergeValue& b) { return compare(a, b) < 0; }

// Set helpers (sorted unique vectors).
void set_insert(std::vector<Value>& elems, const Value& v);
bool set_contains(const std::vector<Value>& elems, const Value& v);

}  // namespace lore
