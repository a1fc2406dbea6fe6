#pragma once

// State-based merge semantics for the three supported CRDTs, plus the
// induced partial order and a canonical text form for goldens and digests.

#include <stdexcept>
#include <string>

#include "lore/value.hpp"

namespace lore {

struct CrdtError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct KindMismatch : CrdtError {
  using CrdtError::CrdtError;
};
struct StaleDot : CrdtError {
  using CrdtError::CrdtError;
};

// Least upper bound in the value's semilattice. Both arguments must share a
// kind. Results are in canonical form.
MergeValue merge_value(const MergeValue& a, const MergeValue& b);

// a <= b iff merge(a, b) == b structurally.
bool leq_value(const MergeValue& a, const MergeValue& b);

MergeValue awset_empty();
MergeValue awset_add(const MergeValue& s, const Value& e, const Dot& dot);
MergeValue awset_remove(const MergeValue& s, const Value& e);
std::vector<Value> awset_elements(const MergeValue& s);
bool awset_contains(const MergeValue& s, const Value& e);
// Next fresh dot for `replica` given the set's causal context.
Dot awset_next_dot(const MergeValue& s, Replica replica);

MergeValue pncounter_zero();
MergeValue pncounter_inc(const MergeValue& c, Replica r, std::uint64_t n);
MergeValue pncounter_dec(const MergeValue& c, Replica r, std::uint64_t n);
std::int64_t pncounter_value(const MergeValue& c);

MergeValue lww_bottom();
MergeValue lww_write(const MergeValue& r, const Value& v, Replica writer);
const Value* lww_read(const MergeValue& r);  // nullptr when bottom

std::string canonical_text(const Value& v);
std::string canonical_text(const MergeValue& m);

// FNV-1a over the canonical text; used for trace digests.
std::uint64_t digest64(const MergeValue& m);

}  // namespace lore
