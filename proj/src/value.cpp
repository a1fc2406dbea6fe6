#include "lore/value.hpp"

#include <algorithm>

namespace lore {

const char* crdt_kind_name(CrdtKind k) {
  switch (k) {
    case CrdtKind::AWSet: return "AWSet";
    case CrdtKind::PNCounter: return "PNCounter";
    case CrdtKind::LWWRegister: return "LWWRegister";
  }
  return "?";
}

Counter VersionVector::get(Replica r) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), r,
                             [](const auto& e, Replica key) { return e.first < key; });
  if (it != entries_.end() && it->first == r) return it->second;
  return 0;
}

void VersionVector::bump(const Dot& d) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), d.replica,
                             [](const auto& e, Replica key) { return e.first < key; });
  if (it != entries_.end() && it->first == d.replica) {
    if (d.counter > it->second) it->second = d.counter;
  } else {
    entries_.insert(it, {d.replica, d.counter});
  }
}

void VersionVector::join(const VersionVector& o) {
  for (const auto& [r, c] : o.entries_) bump(Dot{r, c});
}

bool VersionVector::leq(const VersionVector& o) const {
  for (const auto& [r, c] : entries_)
    if (c > o.get(r)) return false;
  return true;
}

namespace {

int cmp3(std::int64_t a, std::int64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

template <typename T, typename Cmp>
int compare_vec(const std::vector<T>& a, const std::vector<T>& b, Cmp cmp) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return cmp3(static_cast<std::int64_t>(a.size()), static_cast<std::int64_t>(b.size()));
}

int compare_dots(const Dot& a, const Dot& b) {
  if (int c = cmp3(a.replica, b.replica)) return c;
  return cmp3(static_cast<std::int64_t>(a.counter), static_cast<std::int64_t>(b.counter));
}

int compare_vv(const VersionVector& a, const VersionVector& b) {
  return compare_vec(a.entries(), b.entries(), [](const auto& x, const auto& y) {
    if (int c = cmp3(x.first, y.first)) return c;
    return cmp3(static_cast<std::int64_t>(x.second), static_cast<std::int64_t>(y.second));
  });
}

}  // namespace

int compare(const MergeValue& a, const MergeValue& b) {
  if (int c = cmp3(static_cast<int>(a.kind), static_cast<int>(b.kind))) return c;
  switch (a.kind) {
    case CrdtKind::AWSet: {
      int c = compare_vec(a.aw.entries, b.aw.entries, [](const auto& x, const auto& y) {
        if (int e = compare(x.first, y.first)) return e;
        return compare_vec(x.second, y.second, compare_dots);
      });
      if (c != 0) return c;
      return compare_vv(a.aw.ctx, b.aw.ctx);
    }
    case CrdtKind::PNCounter: {
      auto cmp = [](const auto& x, const auto& y) {
        if (int c = cmp3(x.first, y.first)) return c;
        return cmp3(static_cast<std::int64_t>(x.second), static_cast<std::int64_t>(y.second));
      };
      if (int c = compare_vec(a.pn.incs, b.pn.incs, cmp)) return c;
      return compare_vec(a.pn.decs, b.pn.decs, cmp);
    }
    case CrdtKind::LWWRegister: {
      if (int c = cmp3(static_cast<std::int64_t>(a.lww.stamp),
                       static_cast<std::int64_t>(b.lww.stamp)))
        return c;
      if (int c = cmp3(a.lww.writer, b.lww.writer)) return c;
      return compare_vec(a.lww.slot, b.lww.slot,
                         [](const Value& x, const Value& y) { return compare(x, y); });
    }
  }
  return 0;
}

int compare(const Value& a, const Value& b) {
  if (int c = cmp3(static_cast<int>(a.v.index()), static_cast<int>(b.v.index()))) return c;
  switch (a.v.index()) {
    case 0: return 0;  // unit
    case 1: return cmp3(std::get<bool>(a.v), std::get<bool>(b.v));
    case 2: return cmp3(std::get<std::int64_t>(a.v), std::get<std::int64_t>(b.v));
    case 3: {
      const auto& x = std::get<std::string>(a.v);
      const auto& y = std::get<std::string>(b.v);
      return x < y ? -1 : (y < x ? 1 : 0);
    }
    case 4: {
      const auto& x = std::get<RecordValue>(a.v);
      const auto& y = std::get<RecordValue>(b.v);
      if (int c = cmp3(x.type, y.type)) return c;
      return compare_vec(x.fields, y.fields,
                         [](const Value& p, const Value& q) { return compare(p, q); });
    }
    case 5:
      return compare_vec(std::get<TupleValue>(a.v).items, std::get<TupleValue>(b.v).items,
                         [](const Value& p, const Value& q) { return compare(p, q); });
    case 6:
      return compare_vec(std::get<SetValue>(a.v).elems, std::get<SetValue>(b.v).elems,
                         [](const Value& p, const Value& q) { return compare(p, q); });
    case 7: return compare(std::get<MergeValue>(a.v), std::get<MergeValue>(b.v));
    case 8: {
      // Closures compare by identity of their syntax node; they never occur
      // in stores or sets, only transiently during evaluation.
      const auto* x = std::get<ClosureValue>(a.v).lambda;
      const auto* y = std::get<ClosureValue>(b.v).lambda;
      return x < y ? -1 : (x > y ? 1 : 0);
    }
  }
  return 0;
}

void set_insert(std::vector<Value>& elems, const Value& v) {
  auto it = std::lower_bound(elems.begin(), elems.end(), v);
  if (it == elems.end() || *it != v) elems.insert(it, v);
}

bool set_contains(const std::vector<Value>& elems, const Value& v) {
  auto it = std::lower_bound(elems.begin(), elems.end(), v);
  return it != elems.end() && *it == v;
}

}  // namespace lore
