#include "lore/crdt.hpp"

#include <algorithm>
#include <sstream>

namespace lore {

namespace {

void require_kind(const MergeValue& a, const MergeValue& b) {
  if (a.kind != b.kind)
    throw KindMismatch(std::string("cannot merge ") + crdt_kind_name(a.kind) + " with " +
                       crdt_kind_name(b.kind));
}

std::vector<Dot> intersect_dots(const std::vector<Dot>& a, const std::vector<Dot>& b) {
  std::vector<Dot> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void keep_unseen(const std::vector<Dot>& dots, const VersionVector& ctx, std::vector<Dot>& out) {
  for (const Dot& d : dots)
    if (!ctx.contains(d)) out.push_back(d);
}

std::vector<std::pair<Replica, std::uint64_t>> merge_counters(
    const std::vector<std::pair<Replica, std::uint64_t>>& a,
    const std::vector<std::pair<Replica, std::uint64_t>>& b) {
  std::vector<std::pair<Replica, std::uint64_t>> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, std::max(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MergeValue merge_value(const MergeValue& a, const MergeValue& b) {
  require_kind(a, b);
  MergeValue out;
  out.kind = a.kind;
  switch (a.kind) {
    case CrdtKind::AWSet: {
      const auto& ea = a.aw.entries;
      const auto& eb = b.aw.entries;
      std::size_t i = 0, j = 0;
      while (i < ea.size() || j < eb.size()) {
        int c;
        if (i == ea.size()) c = 1;
        else if (j == eb.size()) c = -1;
        else c = compare(ea[i].first, eb[j].first);
        std::vector<Dot> dots;
        const Value* elem = nullptr;
        if (c < 0) {
          elem = &ea[i].first;
          keep_unseen(ea[i].second, b.aw.ctx, dots);
          ++i;
        } else if (c > 0) {
          elem = &eb[j].first;
          keep_unseen(eb[j].second, a.aw.ctx, dots);
          ++j;
        } else {
          elem = &ea[i].first;
          dots = intersect_dots(ea[i].second, eb[j].second);
          keep_unseen(ea[i].second, b.aw.ctx, dots);
          keep_unseen(eb[j].second, a.aw.ctx, dots);
          std::sort(dots.begin(), dots.end());
          dots.erase(std::unique(dots.begin(), dots.end()), dots.end());
          ++i;
          ++j;
        }
        if (!dots.empty()) out.aw.entries.emplace_back(*elem, std::move(dots));
      }
      out.aw.ctx = a.aw.ctx;
      out.aw.ctx.join(b.aw.ctx);
      return out;
    }
    case CrdtKind::PNCounter:
      out.pn.incs = merge_counters(a.pn.incs, b.pn.incs);
      out.pn.decs = merge_counters(a.pn.decs, b.pn.decs);
      return out;
    case CrdtKind::LWWRegister: {
      const LWWState* win = &a.lww;
      if (b.lww.stamp > a.lww.stamp ||
          (b.lww.stamp == a.lww.stamp && b.lww.writer > a.lww.writer))
        win = &b.lww;
      out.lww = *win;
      return out;
    }
  }
  return out;
}

bool leq_value(const MergeValue& a, const MergeValue& b) {
  require_kind(a, b);
  return merge_value(a, b) == b;
}

MergeValue awset_empty() {
  MergeValue m;
  m.kind = CrdtKind::AWSet;
  return m;
}

Dot awset_next_dot(const MergeValue& s, Replica replica) {
  return Dot{replica, s.aw.ctx.get(replica) + 1};
}

MergeValue awset_add(const MergeValue& s, const Value& e, const Dot& dot) {
  if (s.kind != CrdtKind::AWSet) throw KindMismatch("add on non-AWSet");
  if (s.aw.ctx.contains(dot)) throw StaleDot("dot already in causal context");
  if (dot.counter != s.aw.ctx.get(dot.replica) + 1)
    throw StaleDot("dot skips the per-replica counter");
  MergeValue out = s;
  auto& entries = out.aw.entries;
  auto it = std::lower_bound(entries.begin(), entries.end(), e,
                             [](const auto& p, const Value& key) { return p.first < key; });
  if (it != entries.end() && it->first == e) {
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), dot);
    it->second.insert(pos, dot);
  } else {
    entries.insert(it, {e, {dot}});
  }
  out.aw.ctx.bump(dot);
  return out;
}

MergeValue awset_remove(const MergeValue& s, const Value& e) {
  if (s.kind != CrdtKind::AWSet) throw KindMismatch("remove on non-AWSet");
  MergeValue out = s;
  auto& entries = out.aw.entries;
  auto it = std::lower_bound(entries.begin(), entries.end(), e,
                             [](const auto& p, const Value& key) { return p.first < key; });
  if (it != entries.end() && it->first == e) entries.erase(it);
  return out;
}

std::vector<Value> awset_elements(const MergeValue& s) {
  std::vector<Value> out;
  out.reserve(s.aw.entries.size());
  for (const auto& [e, dots] : s.aw.entries) out.push_back(e);
  return out;
}

bool awset_contains(const MergeValue& s, const Value& e) {
  const auto& entries = s.aw.entries;
  auto it = std::lower_bound(entries.begin(), entries.end(), e,
                             [](const auto& p, const Value& key) { return p.first < key; });
  return it != entries.end() && it->first == e;
}

MergeValue pncounter_zero() {
  MergeValue m;
  m.kind = CrdtKind::PNCounter;
  return m;
}

namespace {
MergeValue pn_apply(const MergeValue& c, Replica r, std::uint64_t n, bool dec) {
  if (c.kind != CrdtKind::PNCounter) throw KindMismatch("inc/dec on non-counter");
  MergeValue out = c;
  auto& vec = dec ? out.pn.decs : out.pn.incs;
  auto it = std::lower_bound(vec.begin(), vec.end(), r,
                             [](const auto& p, Replica key) { return p.first < key; });
  if (it != vec.end() && it->first == r) it->second += n;
  else vec.insert(it, {r, n});
  return out;
}
}  // namespace

MergeValue pncounter_inc(const MergeValue& c, Replica r, std::uint64_t n) {
  return pn_apply(c, r, n, false);
}
MergeValue pncounter_dec(const MergeValue& c, Replica r, std::uint64_t n) {
  return pn_apply(c, r, n, true);
}

std::int64_t pncounter_value(const MergeValue& c) {
  std::int64_t v = 0;
  for (const auto& [r, n] : c.pn.incs) v += static_cast<std::int64_t>(n);
  for (const auto& [r, n] : c.pn.decs) v -= static_cast<std::int64_t>(n);
  return v;
}

MergeValue lww_bottom() {
  MergeValue m;
  m.kind = CrdtKind::LWWRegister;
  return m;
}

MergeValue lww_write(const MergeValue& r, const Value& v, Replica writer) {
  if (r.kind != CrdtKind::LWWRegister) throw KindMismatch("write on non-register");
  MergeValue out = r;
  out.lww.slot.clear();
  out.lww.slot.push_back(v);
  out.lww.stamp = r.lww.stamp + 1;
  out.lww.writer = writer;
  return out;
}

const Value* lww_read(const MergeValue& r) {
  if (r.lww.slot.empty()) return nullptr;
  return &r.lww.slot.front();
}

namespace {

void render(const Value& v, std::ostream& os);

void render(const MergeValue& m, std::ostream& os) {
  switch (m.kind) {
    case CrdtKind::AWSet: {
      os << "AWSet{";
      bool first = true;
      for (const auto& [e, dots] : m.aw.entries) {
        if (!first) os << ",";
        first = false;
        render(e, os);
        os << "@[";
        for (std::size_t i = 0; i < dots.size(); ++i) {
          if (i) os << ",";
          os << dots[i].replica << ":" << dots[i].counter;
        }
        os << "]";
      }
      os << "|ctx ";
      bool f2 = true;
      for (const auto& [r, c] : m.aw.ctx.entries()) {
        if (!f2) os << ",";
        f2 = false;
        os << r << ":" << c;
      }
      os << "}";
      return;
    }
    case CrdtKind::PNCounter: {
      os << "PN{+";
      for (const auto& [r, n] : m.pn.incs) os << "(" << r << ":" << n << ")";
      os << ";-";
      for (const auto& [r, n] : m.pn.decs) os << "(" << r << ":" << n << ")";
      os << "}";
      return;
    }
    case CrdtKind::LWWRegister: {
      os << "LWW{";
      if (!m.lww.slot.empty()) render(m.lww.slot.front(), os);
      os << "@(" << m.lww.stamp << "," << m.lww.writer << ")}";
      return;
    }
  }
}

void render(const Value& v, std::ostream& os) {
  switch (v.v.index()) {
    case 0: os << "unit"; return;
    case 1: os << (std::get<bool>(v.v) ? "true" : "false"); return;
    case 2: os << std::get<std::int64_t>(v.v); return;
    case 3: os << '"' << std::get<std::string>(v.v) << '"'; return;
    case 4: {
      const auto& r = std::get<RecordValue>(v.v);
      os << "rec" << r.type << "(";
      for (std::size_t i = 0; i < r.fields.size(); ++i) {
        if (i) os << ",";
        render(r.fields[i], os);
      }
      os << ")";
      return;
    }
    case 5: {
      const auto& t = std::get<TupleValue>(v.v);
      os << "(";
      for (std::size_t i = 0; i < t.items.size(); ++i) {
        if (i) os << ",";
        render(t.items[i], os);
      }
      os << ")";
      return;
    }
    case 6: {
      const auto& s = std::get<SetValue>(v.v);
      os << "{";
      for (std::size_t i = 0; i < s.elems.size(); ++i) {
        if (i) os << ",";
        render(s.elems[i], os);
      }
      os << "}";
      return;
    }
    case 7: render(std::get<MergeValue>(v.v), os); return;
    case 8: os << "<closure>"; return;
  }
}

}  // namespace

std::string canonical_text(const Value& v) {
  std::ostringstream os;
  render(v, os);
  return os.str();
}

std::string canonical_text(const MergeValue& m) {
  std::ostringstream os;
  render(m, os);
  return os.str();
}

std::uint64_t digest64(const MergeValue& m) {
  std::string t = canonical_text(m);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : t) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace lore
