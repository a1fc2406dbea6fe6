#include "lore/verify.hpp"

#include <algorithm>
#include <sstream>

namespace lore {

bool ConflictTable::symmetric() const {
  for (const auto& [a, cs] : m) {
    for (const auto& b : cs) {
      auto it = m.find(b);
      if (it == m.end() || !it->second.count(a)) return false;
      if (!cs.count(a)) return false;  // self-membership under any conflict
    }
  }
  return true;
}

std::vector<Value> element_universe(const BoundConfig& cfg, const Type& t) {
  std::vector<Value> out;
  switch (t.kind) {
    case TypeKind::Int:
      for (std::int64_t i = cfg.intMin; i < cfg.intMax; ++i) out.push_back(Value(i));
      return out;
    case TypeKind::Bool:
      out.push_back(Value(false));
      out.push_back(Value(true));
      return out;
    case TypeKind::String:
      for (const auto& s : cfg.stringUniverse) out.push_back(Value(s));
      return out;
    case TypeKind::Record: {
      if (t.record == "Appointment") {
        for (std::int64_t id : cfg.apptIds)
          for (std::int64_t s = 0; s < cfg.apptStartMax; ++s)
            for (std::int64_t e = 0; e < cfg.apptEndMax; ++e) {
              RecordValue r;
              r.type = record_index("Appointment");
              r.fields = {Value(id), Value(s), Value(e)};
              Value v;
              v.v = std::move(r);
              out.push_back(std::move(v));
            }
        std::int64_t id0 = cfg.apptIds.empty() ? 1 : cfg.apptIds.front();
        for (std::int64_t d : cfg.dayDomain) {
          if (d >= cfg.dayBound) continue;
          RecordValue r;
          r.type = record_index("Appointment");
          r.fields = {Value(id0), Value(std::int64_t(0)), Value(d)};
          Value v;
          v.v = std::move(r);
          out.push_back(std::move(v));
        }
      } else {
        const RecordTypeDef* def = find_record(t.record);
        if (!def) throw VerifyError("no universe for record " + t.record);
        std::vector<std::vector<Value>> fieldDoms;
        for (const auto& [fn, ft] : def->fields) fieldDoms.push_back(element_universe(cfg, ft));
        std::vector<std::size_t> ix(fieldDoms.size(), 0);
        for (;;) {
          RecordValue r;
          r.type = record_index(t.record);
          for (std::size_t i = 0; i < ix.size(); ++i) r.fields.push_back(fieldDoms[i][ix[i]]);
          Value v;
          v.v = std::move(r);
          out.push_back(std::move(v));
          std::size_t k = ix.size();
          while (k > 0) {
            --k;
            if (++ix[k] < fieldDoms[k].size()) break;
            ix[k] = 0;
            if (k == 0) goto done;
          }
          if (ix.size() == 0) break;
        }
      done:;
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    case TypeKind::Tuple: {
      std::vector<std::vector<Value>> doms;
      for (const Type& it : t.params) doms.push_back(element_universe(cfg, it));
      std::vector<std::size_t> ix(doms.size(), 0);
      for (;;) {
        TupleValue tv;
        for (std::size_t i = 0; i < ix.size(); ++i) tv.items.push_back(doms[i][ix[i]]);
        Value v;
        v.v = std::move(tv);
        out.push_back(std::move(v));
        std::size_t k = ix.size();
        bool carry = true;
        while (k > 0 && carry) {
          --k;
          if (++ix[k] < doms[k].size()) carry = false;
          else ix[k] = 0;
        }
        if (carry) break;
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    default:
      throw VerifyError("no element universe for type " + type_name(t));
  }
}

std::vector<Value> argument_candidates(const BoundConfig& cfg, const Type& t) {
  std::vector<Value> out;
  if (t.kind == TypeKind::Record && t.record == "Appointment") {
    std::int64_t id0 = cfg.apptIds.empty() ? 1 : cfg.apptIds.front();
    for (std::int64_t d : cfg.dayDomain) {
      if (d >= cfg.dayBound) continue;
      RecordValue r;
      r.type = record_index("Appointment");
      r.fields = {Value(id0), Value(std::int64_t(0)), Value(d)};
      Value v;
      v.v = std::move(r);
      out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
  } else if (t.kind == TypeKind::Tuple) {
    std::vector<std::vector<Value>> doms;
    for (const Type& it : t.params) doms.push_back(argument_candidates(cfg, it));
    std::vector<std::size_t> ix(doms.size(), 0);
    for (;;) {
      TupleValue tv;
      for (std::size_t i = 0; i < ix.size(); ++i) tv.items.push_back(doms[i][ix[i]]);
      Value v;
      v.v = std::move(tv);
      out.push_back(std::move(v));
      std::size_t k = ix.size();
      bool carry = true;
      while (k > 0 && carry) {
        --k;
        if (++ix[k] < doms[k].size()) carry = false;
        else ix[k] = 0;
      }
      if (carry) break;
    }
    std::sort(out.begin(), out.end());
  } else if (t.kind == TypeKind::Unit) {
    out.push_back(Value());
  } else {
    out = element_universe(cfg, t);
  }
  if (out.size() > cfg.maxArgs) out.resize(cfg.maxArgs);
  return out;
}

std::vector<MergeValue> enumerate_crdt_states(const BoundConfig& cfg, const SourceDecl& s,
                                              Replica side) {
  std::vector<MergeValue> out;
  switch (s.crdtKind) {
    case CrdtKind::AWSet: {
      std::vector<Value> uni = element_universe(cfg, s.elementType);
      int k = std::min<int>(cfg.maxSetSize, static_cast<int>(uni.size()));
      // subsets in ascending (size, lexicographic) order
      std::vector<std::size_t> comb;
      for (int size = 0; size <= k; ++size) {
        comb.assign(static_cast<std::size_t>(size), 0);
        for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = i;
        for (;;) {
          MergeValue m = awset_empty();
          for (std::size_t i = 0; i < comb.size(); ++i)
            m = awset_add(m, uni[comb[i]], awset_next_dot(m, side));
          out.push_back(std::move(m));
          if (size == 0) break;
          // next combination
          int pos = size - 1;
          while (pos >= 0 &&
                 comb[pos] == uni.size() - static_cast<std::size_t>(size - pos))
            --pos;
          if (pos < 0) break;
          ++comb[pos];
          for (int q = pos + 1; q < size; ++q) comb[q] = comb[q - 1] + 1;
        }
      }
      return out;
    }
    case CrdtKind::PNCounter: {
      for (std::int64_t v = 0; v < cfg.counterMax; ++v) {
        MergeValue m = pncounter_zero();
        if (v > 0) m = pncounter_inc(m, side, static_cast<std::uint64_t>(v));
        out.push_back(std::move(m));
      }
      return out;
    }
    case CrdtKind::LWWRegister: {
      out.push_back(lww_bottom());
      for (const Value& v : element_universe(cfg, s.elementType))
        out.push_back(lww_write(lww_bottom(), v, side));
      return out;
    }
  }
  return out;
}

namespace {

std::size_t state_weight(const MergeValue& m) {
  switch (m.kind) {
    case CrdtKind::AWSet: return m.aw.entries.size();
    case CrdtKind::PNCounter:
      return static_cast<std::size_t>(std::max<std::int64_t>(0, pncounter_value(m)));
    case CrdtKind::LWWRegister: return m.lww.slot.empty() ? 0 : 1;
  }
  return 0;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Interned CRDT states of one source; merges are memoized on state ids.
class StatePool {
 public:
  int intern(const MergeValue& m) {
    std::string key = canonical_text(m);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(states_.size());
    states_.push_back(m);
    index_.emplace(std::move(key), id);
    obs_.push_back(-1);
    return id;
  }

  const MergeValue& state(int id) const { return states_[id]; }

  int merge(int a, int b) {
    if (a == b) return a;
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(std::min(a, b)))
                         << 32) |
                        static_cast<std::uint32_t>(std::max(a, b));
    auto it = mergeMemo_.find(key);
    if (it != mergeMemo_.end()) return it->second;
    int id = intern(merge_value(states_[a], states_[b]));
    mergeMemo_.emplace(key, id);
    return id;
  }

  // Observable projection class: AWSets by element set, counters by value,
  // registers by held value. States with equal projections are
  // indistinguishable to terms and invariants.
  int obs(int id) {
    if (obs_[id] >= 0) return obs_[id];
    const MergeValue& m = states_[id];
    std::string key;
    switch (m.kind) {
      case CrdtKind::AWSet: {
        for (const auto& [e, dots] : m.aw.entries) key += canonical_text(e) + ";";
        break;
      }
      case CrdtKind::PNCounter: key = std::to_string(pncounter_value(m)); break;
      case CrdtKind::LWWRegister:
        key = m.lww.slot.empty() ? "_" : canonical_text(m.lww.slot.front());
        break;
    }
    auto [it, inserted] = obsIndex_.emplace(key, static_cast<int>(obsIndex_.size()));
    return obs_[id] = it->second;
  }

 private:
  std::vector<MergeValue> states_;
  std::vector<int> obs_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<std::string, int> obsIndex_;
  std::unordered_map<std::uint64_t, int> mergeMemo_;
};

using Ids = std::vector<int>;

class VerifyContext {
 public:
  VerifyContext(const CheckedProgram& cp, const BoundConfig& cfg)
      : cp_(cp), cfg_(cfg), pools_(cp.program.sources.size()) {
    graph_ = build_graph(cp);
    overlap_ = overlapping_pairs(graph_, cp);
  }

  const CheckedProgram& cp() const { return cp_; }
  const BoundConfig& cfg() const { return cfg_; }
  const OverlapReport& overlap() const { return overlap_; }

  Ids intern_store(const Store& s) {
    Ids ids(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      ids[i] = pools_[i].intern(s[i]);
    return ids;
  }

  Store materialize(const Ids& ids) const {
    Store s;
    s.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) s.push_back(pools_[i].state(ids[i]));
    return s;
  }

  Ids merge_ids(const Ids& a, const Ids& b) {
    Ids out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = pools_[i].merge(a[i], b[i]);
    return out;
  }

  bool valid(const Ids& ids) {
    auto it = validMemo_.find(ids);
    if (it != validMemo_.end()) return it->second;
    Store s = materialize(ids);
    bool ok = !first_violated_invariant(cp_, s).has_value();
    validMemo_.emplace(ids, ok);
    return ok;
  }

  int first_violated(const Ids& ids) {
    Store s = materialize(ids);
    auto v = first_violated_invariant(cp_, s);
    return v ? *v : 0;
  }

  // Valid stores for one side, ascending by (total weight, lexicographic).
  const std::vector<Ids>& valid_stores(Replica side) {
    auto& cache = side == kEnumSideI ? validStoresI_ : validStoresJ_;
    if (!cache.empty() || enumeratedSides_.count(side)) return cache;
    enumeratedSides_.insert(side);
    std::vector<std::vector<int>> perSource;
    std::vector<std::vector<std::size_t>> weights;
    std::size_t total = 1;
    for (std::size_t i = 0; i < cp_.program.sources.size(); ++i) {
      auto states = enumerate_crdt_states(cfg_, cp_.program.sources[i], side);
      std::vector<int> ids;
      std::vector<std::size_t> ws;
      for (const auto& st : states) {
        ids.push_back(pools_[i].intern(st));
        ws.push_back(state_weight(st));
      }
      total *= ids.size();
      if (total > cfg_.maxStores)
        throw BoundsTooLarge("store enumeration exceeds maxStores (" +
                             std::to_string(cfg_.maxStores) + ")");
      perSource.push_back(std::move(ids));
      weights.push_back(std::move(ws));
    }
    std::vector<std::pair<std::size_t, Ids>> all;
    Ids current(perSource.size(), 0);
    std::vector<std::size_t> ix(perSource.size(), 0);
    for (;;) {
      std::size_t w = 0;
      Ids ids(perSource.size());
      for (std::size_t i = 0; i < perSource.size(); ++i) {
        ids[i] = perSource[i][ix[i]];
        w += weights[i][ix[i]];
      }
      all.emplace_back(w, std::move(ids));
      std::size_t k = perSource.size();
      bool carry = true;
      while (k > 0 && carry) {
        --k;
        if (++ix[k] < perSource[k].size()) carry = false;
        else ix[k] = 0;
      }
      if (carry) break;
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [w, ids] : all)
      if (valid(ids)) cache.push_back(std::move(ids));
    return cache;
  }

  bool obs_equal(const Ids& a, const Ids& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (pools_[i].obs(a[i]) != pools_[i].obs(b[i])) return false;
    return true;
  }

  const std::vector<Value>& arg_candidates(const std::string& a) {
    auto it = argsMemo_.find(a);
    if (it != argsMemo_.end()) return it->second;
    const InteractionDecl* d = cp_.executable(a);
    auto [pos, inserted] =
        argsMemo_.emplace(a, argument_candidates(cfg_, d->argType));
    return pos->second;
  }

  bool clause_true(const InteractionDecl& d, const std::vector<TermPtr>& clauses,
                   const Store& s, const Value& arg) {
    Universe u = Universe::active_domain(cp_, s);
    u.add_value(d.argType, arg);
    EvalCtx ctx(cp_, s, 0, &u);
    for (const auto& c : clauses) {
      if (!eval_clause(ctx, d, *c, arg).as_bool()) return false;
    }
    return true;
  }

  // Precondition + execute + update; nullopt when the precondition fails.
  std::optional<Store> try_execute(const InteractionDecl& d, const Store& pre,
                                   const Value& arg, Replica replica) {
    if (!clause_true(d, d.requiresClauses, pre, arg)) return std::nullopt;
    Universe u = Universe::active_domain(cp_, pre);
    u.add_value(d.argType, arg);
    EvalCtx ctx(cp_, pre, replica, &u);
    Value result = eval_clause(ctx, d, *d.executes, arg);
    std::vector<MergeValue> values;
    if (d.modifies.size() == 1) {
      values.push_back(std::get<MergeValue>(result.v));
    } else {
      const auto& tv = std::get<TupleValue>(result.v);
      for (const Value& item : tv.items) values.push_back(std::get<MergeValue>(item.v));
    }
    return update_store(cp_, pre, d.modifies, values);
  }

  bool ensures_true(const InteractionDecl& d, const Store& post, const Value& arg) {
    return clause_true(d, d.ensuresClauses, post, arg);
  }

 private:
  const CheckedProgram& cp_;
  BoundConfig cfg_;
  std::vector<StatePool> pools_;
  DataflowGraph graph_;
  OverlapReport overlap_;
  std::unordered_map<std::vector<int>, bool, VecHash> validMemo_;
  std::vector<Ids> validStoresI_, validStoresJ_;
  std::set<Replica> enumeratedSides_;
  std::map<std::string, std::vector<Value>> argsMemo_;
};

std::string obligation_name(const std::string& kind, const std::string& a,
                            const std::string& b = "") {
  if (b.empty()) return kind + ":" + a;
  auto p = std::minmax(a, b);
  return kind + ":" + p.first + ":" + p.second;
}

Verdict run_preservation(VerifyContext& vc, const std::string& interaction) {
  const CheckedProgram& cp = vc.cp();
  const InteractionDecl* d = cp.executable(interaction);
  if (!d) throw NotExecutable("interaction '" + interaction + "' is not executable");
  Verdict v;
  v.obligation = obligation_name("preservation", interaction);

  // Only overlapping invariants can change across this interaction.
  std::set<int> overlapping = vc.overlap().invariantOverlaps.at(interaction);

  const auto& args = vc.arg_candidates(interaction);
  for (const Ids& ids : vc.valid_stores(kEnumSideI)) {
    Store pre = vc.materialize(ids);
    for (std::size_t ai = 0; ai < args.size(); ++ai) {
      if (!vc.clause_true(*d, d->requiresClauses, pre, args[ai])) continue;
      ++v.checksRun;
      if (v.checksRun > vc.cfg().maxChecks)
        throw BoundsTooLarge("preservation enumeration exceeds maxChecks");
      Universe u = Universe::active_domain(cp, pre);
      u.add_value(d->argType, args[ai]);
      EvalCtx ctx(cp, pre, kExecI, &u);
      Value result = eval_clause(ctx, *d, *d->executes, args[ai]);
      std::vector<MergeValue> values;
      if (d->modifies.size() == 1) values.push_back(std::get<MergeValue>(result.v));
      else
        for (const Value& item : std::get<TupleValue>(result.v).items)
          values.push_back(std::get<MergeValue>(item.v));
      Store post = update_store(cp, pre, d->modifies, values);
      if (!vc.ensures_true(*d, post, args[ai])) {
        v.status = VerdictStatus::Refuted;
        v.kind = RefutationKind::PostconditionFailed;
        v.witness = Witness{store_text(cp, pre), "", args[ai], Value(), 0,
                            "postcondition false after execution"};
        return v;
      }
      std::vector<std::pair<Type, Value>> extras = {{d->argType, args[ai]}};
      for (const auto& inv : cp.program.invariants) {
        if (!overlapping.count(inv.id)) continue;
        if (!invariant_holds(cp, post, inv, &extras)) {
          v.status = VerdictStatus::Refuted;
          v.kind = RefutationKind::InvariantViolated;
          v.witness = Witness{store_text(cp, pre), "", args[ai], Value(), inv.id,
                              "invariant " + std::to_string(inv.id) +
                                  " violated on the post-state"};
          return v;
        }
      }
    }
  }
  v.status = VerdictStatus::ProvedBounded;
  return v;
}

struct ReExecResult {
  bool enabled = false;
  bool postOk = false;
  Ids post;
};

// Confluence over devices diverging from a common valid snapshot: both
// interactions execute on copies of the same store (the shared causal past)
// and the check compares synchronizing in between against synchronizing
// after, exactly the brute-force reading of the definition's conclusion.
// A blocked re-execution refutes unless the in-between state is already
// observably the merged result; such duplicate applications contribute
// nothing to a serialization because merges are idempotent.
Verdict run_confluence(VerifyContext& vc, const std::string& a1, const std::string& a2) {
  const CheckedProgram& cp = vc.cp();
  Verdict v;
  v.obligation = obligation_name("confluence", a1, a2);

  const InteractionDecl* d1 = cp.executable(a1);
  const InteractionDecl* d2 = cp.executable(a2);
  if (!d1 || !d2) throw NotExecutable("confluence over non-executable interaction");

  const auto& args1 = vc.arg_candidates(a1);
  const auto& args2 = vc.arg_candidates(a2);
  bool same = a1 == a2;

  const auto& stores = vc.valid_stores(kEnumSideI);
  if (static_cast<std::uint64_t>(stores.size()) * args1.size() * args2.size() >
      vc.cfg().maxChecks)
    throw BoundsTooLarge("confluence enumeration exceeds maxChecks");

  auto reexec = [&](const InteractionDecl& d, const Ids& base, const Value& arg,
                    Replica replica) {
    ReExecResult r;
    Store s = vc.materialize(base);
    auto post = vc.try_execute(d, s, arg, replica);
    if (!post) return r;
    r.enabled = true;
    r.postOk = vc.ensures_true(d, *post, arg);
    r.post = vc.intern_store(*post);
    return r;
  };

  for (const Ids& base : stores) {
    Store common = vc.materialize(base);
    for (std::size_t i1 = 0; i1 < args1.size(); ++i1) {
      auto post1 = vc.try_execute(*d1, common, args1[i1], kExecI);
      if (!post1) continue;
      Ids ids1 = vc.intern_store(*post1);
      std::size_t start = same ? i1 : 0;
      for (std::size_t i2 = start; i2 < args2.size(); ++i2) {
        auto post2 = vc.try_execute(*d2, common, args2[i2], kExecJ);
        if (!post2) continue;
        Ids ids2 = vc.intern_store(*post2);
        ++v.checksRun;
        if (v.checksRun > vc.cfg().maxChecks)
          throw BoundsTooLarge("confluence enumeration exceeds maxChecks");

        auto witness = [&](int invId, const std::string& detail) {
          Witness w;
          w.storeI = store_text(cp, common);
          w.arg1 = args1[i1];
          w.arg2 = args2[i2];
          w.invariantId = invId;
          w.detail = detail;
          return w;
        };

        Ids merged = vc.merge_ids(ids1, ids2);
        if (!vc.valid(merged)) {
          v.status = VerdictStatus::Refuted;
          v.kind = RefutationKind::MergedInvalid;
          v.witness = witness(vc.first_violated(merged),
                              "merged post-state violates an invariant");
          return v;
        }
        struct Side {
          const InteractionDecl* d;
          const Ids* other;
          const Value* arg;
          Replica replica;
          const std::string* name;
        };
        Side sides[2] = {{d1, &ids2, &args1[i1], kExecI, &a1},
                         {d2, &ids1, &args2[i2], kExecJ, &a2}};
        bool refuted = false;
        for (const Side& side : sides) {
          Ids inBetween = vc.merge_ids(base, *side.other);
          ReExecResult r = reexec(*side.d, inBetween, *side.arg, side.replica);
          if (!r.enabled) {
            if (vc.obs_equal(inBetween, merged)) {
              ++v.idempotentSkips;
              continue;  // the re-execution is an observable no-op
            }
            v.kind = RefutationKind::ReExecutionBlocked;
            v.witness = witness(
                0, *side.name + " is not enabled after merging the other execution");
            refuted = true;
            break;
          }
          if (!r.postOk) {
            v.kind = RefutationKind::ReExecutionPostconditionFailed;
            v.witness =
                witness(0, *side.name + " postcondition fails after the in-between merge");
            refuted = true;
            break;
          }
          if (r.post != merged) {
            v.kind = RefutationKind::Diverged;
            v.witness =
                witness(0, *side.name + " re-execution does not reach the merged state");
            refuted = true;
            break;
          }
        }
        if (refuted) {
          v.status = VerdictStatus::Refuted;
          return v;
        }
      }
    }
  }
  v.status = VerdictStatus::ProvedBounded;
  return v;
}

}  // namespace

std::vector<Store> enumerate_valid_stores(const CheckedProgram& cp, const BoundConfig& cfg,
                                          Replica side) {
  VerifyContext vc(cp, cfg);
  std::vector<Store> out;
  for (const auto& ids : vc.valid_stores(side)) out.push_back(vc.materialize(ids));
  return out;
}

Verdict check_preservation(const CheckedProgram& cp, const std::string& interaction,
                           const BoundConfig& cfg) {
  VerifyContext vc(cp, cfg);
  return run_preservation(vc, interaction);
}

Verdict check_confluence(const CheckedProgram& cp, const std::string& a1,
                         const std::string& a2, const BoundConfig& cfg) {
  VerifyContext vc(cp, cfg);
  auto names = std::minmax(a1, a2);
  const auto& pairs = vc.overlap().interactionPairs;
  if (!pairs.count({names.first, names.second})) {
    Verdict v;
    v.obligation = obligation_name("confluence", a1, a2);
    v.status = VerdictStatus::SkippedByOverlap;
    return v;
  }
  return run_confluence(vc, names.first, names.second);
}

CheckReport check_program(const CheckedProgram& cp, const BoundConfig& cfg) {
  CheckReport rep;
  VerifyContext vc(cp, cfg);
  rep.overlap = vc.overlap();
  rep.boundsNote =
      "proved-bounded verdicts hold for the enumerated bounded state space only; "
      "argument universes are a finite approximation";

  for (const auto& name : cp.executable_names()) {
    Verdict v = run_preservation(vc, name);
    if (v.status == VerdictStatus::Refuted) rep.preservationOk = false;
    rep.obligations.push_back(std::move(v));
  }
  if (!rep.preservationOk) return rep;

  std::vector<std::string> names = cp.executable_names();
  std::sort(names.begin(), names.end());
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i; j < names.size(); ++j) {
      std::pair<std::string, std::string> key{names[i], names[j]};
      if (!rep.overlap.interactionPairs.count(key)) {
        Verdict v;
        v.obligation = obligation_name("confluence", names[i], names[j]);
        v.status = VerdictStatus::SkippedByOverlap;
        rep.obligations.push_back(std::move(v));
        continue;
      }
      Verdict v = run_confluence(vc, names[i], names[j]);
      if (v.status == VerdictStatus::Refuted) rep.conflicts.add_pair(names[i], names[j]);
      rep.obligations.push_back(std::move(v));
    }
  }
  for (const auto& n : names)
    if (!rep.conflicts.m.count(n)) rep.conflicts.m[n] = {};
  return rep;
}

ConflictTable compute_conflicts(const CheckedProgram& cp, const BoundConfig& cfg) {
  CheckReport rep = check_program(cp, cfg);
  if (!rep.preservationOk) {
    std::string detail;
    for (const auto& v : rep.obligations)
      if (v.status == VerdictStatus::Refuted) {
        detail = v.obligation;
        if (v.witness) detail += " (" + v.witness->detail + ")";
        break;
      }
    throw PreservationFailed("preservation failed: " + detail);
  }
  return rep.conflicts;
}

}  // namespace lore
