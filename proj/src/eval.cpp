#include "lore/eval.hpp"

#include <algorithm>
#include <sstream>

namespace lore {

Store initial_store(const CheckedProgram& cp) {
  Store s;
  s.reserve(cp.program.sources.size());
  for (const auto& src : cp.program.sources) s.push_back(src.initial);
  return s;
}

Universe Universe::active_domain(const CheckedProgram& cp, const Store& store) {
  Universe u;
  for (std::size_t i = 0; i < store.size(); ++i) {
    const SourceDecl& d = cp.program.sources[i];
    if (d.crdtKind == CrdtKind::AWSet) {
      for (const Value& e : awset_elements(store[i])) u.add_value(d.elementType, e);
    } else if (d.crdtKind == CrdtKind::LWWRegister) {
      if (const Value* v = lww_read(store[i])) u.add_value(d.elementType, *v);
    }
  }
  return u;
}

void Universe::add_value(const Type& t, const Value& v) {
  std::string key = type_name(t);
  for (auto& [k, dom] : domains_) {
    if (k == key) {
      set_insert(dom, v);
      return;
    }
  }
  domains_.push_back({key, {v}});
}

const std::vector<Value>* Universe::domain(const Type& t) const {
  std::string key = type_name(t);
  for (const auto& [k, dom] : domains_)
    if (k == key) return &dom;
  return nullptr;
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b, Pos pos) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer overflow", pos);
  return r;
}
std::int64_t checked_sub(std::int64_t a, std::int64_t b, Pos pos) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow("integer overflow", pos);
  return r;
}
std::int64_t checked_mul(std::int64_t a, std::int64_t b, Pos pos) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer overflow", pos);
  return r;
}

Value bool_v(bool b) { return Value(b); }
Value int_v(std::int64_t i) { return Value(i); }

std::int64_t appt_days(const Value& v) {
  const auto& r = std::get<RecordValue>(v.v);
  return r.fields[2].as_int() - r.fields[1].as_int();
}

Value call_closure(const EvalCtx& ctx, const Value& f, const Value& arg);

Value eval_builtin(const EvalCtx& ctx, const Term& t, Env& env) {
  auto ev = [&](std::size_t i) { return eval_term(ctx, *t.args[i], env); };
  switch (t.builtin) {
    case Builtin::ToSet: {
      Value r = ev(0);
      const auto& m = std::get<MergeValue>(r.v);
      SetValue s;
      s.elems = awset_elements(m);
      Value out;
      out.v = std::move(s);
      return out;
    }
    case Builtin::Union: {
      Value a = ev(0);
      Value b = ev(1);
      SetValue s = std::get<SetValue>(a.v);
      for (const Value& e : std::get<SetValue>(b.v).elems) set_insert(s.elems, e);
      Value out;
      out.v = std::move(s);
      return out;
    }
    case Builtin::AddElem: {
      Value s = ev(0);
      Value e = ev(1);
      const auto& m = std::get<MergeValue>(s.v);
      return Value(awset_add(m, e, awset_next_dot(m, ctx.replica)));
    }
    case Builtin::RemoveElem: {
      Value s = ev(0);
      Value e = ev(1);
      return Value(awset_remove(std::get<MergeValue>(s.v), e));
    }
    case Builtin::RemoveIf: {
      Value s = ev(0);
      Value f = ev(1);
      MergeValue m = std::get<MergeValue>(s.v);
      for (const Value& e : awset_elements(m))
        if (call_closure(ctx, f, e).as_bool()) m = awset_remove(m, e);
      return Value(m);
    }
    case Builtin::Size: {
      Value s = ev(0);
      return int_v(static_cast<std::int64_t>(std::get<SetValue>(s.v).elems.size()));
    }
    case Builtin::Map: {
      Value s = ev(0);
      Value f = ev(1);
      SetValue out;
      for (const Value& e : std::get<SetValue>(s.v).elems)
        set_insert(out.elems, call_closure(ctx, f, e));
      Value v;
      v.v = std::move(out);
      return v;
    }
    case Builtin::Filter: {
      Value s = ev(0);
      Value f = ev(1);
      SetValue out;
      for (const Value& e : std::get<SetValue>(s.v).elems)
        if (call_closure(ctx, f, e).as_bool()) out.elems.push_back(e);
      Value v;
      v.v = std::move(out);
      return v;
    }
    case Builtin::SumBy: {
      Value s = ev(0);
      Value f = ev(1);
      std::int64_t sum = 0;
      for (const Value& e : std::get<SetValue>(s.v).elems)
        sum = checked_add(sum, call_closure(ctx, f, e).as_int(), t.pos);
      return int_v(sum);
    }
    case Builtin::SumDays: {
      Value s = ev(0);
      std::int64_t sum = 0;
      for (const Value& e : std::get<SetValue>(s.v).elems)
        sum = checked_add(sum, appt_days(e), t.pos);
      return int_v(sum);
    }
    case Builtin::GetStart: {
      Value a = ev(0);
      return int_v(std::get<RecordValue>(a.v).fields[1].as_int());
    }
    case Builtin::GetEnd: {
      Value a = ev(0);
      return int_v(std::get<RecordValue>(a.v).fields[2].as_int());
    }
    case Builtin::Days: {
      Value a = ev(0);
      return int_v(appt_days(a));
    }
    case Builtin::Count: {
      Value c = ev(0);
      return int_v(pncounter_value(std::get<MergeValue>(c.v)));
    }
    case Builtin::Inc:
    case Builtin::Dec: {
      Value c = ev(0);
      Value n = ev(1);
      if (n.as_int() < 0) throw Stuck("negative counter delta", t.pos);
      const auto& m = std::get<MergeValue>(c.v);
      auto amount = static_cast<std::uint64_t>(n.as_int());
      return Value(t.builtin == Builtin::Inc ? pncounter_inc(m, ctx.replica, amount)
                                             : pncounter_dec(m, ctx.replica, amount));
    }
    case Builtin::GetReg: {
      Value r = ev(0);
      const Value* v = lww_read(std::get<MergeValue>(r.v));
      if (!v) throw Stuck("read of unset register", t.pos);
      return *v;
    }
    case Builtin::SetReg: {
      Value r = ev(0);
      Value v = ev(1);
      return Value(lww_write(std::get<MergeValue>(r.v), v, ctx.replica));
    }
    case Builtin::MakeRecord: {
      RecordValue rv;
      rv.type = t.record;
      for (std::size_t i = 0; i < t.args.size(); ++i) rv.fields.push_back(ev(i));
      Value v;
      v.v = std::move(rv);
      return v;
    }
    default: throw Stuck("unsupported builtin", t.pos);
  }
}

Value call_closure(const EvalCtx& ctx, const Value& f, const Value& arg) {
  const auto& cl = std::get<ClosureValue>(f.v);
  Env env = *cl.env;
  env.push_back(arg);
  return eval_term(ctx, *cl.lambda->a, env);
}

}  // namespace

Value eval_term(const EvalCtx& ctx, const Term& t, Env& env) {
  switch (t.k) {
    case Term::K::IntLit: return Value(t.ival);
    case Term::K::BoolLit: return Value(t.bval);
    case Term::K::StrLit: return Value(t.name);
    case Term::K::Var: {
      if (t.slot < 0 || t.slot >= static_cast<int>(env.size()))
        throw Stuck("unbound variable '" + t.name + "'", t.pos);
      return env[t.slot];
    }
    case Term::K::ReactiveRead: {
      if (t.reads_derived) {
        auto& memo = ctx.derivedMemo;
        if (t.slot < static_cast<int>(memo.size()) && memo[t.slot]) return *memo[t.slot];
        const DerivedDecl& d = ctx.cp->derived(t.slot);
        Env fresh;
        Value v = eval_term(ctx, *d.body, fresh);
        if (t.slot < static_cast<int>(memo.size())) memo[t.slot] = v;
        return v;
      }
      if (t.slot < 0 || t.slot >= static_cast<int>(ctx.store->size()))
        throw UnknownReactive("read of unknown reactive '" + t.name + "'", t.pos);
      return Value((*ctx.store)[t.slot]);
    }
    case Term::K::Lambda: {
      ClosureValue cl;
      cl.lambda = &t;
      cl.env = std::make_shared<Env>(env);
      Value v;
      v.v = std::move(cl);
      return v;
    }
    case Term::K::BinOpK: {
      switch (t.bop) {
        case BinOp::And: {
          Value a = eval_term(ctx, *t.a, env);
          if (!a.as_bool()) return bool_v(false);
          return bool_v(eval_term(ctx, *t.b, env).as_bool());
        }
        case BinOp::Or: {
          Value a = eval_term(ctx, *t.a, env);
          if (a.as_bool()) return bool_v(true);
          return bool_v(eval_term(ctx, *t.b, env).as_bool());
        }
        case BinOp::Implies: {
          Value a = eval_term(ctx, *t.a, env);
          if (!a.as_bool()) return bool_v(true);
          return bool_v(eval_term(ctx, *t.b, env).as_bool());
        }
        case BinOp::Iff: {
          bool a = eval_term(ctx, *t.a, env).as_bool();
          bool b = eval_term(ctx, *t.b, env).as_bool();
          return bool_v(a == b);
        }
        default: break;
      }
      Value a = eval_term(ctx, *t.a, env);
      Value b = eval_term(ctx, *t.b, env);
      switch (t.bop) {
        case BinOp::Add: return int_v(checked_add(a.as_int(), b.as_int(), t.pos));
        case BinOp::Sub: return int_v(checked_sub(a.as_int(), b.as_int(), t.pos));
        case BinOp::Mul: return int_v(checked_mul(a.as_int(), b.as_int(), t.pos));
        case BinOp::Div:
          if (b.as_int() == 0) throw Stuck("division by zero", t.pos);
          return int_v(a.as_int() / b.as_int());
        case BinOp::Mod:
          if (b.as_int() == 0) throw Stuck("modulo by zero", t.pos);
          return int_v(a.as_int() % b.as_int());
        case BinOp::Eq: return bool_v(a == b);
        case BinOp::Ne: return bool_v(a != b);
        case BinOp::Lt: return bool_v(a.as_int() < b.as_int());
        case BinOp::Le: return bool_v(a.as_int() <= b.as_int());
        case BinOp::Gt: return bool_v(a.as_int() > b.as_int());
        case BinOp::Ge: return bool_v(a.as_int() >= b.as_int());
        case BinOp::In:
          return bool_v(set_contains(std::get<SetValue>(b.v).elems, a));
        default: throw Stuck("bad binary operator", t.pos);
      }
    }
    case Term::K::UnOpK: {
      Value a = eval_term(ctx, *t.a, env);
      if (t.uop == UnOp::Not) return bool_v(!a.as_bool());
      return int_v(checked_sub(0, a.as_int(), t.pos));
    }
    case Term::K::Call: return eval_builtin(ctx, t, env);
    case Term::K::Field: {
      Value r = eval_term(ctx, *t.a, env);
      const auto& rec = std::get<RecordValue>(r.v);
      if (t.ival < 0) return int_v(appt_days(r));  // Appointment.days
      return rec.fields[static_cast<std::size_t>(t.ival)];
    }
    case Term::K::TupleMk: {
      TupleValue tv;
      for (const auto& a : t.args) tv.items.push_back(eval_term(ctx, *a, env));
      Value v;
      v.v = std::move(tv);
      return v;
    }
    case Term::K::TupleGet: {
      Value r = eval_term(ctx, *t.a, env);
      return std::get<TupleValue>(r.v).items[static_cast<std::size_t>(t.ival - 1)];
    }
    case Term::K::Forall:
    case Term::K::Exists: {
      if (!ctx.universe)
        throw UniverseMissing("quantifier over " + type_name(t.qtype) +
                                  " evaluated without a universe",
                              t.pos);
      const std::vector<Value>* dom = ctx.universe->domain(t.qtype);
      static const std::vector<Value> kBoolDom = {Value(false), Value(true)};
      static const std::vector<Value> kEmpty;
      if (!dom) {
        if (t.qtype.kind == TypeKind::Bool) dom = &kBoolDom;
        else dom = &kEmpty;  // empty active domain: forall true, exists false
      }
      bool isForall = t.k == Term::K::Forall;
      for (const Value& v : *dom) {
        env.push_back(v);
        bool r = eval_term(ctx, *t.a, env).as_bool();
        env.pop_back();
        if (isForall && !r) return bool_v(false);
        if (!isForall && r) return bool_v(true);
      }
      return bool_v(isForall);
    }
  }
  throw Stuck("unreachable term", t.pos);
}

bool eval_logic(const EvalCtx& ctx, const Term& t, Env& env) {
  return eval_term(ctx, t, env).as_bool();
}

Value eval_clause(const EvalCtx& ctx, const InteractionDecl& d, const Term& clause,
                  const Value& arg) {
  Env env;
  const Term* t = &clause;
  for (const std::string& target : d.modifies) {
    // Current value of each modified reactive, in modifies order.
    int ix = ctx.cp->sourceIndex.at(target);
    env.push_back(Value((*ctx.store)[ix]));
    t = t->a.get();
  }
  env.push_back(arg);
  return eval_term(ctx, *t->a, env);
}

Store update_store(const CheckedProgram& cp, const Store& s,
                   const std::vector<std::string>& targets,
                   const std::vector<MergeValue>& values) {
  if (targets.size() != values.size())
    throw EvalError("update_store: targets/values arity mismatch");
  Store out = s;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    auto it = cp.sourceIndex.find(targets[i]);
    if (it == cp.sourceIndex.end())
      throw UnknownReactive("update target '" + targets[i] + "' is not a source");
    out[it->second] = merge_value(out[it->second], values[i]);
  }
  return out;
}

Store merge_store(const Store& a, const Store& b) {
  if (a.size() != b.size()) throw EvalError("merge_store: domain mismatch");
  Store out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(merge_value(a[i], b[i]));
  return out;
}

bool leq_store(const Store& a, const Store& b) {
  if (a.size() != b.size()) throw EvalError("leq_store: domain mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!leq_value(a[i], b[i])) return false;
  return true;
}

bool invariant_holds(const CheckedProgram& cp, const Store& s, const InvariantDecl& inv,
                     const std::vector<std::pair<Type, Value>>* extras) {
  Universe u = Universe::active_domain(cp, s);
  if (extras)
    for (const auto& [t, v] : *extras) u.add_value(t, v);
  EvalCtx ctx(cp, s, 0, &u);
  Env env;
  return eval_logic(ctx, *inv.formula, env);
}

std::optional<int> first_violated_invariant(const CheckedProgram& cp, const Store& s) {
  Universe u = Universe::active_domain(cp, s);
  EvalCtx ctx(cp, s, 0, &u);
  for (const auto& inv : cp.program.invariants) {
    Env env;
    if (!eval_logic(ctx, *inv.formula, env)) return inv.id;
  }
  return std::nullopt;
}

std::string store_text(const CheckedProgram& cp, const Store& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ";";
    os << cp.program.sources[i].name << "=" << canonical_text(s[i]);
  }
  return os.str();
}

std::uint64_t store_digest(const CheckedProgram& cp, const Store& s) {
  std::string t = store_text(cp, s);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : t) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace lore
