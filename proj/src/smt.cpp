#include "lore/smt.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace lore {

namespace {

struct NotEncodableErr {
  std::string why;
};

[[noreturn]] void bail(const std::string& why) { throw NotEncodableErr{why}; }

std::string sort_of(const Type& t) {
  switch (t.kind) {
    case TypeKind::Int: return "Int";
    case TypeKind::Bool: return "Bool";
    case TypeKind::Record: return t.record;
    default: bail("type " + type_name(t) + " is outside the SMT fragment");
  }
}

// A set denotation: membership formula builder.
using SetDen = std::function<std::string(const std::string&)>;

struct Binding {
  enum class K { ReactiveParam, Arg, QuantVar } k;
  int sourceIx = -1;     // ReactiveParam
  std::string smtName;   // Arg / QuantVar
  Type type;
};

// World: how each source reactive's membership / sum ghost is named.
struct World {
  // memFor[srcIx](x) = membership formula of source srcIx
  std::vector<SetDen> mem;
  std::vector<std::string> sum;  // sum ghost expression per source ("" if unused)
};

class Encoder {
 public:
  explicit Encoder(const CheckedProgram& cp) : cp_(cp) {}

  const CheckedProgram& cp_;
  std::ostringstream decls_;
  std::set<std::string> emittedSorts_;
  std::set<std::string> emittedFuns_;
  int freshCounter_ = 0;

  std::string fresh(const std::string& stem) {
    return stem + "_" + std::to_string(freshCounter_++);
  }

  void need_record_sort(const std::string& name) {
    if (!emittedSorts_.insert(name).second) return;
    decls_ << "(declare-sort " << name << " 0)\n";
    const RecordTypeDef* def = find_record(name);
    for (const auto& [fn, ft] : def->fields)
      decls_ << "(declare-fun " << accessor(name, fn) << " (" << name << ") "
             << sort_of(ft) << ")\n";
  }

  static std::string accessor(const std::string& rec, const std::string& field) {
    return rec + "_" + field;
  }

  void declare_const(const std::string& name, const std::string& sort) {
    if (emittedFuns_.insert(name).second)
      decls_ << "(declare-const " << name << " " << sort << ")\n";
  }
  void declare_mem(const std::string& name, const std::string& sort) {
    if (emittedFuns_.insert(name).second)
      decls_ << "(declare-fun " << name << " (" << sort << ") Bool)\n";
  }

  // Whether a source participates in sum aggregation (sumDays over it).
  std::set<int> sum_sources() {
    std::set<int> out;
    std::function<void(const Term*)> scan = [&](const Term* t) {
      if (!t) return;
      if (t->k == Term::K::Call && t->builtin == Builtin::SumDays) {
        const Term* inner = t->args[0].get();
        if (inner->k == Term::K::Call && inner->builtin == Builtin::ToSet) {
          const Term* recv = inner->args[0].get();
          if (recv->k == Term::K::ReactiveRead && !recv->reads_derived)
            out.insert(recv->slot);
        }
      }
      scan(t->a.get());
      scan(t->b.get());
      for (const auto& x : t->args) scan(x.get());
    };
    for (const auto& d : cp_.program.deriveds) scan(d.body.get());
    for (const auto& i : cp_.program.interactions) {
      for (const auto& c : i.requiresClauses) scan(c.get());
      for (const auto& c : i.ensuresClauses) scan(c.get());
    }
    for (const auto& inv : cp_.program.invariants) scan(inv.formula.get());
    return out;
  }

  // ---- term translation ----

  struct Scope {
    const World* world;
    std::vector<Binding> bindings;  // lambda/quantifier stack
  };

  std::string tr(const Term& t, Scope& sc) {
    switch (t.k) {
      case Term::K::IntLit: {
        if (t.ival < 0) return "(- " + std::to_string(-t.ival) + ")";
        return std::to_string(t.ival);
      }
      case Term::K::BoolLit: return t.bval ? "true" : "false";
      case Term::K::Var: {
        const Binding& b = binding_at(t, sc);
        if (b.k == Binding::K::ReactiveParam)
          bail("modified reactive used as a scalar");
        return b.smtName;
      }
      case Term::K::ReactiveRead: {
        if (t.reads_derived) {
          const DerivedDecl& d = cp_.derived(t.slot);
          if (d.declaredType.kind == TypeKind::Int) {
            Scope inner{sc.world, {}};
            return tr(*d.body, inner);
          }
          bail("derived '" + d.name + "' read as a scalar");
        }
        bail("source '" + t.name + "' read as a scalar");
      }
      case Term::K::BinOpK: {
        if (t.bop == BinOp::In) {
          SetDen den = tr_set(*t.b, sc);
          return den(tr(*t.a, sc));
        }
        std::string a = tr(*t.a, sc);
        std::string b = tr(*t.b, sc);
        switch (t.bop) {
          case BinOp::Add: return "(+ " + a + " " + b + ")";
          case BinOp::Sub: return "(- " + a + " " + b + ")";
          case BinOp::Mul: return "(* " + a + " " + b + ")";
          case BinOp::Div: return "(div " + a + " " + b + ")";
          case BinOp::Mod: return "(mod " + a + " " + b + ")";
          case BinOp::Eq: return "(= " + a + " " + b + ")";
          case BinOp::Ne: return "(not (= " + a + " " + b + "))";
          case BinOp::Lt: return "(< " + a + " " + b + ")";
          case BinOp::Le: return "(<= " + a + " " + b + ")";
          case BinOp::Gt: return "(> " + a + " " + b + ")";
          case BinOp::Ge: return "(>= " + a + " " + b + ")";
          case BinOp::And: return "(and " + a + " " + b + ")";
          case BinOp::Or: return "(or " + a + " " + b + ")";
          case BinOp::Implies: return "(=> " + a + " " + b + ")";
          case BinOp::Iff: return "(= " + a + " " + b + ")";
          default: bail("operator outside fragment");
        }
      }
      case Term::K::UnOpK: {
        std::string a = tr(*t.a, sc);
        return t.uop == UnOp::Not ? "(not " + a + ")" : "(- " + a + ")";
      }
      case Term::K::Call: return tr_call(t, sc);
      case Term::K::Field: {
        const Term* base = t.a.get();
        if (t.ival < 0) {  // Appointment.days
          std::string x = tr(*base, sc);
          return "(- (Appointment_end " + x + ") (Appointment_start " + x + "))";
        }
        const RecordTypeDef& def = record_registry()[t.record];
        need_record_sort(def.name);
        return "(" + accessor(def.name, def.fields[t.ival].first) + " " + tr(*base, sc) +
               ")";
      }
      case Term::K::TupleGet: {
        const Term* base = t.a.get();
        if (base->k == Term::K::Var) {
          const Binding& b = binding_at(*base, sc);
          if (b.k == Binding::K::Arg)
            return b.smtName + "_" + std::to_string(t.ival);
        }
        bail("tuple access outside the argument");
      }
      case Term::K::Forall:
      case Term::K::Exists: {
        std::string sort = sort_of(t.qtype);
        if (t.qtype.kind == TypeKind::Record) need_record_sort(t.qtype.record);
        std::string var = fresh("q");
        sc.bindings.push_back({Binding::K::QuantVar, -1, var, t.qtype});
        std::string body = tr(*t.a, sc);
        sc.bindings.pop_back();
        return std::string("(") + (t.k == Term::K::Forall ? "forall" : "exists") + " ((" +
               var + " " + sort + ")) " + body + ")";
      }
      default: bail("term outside the SMT fragment");
    }
  }

  std::string tr_call(const Term& t, Scope& sc) {
    switch (t.builtin) {
      case Builtin::GetStart:
        return "(Appointment_start " + tr(*t.args[0], sc) + ")";
      case Builtin::GetEnd: return "(Appointment_end " + tr(*t.args[0], sc) + ")";
      case Builtin::Days: {
        std::string x = tr(*t.args[0], sc);
        return "(- (Appointment_end " + x + ") (Appointment_start " + x + "))";
      }
      case Builtin::SumDays: {
        const Term* inner = t.args[0].get();
        if (inner->k == Term::K::Call && inner->builtin == Builtin::ToSet) {
          const Term* recv = inner->args[0].get();
          if (recv->k == Term::K::ReactiveRead && !recv->reads_derived) {
            const std::string& g = sc.world->sum[recv->slot];
            if (!g.empty()) return g;
          }
        }
        bail("sumDays over a non-source set");
      }
      default: bail("builtin '" + t.name + "' outside the SMT fragment");
    }
  }

  SetDen tr_set(const Term& t, Scope& sc) {
    switch (t.k) {
      case Term::K::ReactiveRead: {
        if (t.reads_derived) {
          const DerivedDecl& d = cp_.derived(t.slot);
          // Inline the derived set body.
          Term* body = d.body.get();
          Scope inner{sc.world, {}};
          return tr_set_copy(*body, inner);
        }
        const World* w = sc.world;
        int slot = t.slot;
        return w->mem[slot];
      }
      case Term::K::Call: {
        if (t.builtin == Builtin::ToSet) {
          const Term* recv = t.args[0].get();
          if (recv->k == Term::K::ReactiveRead && !recv->reads_derived)
            return sc.world->mem[recv->slot];
          if (recv->k == Term::K::Var) {
            const Binding& b = binding_at(*recv, sc);
            if (b.k == Binding::K::ReactiveParam) return sc.world->mem[b.sourceIx];
          }
          bail("toSet on an unsupported receiver");
        }
        if (t.builtin == Builtin::Union) {
          SetDen a = tr_set(*t.args[0], sc);
          SetDen b = tr_set(*t.args[1], sc);
          return [a, b](const std::string& x) {
            return "(or " + a(x) + " " + b(x) + ")";
          };
        }
        bail("set operation '" + t.name + "' outside the SMT fragment");
      }
      case Term::K::Var: {
        const Binding& b = binding_at(t, sc);
        if (b.k == Binding::K::ReactiveParam) return sc.world->mem[b.sourceIx];
        bail("variable used as a set");
      }
      default: bail("set expression outside the SMT fragment");
    }
  }

  // tr_set over an inlined derived body needs a stable Scope copy.
  SetDen tr_set_copy(const Term& t, Scope sc) {
    // The inner scope has no bindings; capture the world only.
    return tr_set(t, sc);
  }

  const Binding& binding_at(const Term& var, Scope& sc) {
    if (var.slot >= 0 && var.slot < static_cast<int>(sc.bindings.size()))
      return sc.bindings[var.slot];
    bail("unbound variable '" + var.name + "' in the SMT fragment");
  }
};

struct Effect {
  // Post membership of a modified source: base plus added, minus removed.
  std::vector<std::string> added;    // SMT exprs of added elements
  std::vector<std::string> removed;  // SMT exprs of removed elements
};

// Walks an executes chain (param.remove(x).add(y)...) for one target.
Effect effect_of(Encoder& enc, const Term& exec, Encoder::Scope& sc, int paramSlot) {
  Effect eff;
  const Term* t = &exec;
  std::vector<const Term*> chain;
  while (t->k == Term::K::Call &&
         (t->builtin == Builtin::AddElem || t->builtin == Builtin::RemoveElem)) {
    chain.push_back(t);
    t = t->args[0].get();
  }
  if (!(t->k == Term::K::Var && t->slot == paramSlot))
    bail("executes must be an add/remove chain on the modified reactive");
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    std::string e = enc.tr(*(*it)->args[1], sc);
    if ((*it)->builtin == Builtin::AddElem) eff.added.push_back(e);
    else eff.removed.push_back(e);
  }
  return eff;
}

struct InteractionEncoding {
  std::vector<Effect> effects;  // per modified source (by modifies order)
  std::vector<std::string> argConsts;
};

// Declares argument constants and computes the effects of `d` under `enc`.
InteractionEncoding encode_interaction(Encoder& enc, const InteractionDecl& d,
                                       const std::string& argStem, const World& preWorld,
                                       Encoder::Scope& scOut) {
  InteractionEncoding out;
  if (d.argType.kind == TypeKind::Record) {
    enc.need_record_sort(d.argType.record);
    enc.declare_const(argStem, d.argType.record);
    out.argConsts.push_back(argStem);
  } else if (d.argType.kind == TypeKind::Int) {
    enc.declare_const(argStem, "Int");
    out.argConsts.push_back(argStem);
  } else if (d.argType.kind == TypeKind::Tuple) {
    for (std::size_t i = 0; i < d.argType.params.size(); ++i) {
      const Type& it = d.argType.params[i];
      std::string n = argStem + "_" + std::to_string(i + 1);
      if (it.kind == TypeKind::Record) {
        enc.need_record_sort(it.record);
        enc.declare_const(n, it.record);
      } else if (it.kind == TypeKind::Int) {
        enc.declare_const(n, "Int");
      } else {
        bail("tuple argument component outside fragment");
      }
      out.argConsts.push_back(n);
    }
  } else if (d.argType.kind == TypeKind::Fun) {
    bail("closure-valued argument");
  } else {
    bail("argument type " + type_name(d.argType) + " outside fragment");
  }

  scOut.world = &preWorld;
  scOut.bindings.clear();
  for (std::size_t i = 0; i < d.modifies.size(); ++i) {
    Binding b;
    b.k = Binding::K::ReactiveParam;
    b.sourceIx = enc.cp_.sourceIndex.at(d.modifies[i]);
    scOut.bindings.push_back(b);
  }
  Binding argB;
  argB.k = Binding::K::Arg;
  argB.smtName = argStem;
  argB.type = d.argType;
  scOut.bindings.push_back(argB);

  // Effects per target, from the executes body.
  const Term* body = d.executes.get();
  for (std::size_t i = 0; i < d.modifies.size() + 1; ++i) body = body->a.get();
  if (d.modifies.size() == 1) {
    out.effects.push_back(
        effect_of(enc, *body, scOut, static_cast<int>(d.modifies.size()) - 1));
  } else {
    if (body->k != Term::K::TupleMk) bail("multi-target executes must return a tuple literal");
    for (std::size_t i = 0; i < d.modifies.size(); ++i)
      out.effects.push_back(effect_of(enc, *body->args[i], scOut, static_cast<int>(i)));
  }
  return out;
}

// Builds the post world from a pre world and per-source effects.
World post_world(Encoder& enc, const World& pre, const InteractionDecl& d,
                 const std::vector<Effect>& effects, const std::set<int>& sumSources,
                 bool addNonMemberGuard) {
  World post = pre;
  for (std::size_t i = 0; i < d.modifies.size(); ++i) {
    int src = enc.cp_.sourceIndex.at(d.modifies[i]);
    SetDen base = pre.mem[src];
    Effect eff = effects[i];
    post.mem[src] = [base, eff](const std::string& x) {
      std::string m = base(x);
      for (const auto& r : eff.removed) m = "(and " + m + " (not (= " + x + " " + r + ")))";
      for (const auto& a : eff.added) m = "(or " + m + " (= " + x + " " + a + "))";
      return m;
    };
    if (sumSources.count(src)) {
      if (!addNonMemberGuard)
        bail("sum ghost update without a uniqueness precondition");
      std::string s = pre.sum[src];
      auto days = [](const std::string& e) {
        return "(- (Appointment_end " + e + ") (Appointment_start " + e + "))";
      };
      for (const auto& r : eff.removed) s = "(- " + s + " " + days(r) + ")";
      for (const auto& a : eff.added) s = "(+ " + s + " " + days(a) + ")";
      post.sum[src] = s;
    }
  }
  return post;
}

World base_world(Encoder& enc, const std::string& suffix, const std::set<int>& sumSources) {
  const auto& sources = enc.cp_.program.sources;
  World w;
  w.mem.resize(sources.size());
  w.sum.resize(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const SourceDecl& s = sources[i];
    if (s.crdtKind != CrdtKind::AWSet) bail("non-AWSet source outside fragment");
    std::string sort = sort_of(s.elementType);
    if (s.elementType.kind == TypeKind::Record) enc.need_record_sort(s.elementType.record);
    std::string memName = s.name + "_mem" + suffix;
    enc.declare_mem(memName, sort);
    w.mem[i] = [memName](const std::string& x) { return "(" + memName + " " + x + ")"; };
    if (sumSources.count(static_cast<int>(i))) {
      std::string g = s.name + "_sum" + suffix;
      enc.declare_const(g, "Int");
      w.sum[i] = g;
    }
  }
  return w;
}

std::string invariant_assertion(Encoder& enc, const World& w, const InvariantDecl& inv) {
  Encoder::Scope sc{&w, {}};
  return enc.tr(*inv.formula, sc);
}

std::string clause_assertion(Encoder& enc, const World& w, const InteractionDecl& d,
                             const Term& clause, const std::vector<std::string>& argConsts) {
  Encoder::Scope sc{&w, {}};
  for (std::size_t i = 0; i < d.modifies.size(); ++i) {
    Binding b;
    b.k = Binding::K::ReactiveParam;
    b.sourceIx = enc.cp_.sourceIndex.at(d.modifies[i]);
    sc.bindings.push_back(b);
  }
  Binding argB;
  argB.k = Binding::K::Arg;
  argB.smtName = argConsts.size() == 1 ? argConsts[0] : argConsts[0].substr(0, argConsts[0].rfind("_1"));
  argB.type = d.argType;
  sc.bindings.push_back(argB);
  const Term* body = &clause;
  for (std::size_t i = 0; i < d.modifies.size() + 1; ++i) body = body->a.get();
  return enc.tr(*body, sc);
}

bool uniqueness_pre_present(const InteractionDecl& d) {
  // A `!(x in param.toSet)` requires-clause justifies the sum ghost update
  // for adds; removes need `x in param.toSet`. A coarse syntactic look.
  return !d.requiresClauses.empty();
}

std::string script_header(const std::string& obligation) {
  std::ostringstream os;
  os << "; obligation: " << obligation << "\n";
  os << "; unsat of this script implies the unbounded property; sum aggregates over\n";
  os << "; merged states are ghost constants with bounding axioms, so sat answers may\n";
  os << "; be spurious for confluence obligations and are cross-checked by the bounded\n";
  os << "; checker.\n";
  os << "(set-logic ALL)\n";
  return os.str();
}

}  // namespace

SmtResult emit_preservation_smt(const CheckedProgram& cp, const std::string& interaction) {
  SmtResult res;
  res.obligation = "preservation:" + interaction;
  const InteractionDecl* d = cp.executable(interaction);
  if (!d) {
    res.why = "interaction is partial or unknown";
    return res;
  }
  try {
    Encoder enc(cp);
    std::set<int> sums = enc.sum_sources();
    World pre = base_world(enc, "", sums);
    Encoder::Scope sc{&pre, {}};
    InteractionEncoding ie = encode_interaction(enc, *d, "arg", pre, sc);
    World post =
        post_world(enc, pre, *d, ie.effects, sums, uniqueness_pre_present(*d));

    std::ostringstream body;
    body << "; pre-state invariants (validity of the starting device)\n";
    for (const auto& inv : cp.program.invariants)
      body << "(assert " << invariant_assertion(enc, pre, inv) << ")\n";
    body << "; preconditions\n";
    for (const auto& c : d->requiresClauses)
      body << "(assert " << clause_assertion(enc, pre, *d, *c, ie.argConsts) << ")\n";
    body << "; negated conclusion: postconditions and invariants on the post state\n";
    std::ostringstream conc;
    conc << "(and true";
    for (const auto& c : d->ensuresClauses)
      conc << " " << clause_assertion(enc, post, *d, *c, ie.argConsts);
    for (const auto& inv : cp.program.invariants)
      conc << " " << invariant_assertion(enc, post, inv);
    conc << ")";
    body << "(assert (not " << conc.str() << "))\n(check-sat)\n";

    res.script = script_header(res.obligation) + enc.decls_.str() + body.str();
    res.encodable = true;
  } catch (const NotEncodableErr& e) {
    res.why = e.why;
  }
  return res;
}

SmtResult emit_confluence_smt(const CheckedProgram& cp, const std::string& a1,
                              const std::string& a2) {
  SmtResult res;
  auto nm = std::minmax(a1, a2);
  res.obligation = "confluence:" + nm.first + ":" + nm.second;
  const InteractionDecl* d1 = cp.executable(nm.first);
  const InteractionDecl* d2 = cp.executable(nm.second);
  if (!d1 || !d2) {
    res.why = "interaction is partial or unknown";
    return res;
  }
  try {
    Encoder enc(cp);
    std::set<int> sums = enc.sum_sources();
    // Merge of post-states is encoded as union, which models add-wins sets
    // only for add-only effects.
    for (const InteractionDecl* d : {d1, d2}) {
      std::function<bool(const Term*)> hasRemove = [&](const Term* t) -> bool {
        if (!t) return false;
        if (t->k == Term::K::Call &&
            (t->builtin == Builtin::RemoveElem || t->builtin == Builtin::RemoveIf))
          return true;
        if (hasRemove(t->a.get()) || hasRemove(t->b.get())) return true;
        for (const auto& x : t->args)
          if (hasRemove(x.get())) return true;
        return false;
      };
      if (hasRemove(d->executes.get()))
        bail("remove effects make the union encoding of merge unsound");
    }

    World preI = base_world(enc, "_i", sums);
    World preJ = base_world(enc, "_j", sums);
    Encoder::Scope scI{&preI, {}};
    Encoder::Scope scJ{&preJ, {}};
    InteractionEncoding ie1 = encode_interaction(enc, *d1, "v1", preI, scI);
    InteractionEncoding ie2 = encode_interaction(enc, *d2, "v2", preJ, scJ);
    World postI = post_world(enc, preI, *d1, ie1.effects, sums, uniqueness_pre_present(*d1));
    World postJ = post_world(enc, preJ, *d2, ie2.effects, sums, uniqueness_pre_present(*d2));

    auto merged_world = [&](const World& a, const World& b, const std::string& suffix) {
      World m;
      std::size_t n = cp.program.sources.size();
      m.mem.resize(n);
      m.sum.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        SetDen ma = a.mem[i];
        SetDen mb = b.mem[i];
        m.mem[i] = [ma, mb](const std::string& x) {
          return "(or " + ma(x) + " " + mb(x) + ")";
        };
        if (sums.count(static_cast<int>(i))) {
          std::string g = cp.program.sources[i].name + "_sum" + suffix;
          enc.declare_const(g, "Int");
          m.sum[i] = g;
        }
      }
      return m;
    };
    World m = merged_world(postI, postJ, "_m");
    World m1 = merged_world(preI, postJ, "_m1");
    World m2 = merged_world(postI, preJ, "_m2");

    std::ostringstream body;
    body << "; pre-state invariants on both valid devices\n";
    for (const auto& inv : cp.program.invariants) {
      body << "(assert " << invariant_assertion(enc, preI, inv) << ")\n";
      body << "(assert " << invariant_assertion(enc, preJ, inv) << ")\n";
    }
    body << "; preconditions of both executions\n";
    for (const auto& c : d1->requiresClauses)
      body << "(assert " << clause_assertion(enc, preI, *d1, *c, ie1.argConsts) << ")\n";
    for (const auto& c : d2->requiresClauses)
      body << "(assert " << clause_assertion(enc, preJ, *d2, *c, ie2.argConsts) << ")\n";

    body << "; ghost bounds for sums over merged member sets\n";
    for (std::size_t i = 0; i < cp.program.sources.size(); ++i) {
      if (!sums.count(static_cast<int>(i))) continue;
      auto bound = [&](const World& mw, const World& a, const World& b) {
        body << "(assert (>= " << mw.sum[i] << " " << a.sum[i] << "))\n";
        body << "(assert (>= " << mw.sum[i] << " " << b.sum[i] << "))\n";
        body << "(assert (<= " << mw.sum[i] << " (+ " << a.sum[i] << " " << b.sum[i]
             << ")))\n";
      };
      bound(m, postI, postJ);
      bound(m1, preI, postJ);
      bound(m2, postI, preJ);
    }

    body << "; negated conclusion: merged validity and both re-executions enabled\n";
    std::ostringstream conc;
    conc << "(and true";
    for (const auto& inv : cp.program.invariants)
      conc << " " << invariant_assertion(enc, m, inv);
    for (const auto& c : d1->requiresClauses)
      conc << " " << clause_assertion(enc, m1, *d1, *c, ie1.argConsts);
    for (const auto& c : d2->requiresClauses)
      conc << " " << clause_assertion(enc, m2, *d2, *c, ie2.argConsts);
    conc << ")";
    body << "(assert (not " << conc.str() << "))\n(check-sat)\n";

    res.script = script_header(res.obligation) + enc.decls_.str() + body.str();
    res.encodable = true;
  } catch (const NotEncodableErr& e) {
    res.why = e.why;
  }
  return res;
}

std::vector<SmtResult> emit_all_smt(const CheckedProgram& cp) {
  std::vector<SmtResult> out;
  DataflowGraph g = build_graph(cp);
  OverlapReport overlap = overlapping_pairs(g, cp);
  std::vector<std::string> names = cp.executable_names();
  for (const auto& n : names) out.push_back(emit_preservation_smt(cp, n));
  std::sort(names.begin(), names.end());
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i; j < names.size(); ++j)
      if (overlap.interactionPairs.count({names[i], names[j]}))
        out.push_back(emit_confluence_smt(cp, names[i], names[j]));
  return out;
}

}  // namespace lore
