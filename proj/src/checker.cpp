#include "lore/checker.hpp"

#include <algorithm>
#include <sstream>

#include "lore/parser.hpp"

namespace lore {

bool operator==(const Type& a, const Type& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == TypeKind::Record) return a.record == b.record;
  if (a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (!(a.params[i] == b.params[i])) return false;
  return true;
}

std::string type_name(const Type& t) {
  switch (t.kind) {
    case TypeKind::Unit: return "Unit";
    case TypeKind::Bool: return "Bool";
    case TypeKind::Int: return "Int";
    case TypeKind::String: return "String";
    case TypeKind::Record: return t.record;
    case TypeKind::Set: return "Set[" + type_name(t.params[0]) + "]";
    case TypeKind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < t.params.size(); ++i) {
        if (i) s += ", ";
        s += type_name(t.params[i]);
      }
      return s + ")";
    }
    case TypeKind::Fun: return type_name(t.params[0]) + " => " + type_name(t.params[1]);
    case TypeKind::AWSet: return "AWSet[" + type_name(t.params[0]) + "]";
    case TypeKind::PNCounter: return "PNCounter";
    case TypeKind::LWWRegister: return "LWWRegister[" + type_name(t.params[0]) + "]";
    case TypeKind::Invalid: return "<invalid>";
  }
  return "?";
}

const std::vector<RecordTypeDef>& record_registry() {
  static const std::vector<RecordTypeDef> defs = {
      {"Appointment",
       {{"id", Type::integer()}, {"start", Type::integer()}, {"end", Type::integer()}}},
      {"Payment",
       {{"id", Type::integer()}, {"district", Type::integer()}, {"amount", Type::integer()}}},
      {"Order", {{"id", Type::integer()}, {"carrier", Type::integer()}}},
      {"NewOrder", {{"id", Type::integer()}}},
  };
  return defs;
}

const RecordTypeDef* find_record(const std::string& name) {
  for (const auto& d : record_registry())
    if (d.name == name) return &d;
  return nullptr;
}

std::uint32_t record_index(const std::string& name) {
  const auto& reg = record_registry();
  for (std::uint32_t i = 0; i < reg.size(); ++i)
    if (reg[i].name == name) return i;
  throw UnknownIdentifier("unknown record type '" + name + "'");
}

std::string format_error(const std::string& file, const LoreError& e) {
  std::ostringstream os;
  os << file << ":" << e.pos.line << ":" << e.pos.col << ": " << e.what();
  return os.str();
}

namespace {

class Checker {
 public:
  explicit Checker(CheckedProgram& cp) : cp_(cp), p_(cp.program) {}

  void run() {
    index_names();
    order_deriveds();
    for (int ix : cp_.derivedTopo) {
      DerivedDecl& d = p_.deriveds[ix];
      std::vector<std::pair<std::string, Type>> env;
      Type got = check_term(d.body, env);
      if (!(got == d.declaredType))
        throw TypeError("derived '" + d.name + "' declares " + type_name(d.declaredType) +
                            " but its body has type " + type_name(got),
                        d.pos);
    }
    for (std::size_t i = 0; i < p_.interactions.size(); ++i) check_interaction(i);
    for (auto& inv : p_.invariants) {
      std::vector<std::pair<std::string, Type>> env;
      Type got = check_term(inv.formula, env);
      if (got.kind != TypeKind::Bool)
        throw TypeError("invariant must be a Bool formula", inv.pos);
    }
  }

 private:
  CheckedProgram& cp_;
  Program& p_;

  void index_names() {
    for (std::size_t i = 0; i < p_.sources.size(); ++i)
      cp_.sourceIndex[p_.sources[i].name] = static_cast<int>(i);
    for (std::size_t i = 0; i < p_.deriveds.size(); ++i)
      cp_.derivedIndex[p_.deriveds[i].name] = static_cast<int>(i);
  }

  // Direct reactive reads of a term (bare names or .value), before resolution.
  void scan_reads(const TermPtr& t, std::vector<std::string>& out,
                  std::vector<std::string>& bound) {
    if (!t) return;
    switch (t->k) {
      case Term::K::Var:
      case Term::K::ReactiveRead:
        if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) {
          if (cp_.sourceIndex.count(t->name) || cp_.derivedIndex.count(t->name))
            out.push_back(t->name);
        }
        return;
      case Term::K::Lambda: {
        bound.push_back(t->name);
        scan_reads(t->a, out, bound);
        bound.pop_back();
        return;
      }
      case Term::K::Forall:
      case Term::K::Exists: {
        bound.push_back(t->name);
        scan_reads(t->a, out, bound);
        bound.pop_back();
        return;
      }
      default:
        scan_reads(t->a, out, bound);
        scan_reads(t->b, out, bound);
        for (const auto& x : t->args) scan_reads(x, out, bound);
        return;
    }
  }

  void order_deriveds() {
    // Kahn's algorithm over derived→derived dependencies.
    std::size_t n = p_.deriveds.size();
    std::vector<std::vector<int>> dependents(n);
    std::vector<int> indeg(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> reads, bound;
      scan_reads(p_.deriveds[i].body, reads, bound);
      for (const auto& r : reads) {
        auto it = cp_.derivedIndex.find(r);
        if (it != cp_.derivedIndex.end()) {
          dependents[it->second].push_back(static_cast<int>(i));
          ++indeg[i];
        }
      }
    }
    std::vector<int> ready;
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
    while (!ready.empty()) {
      int ix = ready.front();
      ready.erase(ready.begin());
      cp_.derivedTopo.push_back(ix);
      for (int d : dependents[ix])
        if (--indeg[d] == 0) ready.push_back(d);
    }
    if (cp_.derivedTopo.size() != n) {
      std::string cyc;
      for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] > 0) cyc += (cyc.empty() ? "" : ", ") + p_.deriveds[i].name;
      throw CycleError("cycle among derived reactives: " + cyc);
    }
    enforce_declaration_order();
  }

  void enforce_declaration_order() {
    std::map<std::string, std::size_t> ordinal;
    for (std::size_t i = 0; i < p_.order.size(); ++i) {
      const TopItem& item = p_.order[i];
      if (item.k == TopItem::K::Source) ordinal[p_.sources[item.index].name] = i;
      else if (item.k == TopItem::K::Derived) ordinal[p_.deriveds[item.index].name] = i;
    }
    for (const auto& d : p_.deriveds) {
      std::vector<std::string> reads, bound;
      scan_reads(d.body, reads, bound);
      for (const auto& r : reads)
        if (ordinal.count(r) && ordinal[r] >= ordinal[d.name])
          throw SemanticError("derived '" + d.name + "' references '" + r +
                                  "' before its declaration",
                              d.pos);
    }
  }

  void check_interaction(std::size_t ix) {
    InteractionDecl& d = p_.interactions[ix];
    if (!d.modifies.empty()) {
      if (d.modifies.size() != d.modifiesTypes.size())
        throw ArityError("interaction '" + d.name + "' modifies " +
                             std::to_string(d.modifies.size()) + " reactives but declares " +
                             std::to_string(d.modifiesTypes.size()) + " modified types",
                         d.pos);
      for (std::size_t i = 0; i < d.modifies.size(); ++i) {
        auto it = cp_.sourceIndex.find(d.modifies[i]);
        if (it == cp_.sourceIndex.end())
          throw UnknownIdentifier("modifies target '" + d.modifies[i] +
                                      "' is not a source reactive",
                                  d.pos);
        Type actual = p_.sources[it->second].crdt_type();
        if (!(actual == d.modifiesTypes[i]))
          throw TypeError("interaction '" + d.name + "' declares modified type " +
                              type_name(d.modifiesTypes[i]) + " but '" + d.modifies[i] +
                              "' is " + type_name(actual),
                          d.pos);
      }
    }
    // Clause typing: curried over modified reactive values, then the argument.
    std::vector<std::pair<std::string, Type>> base;
    for (auto& clause : d.requiresClauses) check_clause(d, clause, Type::boolean());
    for (auto& clause : d.ensuresClauses) check_clause(d, clause, Type::boolean());
    if (d.executes) {
      Type result = d.modifiesTypes.size() == 1 ? d.modifiesTypes[0]
                                                : Type::tuple_of(d.modifiesTypes);
      check_clause(d, d.executes, result);
    }
    if (d.complete()) {
      cp_.executables.push_back(static_cast<int>(ix));
      // Arity: executes returns an n-tuple for n modified reactives; with the
      // clause body typed against the tuple type this is a structural check
      // on the lambda spine plus the result type, done in check_clause.
    }
  }

  void check_clause(const InteractionDecl& d, TermPtr& clause, Type want) {
    std::vector<std::pair<std::string, Type>> env;
    Term* t = clause.get();
    for (const Type& mt : d.modifiesTypes) {
      if (t->k != Term::K::Lambda)
        throw ArityError("clause of '" + d.name + "' must bind " +
                             std::to_string(d.modifiesTypes.size() + 1) + " parameters",
                         t->pos);
      t->qtype = mt;
      env.emplace_back(t->name, mt);
      t = t->a.get();
    }
    if (t->k != Term::K::Lambda)
      throw ArityError("clause of '" + d.name + "' is missing the argument parameter", t->pos);
    t->qtype = d.argType;
    env.emplace_back(t->name, d.argType);
    TermPtr body = t->a;
    Type got = check_term(body, env);
    if (want.kind == TypeKind::Tuple && d.modifiesTypes.size() > 1) {
      if (!(got == want))
        throw ArityError("executes of '" + d.name + "' must return a " +
                             std::to_string(d.modifiesTypes.size()) + "-tuple of " +
                             type_name(want) + ", found " + type_name(got),
                         body->pos);
    } else if (!(got == want)) {
      if (want.kind == TypeKind::Bool)
        throw TypeError("clause of '" + d.name + "' must be Bool, found " + type_name(got),
                        body->pos);
      throw ArityError("executes of '" + d.name + "' must return " + type_name(want) +
                           ", found " + type_name(got),
                       body->pos);
    }
  }

  Type field_type(const Type& recv, const std::string& field, const Term& at,
                  std::uint32_t* recIx, std::int64_t* fieldIx) {
    if (recv.kind != TypeKind::Record)
      throw TypeError("field access '." + field + "' on non-record " + type_name(recv), at.pos);
    const RecordTypeDef* def = find_record(recv.record);
    for (std::size_t i = 0; i < def->fields.size(); ++i)
      if (def->fields[i].first == field) {
        *recIx = record_index(recv.record);
        *fieldIx = static_cast<std::int64_t>(i);
        return def->fields[i].second;
      }
    if (field == "days" && recv.record == "Appointment") {
      *recIx = record_index(recv.record);
      *fieldIx = -1;  // computed: end - start
      return Type::integer();
    }
    throw TypeError("record " + recv.record + " has no field '" + field + "'", at.pos);
  }

  Type check_term(TermPtr& tp, std::vector<std::pair<std::string, Type>>& env) {
    Term& t = *tp;
    switch (t.k) {
      case Term::K::IntLit: return t.type = Type::integer();
      case Term::K::BoolLit: return t.type = Type::boolean();
      case Term::K::StrLit: return t.type = Type::string();
      case Term::K::Var: {
        for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i) {
          if (env[i].first == t.name) {
            t.slot = i;
            return t.type = env[i].second;
          }
        }
        // Bare reactive name reads the reactive.
        if (auto it = cp_.sourceIndex.find(t.name); it != cp_.sourceIndex.end()) {
          t.k = Term::K::ReactiveRead;
          t.slot = it->second;
          t.reads_derived = false;
          Type ty = p_.sources[it->second].crdt_type();
          // In term position a counter read denotes the CRDT value; `.count`
          // and `.toSet` project it.
          return t.type = ty;
        }
        if (auto it = cp_.derivedIndex.find(t.name); it != cp_.derivedIndex.end()) {
          t.k = Term::K::ReactiveRead;
          t.slot = it->second;
          t.reads_derived = true;
          return t.type = p_.deriveds[it->second].declaredType;
        }
        throw UnknownIdentifier("unknown identifier '" + t.name + "'", t.pos);
      }
      case Term::K::ReactiveRead: {
        if (auto it = cp_.sourceIndex.find(t.name); it != cp_.sourceIndex.end()) {
          t.slot = it->second;
          t.reads_derived = false;
          return t.type = p_.sources[it->second].crdt_type();
        }
        if (auto it = cp_.derivedIndex.find(t.name); it != cp_.derivedIndex.end()) {
          t.slot = it->second;
          t.reads_derived = true;
          return t.type = p_.deriveds[it->second].declaredType;
        }
        throw UnknownIdentifier("'.value' read of unknown reactive '" + t.name + "'", t.pos);
      }
      case Term::K::Lambda: {
        if (t.qtype.kind == TypeKind::Invalid)
          throw TypeError("lambda parameter '" + t.name + "' has no inferable type", t.pos);
        env.emplace_back(t.name, t.qtype);
        Type body = check_term(t.a, env);
        env.pop_back();
        return t.type = Type::fun(t.qtype, body);
      }
      case Term::K::BinOpK: {
        switch (t.bop) {
          case BinOp::Add:
          case BinOp::Sub:
          case BinOp::Mul:
          case BinOp::Div:
          case BinOp::Mod: {
            expect(t.a, env, Type::integer());
            expect(t.b, env, Type::integer());
            return t.type = Type::integer();
          }
          case BinOp::Lt:
          case BinOp::Le:
          case BinOp::Gt:
          case BinOp::Ge: {
            expect(t.a, env, Type::integer());
            expect(t.b, env, Type::integer());
            return t.type = Type::boolean();
          }
          case BinOp::Eq:
          case BinOp::Ne: {
            Type l = check_term(t.a, env);
            Type r = check_term(t.b, env);
            if (!(l == r))
              throw TypeError("'==' over different types " + type_name(l) + " and " +
                                  type_name(r),
                              t.pos);
            return t.type = Type::boolean();
          }
          case BinOp::And:
          case BinOp::Or:
          case BinOp::Implies:
          case BinOp::Iff: {
            expect(t.a, env, Type::boolean());
            expect(t.b, env, Type::boolean());
            return t.type = Type::boolean();
          }
          case BinOp::In: {
            Type e = check_term(t.a, env);
            Type s = check_term(t.b, env);
            if (s.kind != TypeKind::Set || !(s.params[0] == e))
              throw TypeError("'in' expects an element and a Set of it; found " +
                                  type_name(e) + " in " + type_name(s),
                              t.pos);
            return t.type = Type::boolean();
          }
        }
        throw TypeError("bad operator", t.pos);
      }
      case Term::K::UnOpK: {
        if (t.uop == UnOp::Not) {
          expect(t.a, env, Type::boolean());
          return t.type = Type::boolean();
        }
        expect(t.a, env, Type::integer());
        return t.type = Type::integer();
      }
      case Term::K::Call: return t.type = check_call(t, env);
      case Term::K::Field: {
        Type recv = check_term(t.a, env);
        std::uint32_t recIx = 0;
        std::int64_t fieldIx = 0;
        Type ty = field_type(recv, t.name, t, &recIx, &fieldIx);
        t.record = recIx;
        t.ival = fieldIx;
        return t.type = ty;
      }
      case Term::K::TupleMk: {
        std::vector<Type> items;
        for (auto& a : t.args) items.push_back(check_term(a, env));
        return t.type = Type::tuple_of(std::move(items));
      }
      case Term::K::TupleGet: {
        Type recv = check_term(t.a, env);
        if (recv.kind != TypeKind::Tuple ||
            t.ival < 1 || t.ival > static_cast<std::int64_t>(recv.params.size()))
          throw TypeError("tuple access '._" + std::to_string(t.ival) + "' on " +
                              type_name(recv),
                          t.pos);
        return t.type = recv.params[t.ival - 1];
      }
      case Term::K::Forall:
      case Term::K::Exists: {
        env.emplace_back(t.name, t.qtype);
        Type body = check_term(t.a, env);
        env.pop_back();
        if (body.kind != TypeKind::Bool)
          throw TypeError("quantifier body must be Bool", t.pos);
        return t.type = Type::boolean();
      }
    }
    throw TypeError("unreachable term kind", t.pos);
  }

  void expect(TermPtr& tp, std::vector<std::pair<std::string, Type>>& env, Type want) {
    Type got = check_term(tp, env);
    if (!(got == want))
      throw TypeError("expected " + type_name(want) + ", found " + type_name(got), tp->pos);
  }

  Type check_call(Term& t, std::vector<std::pair<std::string, Type>>& env) {
    auto arity = [&](std::size_t n) {
      if (t.args.size() != n)
        throw TypeError("'" + t.name + "' expects " + std::to_string(n) + " argument(s)",
                        t.pos);
    };
    switch (t.builtin) {
      case Builtin::ToSet: {
        arity(1);
        Type r = check_term(t.args[0], env);
        if (r.kind != TypeKind::AWSet)
          throw TypeError("'.toSet' on non-AWSet " + type_name(r), t.pos);
        return Type::set_of(r.params[0]);
      }
      case Builtin::Union: {
        arity(2);
        Type a = check_term(t.args[0], env);
        Type b = check_term(t.args[1], env);
        if (a.kind != TypeKind::Set || !(a == b))
          throw TypeError("'.union' expects two equal Set types", t.pos);
        return a;
      }
      case Builtin::AddElem:
      case Builtin::RemoveElem: {
        arity(2);
        Type s = check_term(t.args[0], env);
        Type e = check_term(t.args[1], env);
        if (s.kind != TypeKind::AWSet || !(s.params[0] == e))
          throw TypeError("'.add/.remove' expects AWSet[T] and a T element", t.pos);
        return s;
      }
      case Builtin::RemoveIf: {
        arity(2);
        Type s = check_term(t.args[0], env);
        if (s.kind != TypeKind::AWSet)
          throw TypeError("'.removeIf' on non-AWSet", t.pos);
        Type f = check_lambda_arg(t.args[1], env, s.params[0]);
        if (f.kind != TypeKind::Bool)
          throw TypeError("'.removeIf' predicate must return Bool", t.pos);
        return s;
      }
      case Builtin::Size: {
        arity(1);
        Type s = check_term(t.args[0], env);
        if (s.kind != TypeKind::Set) throw TypeError("'size' expects a Set", t.pos);
        return Type::integer();
      }
      case Builtin::Map: {
        arity(2);
        Type s = check_term(t.args[0], env);
        if (s.kind != TypeKind::Set) throw TypeError("'.map' on non-Set", t.pos);
        Type out = check_lambda_arg(t.args[1], env, s.params[0]);
        return Type::set_of(out);
      }
      case Builtin::Filter: {
        arity(2);
        Type s = check_term(t.args[0], env);
        if (s.kind != TypeKind::Set) throw TypeError("'.filter' on non-Set", t.pos);
        Type out = check_lambda_arg(t.args[1], env, s.params[0]);
        if (out.kind != TypeKind::Bool)
          throw TypeError("'.filter' predicate must return Bool", t.pos);
        return s;
      }
      case Builtin::SumBy: {
        arity(2);
        Type s = check_term(t.args[0], env);
        if (s.kind != TypeKind::Set) throw TypeError("'.sumBy' on non-Set", t.pos);
        Type out = check_lambda_arg(t.args[1], env, s.params[0]);
        if (out.kind != TypeKind::Int)
          throw TypeError("'.sumBy' projection must return Int", t.pos);
        return Type::integer();
      }
      case Builtin::SumDays: {
        arity(1);
        Type s = check_term(t.args[0], env);
        if (!(s == Type::set_of(Type::record_t("Appointment"))))
          throw TypeError("'sumDays' expects Set[Appointment]", t.pos);
        return Type::integer();
      }
      case Builtin::GetStart:
      case Builtin::GetEnd:
      case Builtin::Days: {
        arity(1);
        Type a = check_term(t.args[0], env);
        if (!(a == Type::record_t("Appointment")))
          throw TypeError("'" + t.name + "' expects an Appointment", t.pos);
        return Type::integer();
      }
      case Builtin::Count: {
        arity(1);
        Type c = check_term(t.args[0], env);
        if (c.kind != TypeKind::PNCounter)
          throw TypeError("'.count' on non-counter " + type_name(c), t.pos);
        return Type::integer();
      }
      case Builtin::Inc:
      case Builtin::Dec: {
        arity(2);
        Type c = check_term(t.args[0], env);
        expect(t.args[1], env, Type::integer());
        if (c.kind != TypeKind::PNCounter)
          throw TypeError("'.inc/.dec' on non-counter", t.pos);
        return c;
      }
      case Builtin::GetReg: {
        arity(1);
        Type r = check_term(t.args[0], env);
        if (r.kind != TypeKind::LWWRegister)
          throw TypeError("'.get' on non-register", t.pos);
        return r.params[0];
      }
      case Builtin::SetReg: {
        arity(2);
        Type r = check_term(t.args[0], env);
        if (r.kind != TypeKind::LWWRegister)
          throw TypeError("'.set' on non-register", t.pos);
        expect(t.args[1], env, r.params[0]);
        return r;
      }
      case Builtin::MakeRecord: {
        const RecordTypeDef* def = find_record(t.name);
        if (!def) throw UnknownIdentifier("unknown record '" + t.name + "'", t.pos);
        arity(def->fields.size());
        for (std::size_t i = 0; i < def->fields.size(); ++i)
          expect(t.args[i], env, def->fields[i].second);
        t.record = record_index(t.name);
        return Type::record_t(t.name);
      }
      default: throw TypeError("unknown builtin call", t.pos);
    }
  }

  // Types a literal lambda argument (predicates/projections of set builtins).
  Type check_lambda_arg(TermPtr& tp, std::vector<std::pair<std::string, Type>>& env,
                        Type param) {
    if (tp->k != Term::K::Lambda)
      throw TypeError("expected a lambda argument", tp->pos);
    tp->qtype = param;
    env.emplace_back(tp->name, param);
    Type body = check_term(tp->a, env);
    env.pop_back();
    tp->type = Type::fun(param, body);
    return body;
  }
};

}  // namespace

const InteractionDecl* CheckedProgram::executable(const std::string& name) const {
  for (int ix : executables)
    if (program.interactions[ix].name == name) return &program.interactions[ix];
  return nullptr;
}

std::vector<std::string> CheckedProgram::executable_names() const {
  std::vector<std::string> out;
  for (int ix : executables) out.push_back(program.interactions[ix].name);
  return out;
}

CheckedProgram resolve_and_check(const Program& p) {
  CheckedProgram cp;
  cp.program = p;
  Checker(cp).run();
  return cp;
}

CheckedProgram load_program(const std::string& text) {
  return resolve_and_check(parse_program(text));
}

}  // namespace lore
