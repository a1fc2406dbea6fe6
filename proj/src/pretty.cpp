#include <sstream>

#include "lore/crdt.hpp"
#include "lore/parser.hpp"

namespace lore {

namespace {

const RecordTypeDef* record_by_index(std::uint32_t ix) { return &record_registry()[ix]; }

void print_term(const Term& t, std::ostream& os);

void print_args(const std::vector<TermPtr>& args, std::size_t from, std::ostream& os) {
  os << "(";
  for (std::size_t i = from; i < args.size(); ++i) {
    if (i > from) os << ", ";
    print_term(*args[i], os);
  }
  os << ")";
}

const char* bop_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
    case BinOp::Implies: return "==>";
    case BinOp::Iff: return "<==>";
    case BinOp::In: return "in";
  }
  return "?";
}

void print_term(const Term& t, std::ostream& os) {
  switch (t.k) {
    case Term::K::IntLit: os << t.ival; return;
    case Term::K::BoolLit: os << (t.bval ? "true" : "false"); return;
    case Term::K::StrLit: os << '"' << t.name << '"'; return;
    case Term::K::Var: os << t.name; return;
    case Term::K::Lambda:
      os << t.name << " => ";
      print_term(*t.a, os);
      return;
    case Term::K::BinOpK:
      os << "(";
      print_term(*t.a, os);
      os << " " << bop_text(t.bop) << " ";
      print_term(*t.b, os);
      os << ")";
      return;
    case Term::K::UnOpK:
      os << (t.uop == UnOp::Not ? "!" : "-") << "(";
      print_term(*t.a, os);
      os << ")";
      return;
    case Term::K::ReactiveRead: os << t.name << ".value"; return;
    case Term::K::Call:
      if (t.builtin == Builtin::MakeRecord) {
        os << t.name;
        print_args(t.args, 0, os);
        return;
      }
      switch (t.builtin) {
        case Builtin::SumDays:
        case Builtin::GetStart:
        case Builtin::GetEnd:
        case Builtin::Days:
          os << t.name;
          print_args(t.args, 0, os);
          return;
        case Builtin::ToSet:
          print_term(*t.args[0], os);
          os << ".toSet";
          return;
        default:
          print_term(*t.args[0], os);
          os << "." << t.name;
          print_args(t.args, 1, os);
          return;
      }
    case Term::K::Field:
      print_term(*t.a, os);
      os << "." << t.name;
      return;
    case Term::K::TupleMk:
      print_args(t.args, 0, os);
      return;
    case Term::K::TupleGet:
      print_term(*t.a, os);
      os << "._" << t.ival;
      return;
    case Term::K::Forall:
    case Term::K::Exists:
      os << "(" << (t.k == Term::K::Forall ? "forall " : "exists ") << t.name << ": "
         << type_name(t.qtype) << " :: ";
      print_term(*t.a, os);
      os << ")";
      return;
  }
}

void print_initial(const SourceDecl& s, std::ostream& os) {
  switch (s.crdtKind) {
    case CrdtKind::AWSet: {
      os << "AWSet(";
      auto elems = awset_elements(s.initial);
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) os << ", ";
        const Value& e = elems[i];
        if (e.is_int()) os << e.as_int();
        else if (e.is_bool()) os << (e.as_bool() ? "true" : "false");
        else if (std::holds_alternative<std::string>(e.v))
          os << '"' << std::get<std::string>(e.v) << '"';
        else if (std::holds_alternative<RecordValue>(e.v)) {
          const auto& r = std::get<RecordValue>(e.v);
          os << record_by_index(r.type)->name << "(";
          for (std::size_t j = 0; j < r.fields.size(); ++j) {
            if (j) os << ", ";
            os << r.fields[j].as_int();
          }
          os << ")";
        }
      }
      os << ")";
      return;
    }
    case CrdtKind::PNCounter:
      os << "PNCounter(" << pncounter_value(s.initial) << ")";
      return;
    case CrdtKind::LWWRegister: {
      os << "LWWRegister(";
      if (const Value* v = lww_read(s.initial)) {
        if (v->is_int()) os << v->as_int();
        else if (v->is_bool()) os << (v->as_bool() ? "true" : "false");
        else if (std::holds_alternative<std::string>(v->v))
          os << '"' << std::get<std::string>(v->v) << '"';
      }
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  for (const TopItem& item : p.order) {
    switch (item.k) {
      case TopItem::K::TypeAlias: {
        const auto& [n, t] = p.typeAliases[item.index];
        os << "type " << n << " = " << type_name(t) << "\n";
        break;
      }
      case TopItem::K::Source: {
        const SourceDecl& s = p.sources[item.index];
        os << "val " << s.name << ": Source[" << type_name(s.crdt_type()) << "] = Source(";
        print_initial(s, os);
        os << ")\n";
        break;
      }
      case TopItem::K::Derived: {
        const DerivedDecl& d = p.deriveds[item.index];
        os << "val " << d.name << ": Derived[" << type_name(d.declaredType) << "] = Derived{ ";
        print_term(*d.body, os);
        os << " }\n";
        break;
      }
      case TopItem::K::Interaction: {
        const InteractionDecl& i = p.interactions[item.index];
        os << "val " << i.name << ": Unit = Interaction[";
        for (std::size_t j = 0; j < i.modifiesTypes.size(); ++j) {
          if (j) os << ", ";
          os << type_name(i.modifiesTypes[j]);
        }
        os << "][" << type_name(i.argType) << "]";
        if (!i.modifies.empty()) {
          os << "\n  .modifies(";
          for (std::size_t j = 0; j < i.modifies.size(); ++j) {
            if (j) os << ", ";
            os << i.modifies[j];
          }
          os << ")";
        }
        for (const auto& r : i.requiresClauses) {
          os << "\n  .requires{ ";
          print_term(*r, os);
          os << " }";
        }
        if (i.executes) {
          os << "\n  .executes{ ";
          print_term(*i.executes, os);
          os << " }";
        }
        for (const auto& e : i.ensuresClauses) {
          os << "\n  .ensures{ ";
          print_term(*e, os);
          os << " }";
        }
        os << "\n";
        break;
      }
      case TopItem::K::Invariant: {
        const InvariantDecl& inv = p.invariants[item.index];
        os << "invariant ";
        print_term(*inv.formula, os);
        os << "\n";
        break;
      }
      case TopItem::K::Ui:
        os << p.uiDirectives[item.index].text << "\n";
        break;
    }
  }
  return os.str();
}

namespace {

bool term_equal(const Term* a, const Term* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->k != b->k) return false;
  switch (a->k) {
    case Term::K::IntLit: return a->ival == b->ival;
    case Term::K::BoolLit: return a->bval == b->bval;
    case Term::K::StrLit: return a->name == b->name;
    case Term::K::Var: return a->name == b->name;
    case Term::K::Lambda: return a->name == b->name && term_equal(a->a.get(), b->a.get());
    case Term::K::BinOpK:
      return a->bop == b->bop && term_equal(a->a.get(), b->a.get()) &&
             term_equal(a->b.get(), b->b.get());
    case Term::K::UnOpK: return a->uop == b->uop && term_equal(a->a.get(), b->a.get());
    case Term::K::ReactiveRead: return a->name == b->name;
    case Term::K::Call: {
      if (a->builtin != b->builtin || a->name != b->name ||
          a->args.size() != b->args.size())
        return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i].get(), b->args[i].get())) return false;
      return true;
    }
    case Term::K::Field: return a->name == b->name && term_equal(a->a.get(), b->a.get());
    case Term::K::TupleMk: {
      if (a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_equal(a->args[i].get(), b->args[i].get())) return false;
      return true;
    }
    case Term::K::TupleGet: return a->ival == b->ival && term_equal(a->a.get(), b->a.get());
    case Term::K::Forall:
    case Term::K::Exists:
      return a->name == b->name && a->qtype == b->qtype && term_equal(a->a.get(), b->a.get());
  }
  return false;
}

}  // namespace

bool structurally_equal(const Program& a, const Program& b) {
  if (a.sources.size() != b.sources.size() || a.deriveds.size() != b.deriveds.size() ||
      a.interactions.size() != b.interactions.size() ||
      a.invariants.size() != b.invariants.size())
    return false;
  for (std::size_t i = 0; i < a.sources.size(); ++i) {
    const auto& x = a.sources[i];
    const auto& y = b.sources[i];
    if (x.name != y.name || x.crdtKind != y.crdtKind || !(x.elementType == y.elementType) ||
        x.initial != y.initial)
      return false;
  }
  for (std::size_t i = 0; i < a.deriveds.size(); ++i) {
    const auto& x = a.deriveds[i];
    const auto& y = b.deriveds[i];
    if (x.name != y.name || !(x.declaredType == y.declaredType) ||
        !term_equal(x.body.get(), y.body.get()))
      return false;
  }
  for (std::size_t i = 0; i < a.interactions.size(); ++i) {
    const auto& x = a.interactions[i];
    const auto& y = b.interactions[i];
    if (x.name != y.name || x.modifies != y.modifies ||
        x.modifiesTypes.size() != y.modifiesTypes.size() || !(x.argType == y.argType))
      return false;
    for (std::size_t j = 0; j < x.modifiesTypes.size(); ++j)
      if (!(x.modifiesTypes[j] == y.modifiesTypes[j])) return false;
    if (x.requiresClauses.size() != y.requiresClauses.size() ||
        x.ensuresClauses.size() != y.ensuresClauses.size())
      return false;
    for (std::size_t j = 0; j < x.requiresClauses.size(); ++j)
      if (!term_equal(x.requiresClauses[j].get(), y.requiresClauses[j].get())) return false;
    for (std::size_t j = 0; j < x.ensuresClauses.size(); ++j)
      if (!term_equal(x.ensuresClauses[j].get(), y.ensuresClauses[j].get())) return false;
    if (!term_equal(x.executes.get(), y.executes.get())) return false;
  }
  for (std::size_t i = 0; i < a.invariants.size(); ++i)
    if (!term_equal(a.invariants[i].formula.get(), b.invariants[i].formula.get())) return false;
  return true;
}

}  // namespace lore
