#pragma once

// Abstract syntax: reactives, interactions, invariants, and the term/logic
// language, plus the source positions used for error reporting.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lore/value.hpp"

namespace lore {

struct Pos {
  int line = 0;
  int col = 0;
};

enum class TypeKind {
  Unit,
  Bool,
  Int,
  String,
  Record,
  Set,
  Tuple,
  Fun,
  AWSet,
  PNCounter,
  LWWRegister,
  Invalid
};

struct Type {
  TypeKind kind = TypeKind::Invalid;
  std::string record;        // for Record
  std::vector<Type> params;  // Set/AWSet/LWW: [elem]; Fun: [arg, result]; Tuple: items

  static Type unit() { return {TypeKind::Unit, {}, {}}; }
  static Type boolean() { return {TypeKind::Bool, {}, {}}; }
  static Type integer() { return {TypeKind::Int, {}, {}}; }
  static Type string() { return {TypeKind::String, {}, {}}; }
  static Type record_t(std::string name) { return {TypeKind::Record, std::move(name), {}}; }
  static Type set_of(Type t) { return {TypeKind::Set, {}, {std::move(t)}}; }
  static Type awset_of(Type t) { return {TypeKind::AWSet, {}, {std::move(t)}}; }
  static Type pncounter() { return {TypeKind::PNCounter, {}, {}}; }
  static Type lww_of(Type t) { return {TypeKind::LWWRegister, {}, {std::move(t)}}; }
  static Type tuple_of(std::vector<Type> ts) { return {TypeKind::Tuple, {}, std::move(ts)}; }
  static Type fun(Type a, Type r) { return {TypeKind::Fun, {}, {std::move(a), std::move(r)}}; }

  bool is_crdt() const {
    return kind == TypeKind::AWSet || kind == TypeKind::PNCounter ||
           kind == TypeKind::LWWRegister;
  }
};

bool operator==(const Type& a, const Type& b);
inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }
std::string type_name(const Type& t);

struct RecordTypeDef {
  std::string name;
  std::vector<std::pair<std::string, Type>> fields;
};

// Registry of built-in record types (Appointment plus the TPC-C style ones).
const std::vector<RecordTypeDef>& record_registry();
const RecordTypeDef* find_record(const std::string& name);
std::uint32_t record_index(const std::string& name);

enum class BinOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Implies, Iff, In };
enum class UnOp { Not, Neg };

// Builtins appear as Call nodes; the first argument is the receiver for the
// method-call forms (cal.toSet, s.union(t), ...).
enum class Builtin {
  ToSet,
  Union,
  AddElem,
  RemoveElem,
  RemoveIf,
  Contains,  // only via `in`
  Size,
  Map,
  Filter,
  SumBy,
  SumDays,
  GetStart,
  GetEnd,
  Days,
  Count,
  Inc,
  Dec,
  GetReg,
  SetReg,
  MakeRecord,  // record constructor, record name in `name`
  None
};

struct Term;
using TermPtr = std::shared_ptr<Term>;

struct Term {
  enum class K {
    IntLit,
    BoolLit,
    StrLit,
    Var,
    Lambda,
    BinOpK,
    UnOpK,
    ReactiveRead,
    Call,
    Field,
    TupleMk,
    TupleGet,
    Forall,
    Exists
  } k;

  Pos pos;
  std::int64_t ival = 0;
  bool bval = false;
  std::string name;  // Var / Lambda param / ReactiveRead / Call builtin name / Field name
  BinOp bop = BinOp::Add;
  UnOp uop = UnOp::Not;
  Builtin builtin = Builtin::None;
  Type qtype;  // Forall/Exists bound type; Lambda param type (filled by checker)
  TermPtr a, b;
  std::vector<TermPtr> args;

  // Filled by resolve_and_check.
  int slot = -1;           // Var: stack depth index; ReactiveRead: source/derived index
  bool reads_derived = false;
  std::uint32_t record = 0;  // Field/MakeRecord: record index; Field: field index in ival
  Type type;                 // inferred type
};

struct SourceDecl {
  std::string name;
  CrdtKind crdtKind = CrdtKind::AWSet;
  Type elementType;  // element type for AWSet, value type for LWW, Int for counters
  MergeValue initial;
  Pos pos;
  Type crdt_type() const {
    switch (crdtKind) {
      case CrdtKind::AWSet: return Type::awset_of(elementType);
      case CrdtKind::PNCounter: return Type::pncounter();
      case CrdtKind::LWWRegister: return Type::lww_of(elementType);
    }
    return Type();
  }
};

struct DerivedDecl {
  std::string name;
  Type declaredType;
  TermPtr body;
  Pos pos;
};

struct InteractionDecl {
  std::string name;
  std::vector<Type> modifiesTypes;  // from Interaction[T1,...][A]
  Type argType;
  std::vector<std::string> modifies;  // empty => partial
  std::vector<TermPtr> requiresClauses;
  std::vector<TermPtr> ensuresClauses;
  TermPtr executes;  // may be null for partial templates
  Pos pos;
  bool complete() const { return !modifies.empty() && executes != nullptr; }
};

struct InvariantDecl {
  int id = 0;  // 1-based ordinal
  TermPtr formula;
  Pos pos;
};

struct UiDirective {
  std::string text;  // raw line, kept for round-trip printing
  Pos pos;
};

struct TopItem {
  enum class K { TypeAlias, Source, Derived, Interaction, Invariant, Ui } k;
  std::size_t index;
};

struct Program {
  std::vector<std::pair<std::string, Type>> typeAliases;
  std::vector<SourceDecl> sources;
  std::vector<DerivedDecl> deriveds;
  std::vector<InteractionDecl> interactions;
  std::vector<InvariantDecl> invariants;
  std::vector<UiDirective> uiDirectives;
  std::vector<TopItem> order;

  const SourceDecl* find_source(const std::string& n) const;
  const DerivedDecl* find_derived(const std::string& n) const;
  const InteractionDecl* find_interaction(const std::string& n) const;
};

}  // namespace lore
