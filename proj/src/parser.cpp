#include "lore/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

#include "lore/crdt.hpp"

namespace lore {

namespace {

struct Token {
  enum class K { Ident, Int, Str, Punct, End } k = K::End;
  std::string text;
  std::int64_t ival = 0;
  Pos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  // Raw remainder of the current line starting at the current token; used
  // for UI directives.
  std::string rest_of_line() {
    std::size_t start = tok_start_;
    std::size_t end = start;
    while (end < src_.size() && src_[end] != '\n') ++end;
    pos_ = end;
    advance();
    std::string s = src_.substr(start, end - start);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
    return s;
  }

 private:
  void advance() {
    skip_ws();
    tok_start_ = pos_;
    tok_.pos = {line_, static_cast<int>(pos_ - line_start_) + 1};
    if (pos_ >= src_.size()) {
      tok_ = {Token::K::End, "", 0, tok_.pos};
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t s = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.k = Token::K::Ident;
      tok_.text = src_.substr(s, pos_ - s);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t s = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      tok_.k = Token::K::Int;
      tok_.text = src_.substr(s, pos_ - s);
      tok_.ival = std::stoll(tok_.text);
      return;
    }
    if (c == '"') {
      ++pos_;
      std::string out;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        out.push_back(src_[pos_]);
        ++pos_;
      }
      if (pos_ >= src_.size()) throw ParseError("unterminated string literal", tok_.pos);
      ++pos_;
      tok_.k = Token::K::Str;
      tok_.text = out;
      return;
    }
    // Multi-char punctuation, longest first.
    static const char* puncts[] = {"<==>", "==>", "==", "!=", "<=", ">=", "&&", "||",
                                   "=>",   "::",  "._", "(",  ")",  "[",  "]",  "{",
                                   "}",    ",",   ".",  ":",  "=",  "<",  ">",  "!",
                                   "+",    "-",   "*",  "/",  "%"};
    for (const char* p : puncts) {
      std::size_t n = std::strlen(p);
      if (src_.compare(pos_, n, p) == 0) {
        tok_.k = Token::K::Punct;
        tok_.text = p;
        pos_ += n;
        return;
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tok_.pos);
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
        line_start_ = pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  std::size_t tok_start_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
  Token tok_;
};

TermPtr mk(Term::K k, Pos pos) {
  auto t = std::make_shared<Term>();
  t->k = k;
  t->pos = pos;
  return t;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Program parse() {
    Program p;
    while (lex_.peek().k != Token::K::End) {
      const Token& t = lex_.peek();
      if (t.k != Token::K::Ident) throw ParseError("expected declaration", t.pos);
      if (t.text == "type") parse_type_alias(p);
      else if (t.text == "val") parse_val(p);
      else if (t.text == "invariant") parse_invariant(p);
      else if (t.text == "UI") parse_ui(p);
      else throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
    return p;
  }

 private:
  Lexer lex_;
  std::vector<std::pair<std::string, Type>> aliases_;
  std::vector<std::string> declared_;  // all reactive / interaction names, in order

  [[noreturn]] void fail(const std::string& msg, Pos pos) { throw ParseError(msg, pos); }

  Token expect_punct(const char* p) {
    Token t = lex_.next();
    if (t.k != Token::K::Punct || t.text != p)
      fail(std::string("expected '") + p + "', found '" + t.text + "'", t.pos);
    return t;
  }

  bool accept_punct(const char* p) {
    if (lex_.peek().k == Token::K::Punct && lex_.peek().text == p) {
      lex_.next();
      return true;
    }
    return false;
  }

  Token expect_ident() {
    Token t = lex_.next();
    if (t.k != Token::K::Ident) fail("expected identifier, found '" + t.text + "'", t.pos);
    return t;
  }

  void declare(const std::string& name, Pos pos) {
    if (std::find(declared_.begin(), declared_.end(), name) != declared_.end())
      throw DuplicateName("duplicate declaration of '" + name + "'", pos);
    declared_.push_back(name);
  }

  // ---- types ----

  Type parse_type() {
    Token t = expect_ident();
    if (t.text == "Int") return Type::integer();
    if (t.text == "Bool") return Type::boolean();
    if (t.text == "String") return Type::string();
    if (t.text == "Unit") return Type::unit();
    if (t.text == "Set") return Type::set_of(bracketed_type());
    if (t.text == "AWSet") return Type::awset_of(bracketed_type());
    if (t.text == "PNCounter") return Type::pncounter();
    if (t.text == "LWWRegister") return Type::lww_of(bracketed_type());
    if (t.text == "Fun") {
      expect_punct("[");
      Type a = parse_type_or_tuple();
      expect_punct(",");
      Type r = parse_type_or_tuple();
      expect_punct("]");
      return Type::fun(a, r);
    }
    for (const auto& [n, ty] : aliases_)
      if (n == t.text) return ty;
    if (find_record(t.text)) return Type::record_t(t.text);
    fail("unknown type '" + t.text + "'", t.pos);
  }

  Type parse_type_or_tuple() {
    if (accept_punct("(")) {
      std::vector<Type> items;
      items.push_back(parse_type_or_tuple());
      while (accept_punct(",")) items.push_back(parse_type_or_tuple());
      expect_punct(")");
      if (items.size() == 1) return items[0];
      return Type::tuple_of(std::move(items));
    }
    return parse_type();
  }

  Type bracketed_type() {
    expect_punct("[");
    Type t = parse_type_or_tuple();
    expect_punct("]");
    return t;
  }

  void parse_type_alias(Program& p) {
    lex_.next();  // type
    Token name = expect_ident();
    expect_punct("=");
    Type t = parse_type_or_tuple();
    aliases_.emplace_back(name.text, t);
    p.typeAliases.emplace_back(name.text, t);
    p.order.push_back({TopItem::K::TypeAlias, p.typeAliases.size() - 1});
  }

  // ---- declarations ----

  void parse_val(Program& p) {
    lex_.next();  // val
    Token name = expect_ident();
    expect_punct(":");
    Token head = expect_ident();
    if (head.text == "Source") {
      Type inner = bracketed_type();
      expect_punct("=");
      parse_source(p, name, inner);
      return;
    }
    if (head.text == "Derived") {
      Type inner = bracketed_type();
      expect_punct("=");
      parse_derived(p, name, inner);
      return;
    }
    if (head.text == "Unit") {
      expect_punct("=");
      parse_interaction(p, name);
      return;
    }
    fail("expected Source[...], Derived[...] or Unit after ':'", head.pos);
  }

  void parse_source(Program& p, const Token& name, const Type& declType) {
    Token kw = expect_ident();
    if (kw.text != "Source") fail("expected Source(...)", kw.pos);
    expect_punct("(");
    SourceDecl d;
    d.name = name.text;
    d.pos = name.pos;
    Token init = expect_ident();
    if (init.text == "AWSet") {
      if (declType.kind != TypeKind::AWSet)
        throw TypeError("initial AWSet() for non-AWSet source '" + name.text + "'", init.pos);
      d.crdtKind = CrdtKind::AWSet;
      d.elementType = declType.params[0];
      d.initial = awset_empty();
      expect_punct("(");
      Replica genesis = 0;
      while (!accept_punct(")")) {
        Value e = parse_literal_value(d.elementType);
        d.initial = awset_add(d.initial, e, awset_next_dot(d.initial, genesis));
        if (!accept_punct(",")) {
          expect_punct(")");
          break;
        }
      }
    } else if (init.text == "PNCounter") {
      if (declType.kind != TypeKind::PNCounter)
        throw TypeError("initial PNCounter() for non-counter source", init.pos);
      d.crdtKind = CrdtKind::PNCounter;
      d.elementType = Type::integer();
      d.initial = pncounter_zero();
      expect_punct("(");
      if (!accept_punct(")")) {
        Token n = lex_.next();
        if (n.k != Token::K::Int) fail("expected integer", n.pos);
        if (n.ival != 0) d.initial = pncounter_inc(d.initial, 0, static_cast<std::uint64_t>(n.ival));
        expect_punct(")");
      }
    } else if (init.text == "LWWRegister") {
      if (declType.kind != TypeKind::LWWRegister)
        throw TypeError("initial LWWRegister(...) for non-register source", init.pos);
      d.crdtKind = CrdtKind::LWWRegister;
      d.elementType = declType.params[0];
      d.initial = lww_bottom();
      expect_punct("(");
      if (!accept_punct(")")) {
        Value v = parse_literal_value(d.elementType);
        d.initial = lww_write(d.initial, v, 0);
        expect_punct(")");
      }
    } else {
      fail("expected AWSet(), PNCounter() or LWWRegister(...)", init.pos);
    }
    expect_punct(")");
    declare(d.name, d.pos);
    p.sources.push_back(std::move(d));
    p.order.push_back({TopItem::K::Source, p.sources.size() - 1});
  }

  Value parse_literal_value(const Type& ty) {
    Token t = lex_.peek();
    if (t.k == Token::K::Int) {
      lex_.next();
      return Value(static_cast<std::int64_t>(t.ival));
    }
    if (t.k == Token::K::Str) {
      lex_.next();
      return Value(t.text);
    }
    if (t.k == Token::K::Ident && (t.text == "true" || t.text == "false")) {
      lex_.next();
      return Value(t.text == "true");
    }
    if (t.k == Token::K::Ident && find_record(t.text)) {
      lex_.next();
      const RecordTypeDef* def = find_record(t.text);
      expect_punct("(");
      RecordValue rv;
      rv.type = record_index(t.text);
      for (std::size_t i = 0; i < def->fields.size(); ++i) {
        if (i) expect_punct(",");
        rv.fields.push_back(parse_literal_value(def->fields[i].second));
      }
      expect_punct(")");
      Value v;
      v.v = std::move(rv);
      return v;
    }
    fail("expected literal initial value", t.pos);
  }

  void parse_derived(Program& p, const Token& name, const Type& declType) {
    Token kw = expect_ident();
    if (kw.text != "Derived") fail("expected Derived{...}", kw.pos);
    expect_punct("{");
    DerivedDecl d;
    d.name = name.text;
    d.declaredType = declType;
    d.pos = name.pos;
    d.body = parse_term();
    expect_punct("}");
    declare(d.name, d.pos);
    p.deriveds.push_back(std::move(d));
    p.order.push_back({TopItem::K::Derived, p.deriveds.size() - 1});
  }

  void parse_interaction(Program& p, const Token& name) {
    Token head = expect_ident();
    InteractionDecl d;
    d.name = name.text;
    d.pos = name.pos;
    if (head.text == "Interaction") {
      expect_punct("[");
      d.modifiesTypes.push_back(parse_type_or_tuple());
      while (accept_punct(",")) d.modifiesTypes.push_back(parse_type_or_tuple());
      expect_punct("]");
      expect_punct("[");
      d.argType = parse_type_or_tuple();
      expect_punct("]");
    } else {
      // Specialization: copy the base interaction's parts.
      const InteractionDecl* base = nullptr;
      for (const auto& i : p.interactions)
        if (i.name == head.text) base = &i;
      if (!base)
        throw UnknownIdentifier("unknown interaction '" + head.text + "'", head.pos);
      d.modifiesTypes = base->modifiesTypes;
      d.argType = base->argType;
      d.modifies = base->modifies;
      d.requiresClauses = base->requiresClauses;
      d.ensuresClauses = base->ensuresClauses;
      d.executes = base->executes;
    }
    parse_builders(d);
    declare(d.name, d.pos);
    p.interactions.push_back(std::move(d));
    p.order.push_back({TopItem::K::Interaction, p.interactions.size() - 1});
  }

  void parse_builders(InteractionDecl& d) {
    while (lex_.peek().k == Token::K::Punct && lex_.peek().text == ".") {
      lex_.next();
      Token m = expect_ident();
      if (m.text == "requires" || m.text == "ensures" || m.text == "executes") {
        expect_punct("{");
        TermPtr body = parse_term();
        expect_punct("}");
        if (m.text == "requires") d.requiresClauses.push_back(body);
        else if (m.text == "ensures") d.ensuresClauses.push_back(body);
        else {
          if (d.executes)
            throw ParseError("interaction '" + d.name + "' has more than one executes", m.pos);
          d.executes = body;
        }
      } else if (m.text == "modifies") {
        expect_punct("(");
        d.modifies.clear();
        d.modifies.push_back(expect_ident().text);
        while (accept_punct(",")) d.modifies.push_back(expect_ident().text);
        expect_punct(")");
      } else {
        fail("unknown builder '." + m.text + "'", m.pos);
      }
    }
  }

  void parse_invariant(Program& p) {
    Token kw = lex_.next();
    InvariantDecl d;
    d.id = static_cast<int>(p.invariants.size()) + 1;
    d.pos = kw.pos;
    d.formula = parse_term();
    p.invariants.push_back(std::move(d));
    p.order.push_back({TopItem::K::Invariant, p.invariants.size() - 1});
  }

  void parse_ui(Program& p) {
    Pos pos = lex_.peek().pos;
    std::string line = lex_.rest_of_line();
    p.uiDirectives.push_back({line, pos});
    p.order.push_back({TopItem::K::Ui, p.uiDirectives.size() - 1});
  }

  // ---- terms ----
  // Precedence, loosest first:
  //   lambda  x => t
  //   forall/exists x: T :: t
  //   <==>  ==>  ||  &&  (in, ==, !=, <, <=, >, >=)  (+ -)  (* / %)  unary  postfix

  TermPtr parse_term() { return parse_lambda(); }

  TermPtr parse_lambda() {
    // IDENT => body
    if (lex_.peek().k == Token::K::Ident) {
      Token id = lex_.peek();
      if (id.text == "forall" || id.text == "exists") return parse_quantifier();
      // lookahead for '=>': clone lexer state cheaply by re-lexing is costly;
      // instead parse an expression and rewrite when it is a bare Var.
    }
    TermPtr head = parse_iff();
    if (head->k == Term::K::Var && accept_punct("=>")) {
      auto lam = mk(Term::K::Lambda, head->pos);
      lam->name = head->name;
      lam->a = parse_lambda();
      return lam;
    }
    return head;
  }

  TermPtr parse_quantifier() {
    Token kw = lex_.next();
    auto t = mk(kw.text == "forall" ? Term::K::Forall : Term::K::Exists, kw.pos);
    t->name = expect_ident().text;
    expect_punct(":");
    t->qtype = parse_type_or_tuple();
    expect_punct("::");
    t->a = parse_term();
    return t;
  }

  TermPtr parse_iff() {
    TermPtr l = parse_implies();
    while (lex_.peek().k == Token::K::Punct && lex_.peek().text == "<==>") {
      Pos pos = lex_.next().pos;
      auto t = mk(Term::K::BinOpK, pos);
      t->bop = BinOp::Iff;
      t->a = l;
      t->b = parse_implies();
      l = t;
    }
    return l;
  }

  TermPtr parse_implies() {
    TermPtr l = parse_or();
    if (lex_.peek().k == Token::K::Punct && lex_.peek().text == "==>") {
      Pos pos = lex_.next().pos;
      auto t = mk(Term::K::BinOpK, pos);
      t->bop = BinOp::Implies;
      t->a = l;
      t->b = parse_implies();  // right-assoc
      return t;
    }
    return l;
  }

  TermPtr parse_or() {
    TermPtr l = parse_and();
    while (accept_punct("||")) {
      auto t = mk(Term::K::BinOpK, l->pos);
      t->bop = BinOp::Or;
      t->a = l;
      t->b = parse_and();
      l = t;
    }
    return l;
  }

  TermPtr parse_and() {
    TermPtr l = parse_compare();
    while (accept_punct("&&")) {
      auto t = mk(Term::K::BinOpK, l->pos);
      t->bop = BinOp::And;
      t->a = l;
      t->b = parse_compare();
      l = t;
    }
    return l;
  }

  TermPtr parse_compare() {
    TermPtr l = parse_additive();
    for (;;) {
      BinOp op;
      const Token& t = lex_.peek();
      if (t.k == Token::K::Punct && t.text == "==") op = BinOp::Eq;
      else if (t.k == Token::K::Punct && t.text == "!=") op = BinOp::Ne;
      else if (t.k == Token::K::Punct && t.text == "<") op = BinOp::Lt;
      else if (t.k == Token::K::Punct && t.text == "<=") op = BinOp::Le;
      else if (t.k == Token::K::Punct && t.text == ">") op = BinOp::Gt;
      else if (t.k == Token::K::Punct && t.text == ">=") op = BinOp::Ge;
      else if (t.k == Token::K::Ident && t.text == "in") op = BinOp::In;
      else break;
      Pos pos = lex_.next().pos;
      auto n = mk(Term::K::BinOpK, pos);
      n->bop = op;
      n->a = l;
      n->b = parse_additive();
      l = n;
    }
    return l;
  }

  TermPtr parse_additive() {
    TermPtr l = parse_multiplicative();
    for (;;) {
      BinOp op;
      if (lex_.peek().k == Token::K::Punct && lex_.peek().text == "+") op = BinOp::Add;
      else if (lex_.peek().k == Token::K::Punct && lex_.peek().text == "-") op = BinOp::Sub;
      else break;
      Pos pos = lex_.next().pos;
      auto n = mk(Term::K::BinOpK, pos);
      n->bop = op;
      n->a = l;
      n->b = parse_multiplicative();
      l = n;
    }
    return l;
  }

  TermPtr parse_multiplicative() {
    TermPtr l = parse_unary();
    for (;;) {
      BinOp op;
      if (lex_.peek().k == Token::K::Punct && lex_.peek().text == "*") op = BinOp::Mul;
      else if (lex_.peek().k == Token::K::Punct && lex_.peek().text == "/") op = BinOp::Div;
      else if (lex_.peek().k == Token::K::Punct && lex_.peek().text == "%") op = BinOp::Mod;
      else break;
      Pos pos = lex_.next().pos;
      auto n = mk(Term::K::BinOpK, pos);
      n->bop = op;
      n->a = l;
      n->b = parse_unary();
      l = n;
    }
    return l;
  }

  TermPtr parse_unary() {
    if (accept_punct("!")) {
      auto t = mk(Term::K::UnOpK, lex_.peek().pos);
      t->uop = UnOp::Not;
      t->a = parse_unary();
      return t;
    }
    if (accept_punct("-")) {
      auto t = mk(Term::K::UnOpK, lex_.peek().pos);
      t->uop = UnOp::Neg;
      t->a = parse_unary();
      return t;
    }
    return parse_postfix();
  }

  static Builtin method_builtin(const std::string& n) {
    if (n == "toSet") return Builtin::ToSet;
    if (n == "union") return Builtin::Union;
    if (n == "add") return Builtin::AddElem;
    if (n == "remove") return Builtin::RemoveElem;
    if (n == "removeIf") return Builtin::RemoveIf;
    if (n == "size") return Builtin::Size;
    if (n == "map") return Builtin::Map;
    if (n == "filter") return Builtin::Filter;
    if (n == "sumBy") return Builtin::SumBy;
    if (n == "count") return Builtin::Count;
    if (n == "inc") return Builtin::Inc;
    if (n == "dec") return Builtin::Dec;
    if (n == "get") return Builtin::GetReg;
    if (n == "set") return Builtin::SetReg;
    return Builtin::None;
  }

  static Builtin free_builtin(const std::string& n) {
    if (n == "sumDays") return Builtin::SumDays;
    if (n == "get_start") return Builtin::GetStart;
    if (n == "get_end") return Builtin::GetEnd;
    if (n == "days") return Builtin::Days;
    if (n == "size") return Builtin::Size;
    return Builtin::None;
  }

  TermPtr parse_postfix() {
    TermPtr base = parse_primary();
    for (;;) {
      if (lex_.peek().k == Token::K::Punct && lex_.peek().text == "._") {
        Pos pos = lex_.next().pos;
        Token n = lex_.next();
        if (n.k != Token::K::Int) fail("expected tuple index after '._'", n.pos);
        auto t = mk(Term::K::TupleGet, pos);
        t->ival = n.ival;
        t->a = base;
        base = t;
        continue;
      }
      if (lex_.peek().k == Token::K::Punct && lex_.peek().text == ".") {
        lex_.next();
        Token m = expect_ident();
        if (m.text == "value") {
          if (base->k != Term::K::Var)
            fail("'.value' is only valid on a reactive name", m.pos);
          auto t = mk(Term::K::ReactiveRead, base->pos);
          t->name = base->name;
          base = t;
          continue;
        }
        if (lex_.peek().k == Token::K::Punct && lex_.peek().text == "(") {
          lex_.next();
          Builtin bi = method_builtin(m.text);
          if (bi == Builtin::None) fail("unknown method '" + m.text + "'", m.pos);
          auto t = mk(Term::K::Call, m.pos);
          t->builtin = bi;
          t->name = m.text;
          t->args.push_back(base);
          if (!accept_punct(")")) {
            t->args.push_back(parse_term());
            while (accept_punct(",")) t->args.push_back(parse_term());
            expect_punct(")");
          }
          base = t;
          continue;
        }
        // No-paren postfix methods (projections); anything else is a field.
        if (m.text == "toSet" || m.text == "count" || m.text == "get") {
          auto t = mk(Term::K::Call, m.pos);
          t->builtin = method_builtin(m.text);
          t->name = m.text;
          t->args.push_back(base);
          base = t;
          continue;
        }
        auto t = mk(Term::K::Field, m.pos);
        t->name = m.text;
        t->a = base;
        base = t;
        continue;
      }
      break;
    }
    return base;
  }

  TermPtr parse_primary() {
    Token t = lex_.next();
    switch (t.k) {
      case Token::K::Int: {
        auto n = mk(Term::K::IntLit, t.pos);
        n->ival = t.ival;
        return n;
      }
      case Token::K::Str: {
        auto n = mk(Term::K::StrLit, t.pos);
        n->name = t.text;
        return n;
      }
      case Token::K::Ident: {
        if (t.text == "true" || t.text == "false") {
          auto n = mk(Term::K::BoolLit, t.pos);
          n->bval = t.text == "true";
          return n;
        }
        if (t.text == "forall" || t.text == "exists") {
          auto n = mk(t.text == "forall" ? Term::K::Forall : Term::K::Exists, t.pos);
          n->name = expect_ident().text;
          expect_punct(":");
          n->qtype = parse_type_or_tuple();
          expect_punct("::");
          n->a = parse_term();
          return n;
        }
        Builtin fb = free_builtin(t.text);
        if (fb != Builtin::None && lex_.peek().k == Token::K::Punct &&
            lex_.peek().text == "(") {
          lex_.next();
          auto n = mk(Term::K::Call, t.pos);
          n->builtin = fb;
          n->name = t.text;
          n->args.push_back(parse_term());
          while (accept_punct(",")) n->args.push_back(parse_term());
          expect_punct(")");
          return n;
        }
        if (find_record(t.text) && lex_.peek().k == Token::K::Punct &&
            lex_.peek().text == "(") {
          lex_.next();
          auto n = mk(Term::K::Call, t.pos);
          n->builtin = Builtin::MakeRecord;
          n->name = t.text;
          if (!accept_punct(")")) {
            n->args.push_back(parse_term());
            while (accept_punct(",")) n->args.push_back(parse_term());
            expect_punct(")");
          }
          return n;
        }
        auto n = mk(Term::K::Var, t.pos);
        n->name = t.text;
        return n;
      }
      case Token::K::Punct: {
        if (t.text == "(") {
          std::vector<TermPtr> items;
          items.push_back(parse_term());
          while (accept_punct(",")) items.push_back(parse_term());
          expect_punct(")");
          if (items.size() == 1) return items[0];
          auto n = mk(Term::K::TupleMk, t.pos);
          n->args = std::move(items);
          return n;
        }
        fail("unexpected '" + t.text + "'", t.pos);
      }
      default: fail("unexpected end of input", t.pos);
    }
  }
};

}  // namespace

Program parse_program(const std::string& text) { return Parser(text).parse(); }

const SourceDecl* Program::find_source(const std::string& n) const {
  for (const auto& s : sources)
    if (s.name == n) return &s;
  return nullptr;
}
const DerivedDecl* Program::find_derived(const std::string& n) const {
  for (const auto& d : deriveds)
    if (d.name == n) return &d;
  return nullptr;
}
const InteractionDecl* Program::find_interaction(const std::string& n) const {
  for (const auto& i : interactions)
    if (i.name == n) return &i;
  return nullptr;
}

}  // namespace lore
