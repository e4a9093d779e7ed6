#include "elam/ast.hpp"

#include <cassert>

namespace elam {

namespace {
std::shared_ptr<Term> mk(Term::Kind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}
std::shared_ptr<Type> mkty(Type::Kind k) {
  auto t = std::make_shared<Type>();
  t->kind = k;
  return t;
}
}  // namespace

TermPtr var(Name x) {
  auto t = mk(Term::Kind::Var);
  t->name = std::move(x);
  return t;
}

TermPtr abs(Name x, TypePtr annot, TermPtr body) {
  auto t = mk(Term::Kind::Abs);
  t->name = std::move(x);
  t->annot = std::move(annot);
  t->a = std::move(body);
  return t;
}

TermPtr app(TermPtr fn, TermPtr arg) {
  auto t = mk(Term::Kind::App);
  t->a = std::move(fn);
  t->b = std::move(arg);
  return t;
}

TermPtr nil() {
  static const TermPtr n = mk(Term::Kind::Nil);
  return n;
}

TermPtr cons(TermPtr head, TermPtr tail) {
  auto t = mk(Term::Kind::Cons);
  t->a = std::move(head);
  t->b = std::move(tail);
  return t;
}

TermPtr match(TermPtr scrutinee, TermPtr nil_case, Name hd, Name tl, TermPtr cons_case) {
  auto t = mk(Term::Kind::Match);
  t->a = std::move(scrutinee);
  t->b = std::move(nil_case);
  t->name = std::move(hd);
  t->name2 = std::move(tl);
  t->c = std::move(cons_case);
  return t;
}

TermPtr fixpoint(long bound, Name x, TypePtr annot, TermPtr body, TermPtr dflt) {
  assert(bound >= 0);
  auto t = mk(Term::Kind::Fix);
  t->bound = bound;
  t->name = std::move(x);
  t->annot = std::move(annot);
  t->a = std::move(body);
  t->b = std::move(dflt);
  return t;
}

TermPtr choose(BaseType b) {
  auto t = mk(Term::Kind::Choose);
  t->base = b;
  return t;
}

TermPtr sel(TermPtr target, int k) {
  assert(k >= 1 && k <= 3);
  auto t = mk(Term::Kind::Sel);
  t->a = std::move(target);
  t->sel = k;
  return t;
}

TermPtr sel_path(TermPtr target, const Path& p) {
  TermPtr t = std::move(target);
  for (int k : p) t = sel(t, k);
  return t;
}

TermPtr unpack(BaseType b, TermPtr arg) {
  auto t = mk(Term::Kind::Unpack);
  t->base = b;
  t->a = std::move(arg);
  return t;
}

TermPtr trail_lit(TrailPtr tr) {
  auto t = mk(Term::Kind::TrailLit);
  t->trail = std::move(tr);
  return t;
}

TypePtr base(BaseType b) {
  auto t = mkty(Type::Kind::Base);
  t->base = b;
  return t;
}

TypePtr top() {
  static const TypePtr t = base(BaseType::Top);
  return t;
}
TypePtr list() {
  static const TypePtr t = base(BaseType::List);
  return t;
}
TypePtr trail_type() {
  static const TypePtr t = base(BaseType::Trail);
  return t;
}

TypePtr singleton(TermPtr t, TypePtr underlying) {
  while (underlying->kind == Type::Kind::Singleton) underlying = underlying->t1;
  auto ty = mkty(Type::Kind::Singleton);
  ty->term = std::move(t);
  ty->t1 = std::move(underlying);
  return ty;
}

TypePtr pi(Name x, TypePtr domain, TypePtr codomain) {
  auto t = mkty(Type::Kind::Pi);
  t->name = std::move(x);
  t->t1 = std::move(domain);
  t->t2 = std::move(codomain);
  return t;
}

TypePtr cons_type(TypePtr head, TypePtr tail) {
  auto t = mkty(Type::Kind::ConsT);
  t->t1 = std::move(head);
  t->t2 = std::move(tail);
  return t;
}

TypePtr match_type(TermPtr scrutinee, TypePtr nil_type, Name hd, Name tl, TypePtr ct) {
  auto t = mkty(Type::Kind::MatchT);
  t->term = std::move(scrutinee);
  t->t1 = std::move(nil_type);
  t->name = std::move(hd);
  t->name2 = std::move(tl);
  t->t2 = std::move(ct);
  return t;
}

TypePtr exists(Name x, TypePtr domain, TypePtr body) {
  auto t = mkty(Type::Kind::Exists);
  t->name = std::move(x);
  t->t1 = std::move(domain);
  t->t2 = std::move(body);
  return t;
}

TrailPtr trail_empty() {
  static const TrailPtr e = std::make_shared<TrailTree>();
  return e;
}

TrailPtr trail_leaf(BaseType tag, TermPtr value) {
  auto t = std::make_shared<TrailTree>();
  t->kind = TrailTree::Kind::Leaf;
  t->tag = tag;
  t->value = std::move(value);
  return t;
}

TrailPtr trail_node(TrailPtr c1, TrailPtr c2, TrailPtr c3) {
  auto t = std::make_shared<TrailTree>();
  t->kind = TrailTree::Kind::Node;
  t->c1 = std::move(c1);
  t->c2 = std::move(c2);
  t->c3 = std::move(c3);
  return t;
}

}  // namespace elam
