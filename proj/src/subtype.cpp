#include "elam/subtype.hpp"

#include "elam/frontend.hpp"
#include "elam/infer.hpp"
#include "elam/normalize.hpp"

namespace elam {

namespace {

using TK = Term::Kind;
using YK = Type::Kind;

std::pair<Name, TypePtr> freshen_binder(const Context& g, const Name& x, TypePtr body) {
  if (!g.contains(x)) return {x, std::move(body)};
  std::set<Name> fv = free_vars(body);
  Name nx = x;
  do {
    nx += "'";
  } while (g.contains(nx) || fv.count(nx));
  return {nx, subst(body, x, var(nx))};
}

bool sub_query(const Context& g, const TypePtr& t1, const TypePtr& t2, Session& s);
bool sub_struct(const Context& g, const TypePtr& t1, const TypePtr& t2, Session& s);

// Structural alignment of two types: records the first term matched against
// Var x (on either side) along with whether it mentions names bound during
// the walk (which makes the candidate ill-formed outside).
struct Align {
  const Name& x;
  std::optional<TermPtr> cand;
  bool captured = false;
  std::set<Name> bound;

  void take(const TermPtr& t) {
    if (cand) return;
    for (const Name& n : free_vars(t)) {
      if (bound.count(n)) {
        captured = true;
        break;
      }
    }
    cand = t;
  }

  struct Scope {
    Align& a;
    std::vector<Name> added;
    Scope(Align& al, std::initializer_list<Name> ns) : a(al) {
      for (const Name& n : ns) {
        if (a.bound.insert(n).second) added.push_back(n);
      }
    }
    ~Scope() {
      for (const Name& n : added) a.bound.erase(n);
    }
  };

  void terms(const TermPtr& a, const TermPtr& b) {
    if (cand) return;
    if (b->kind == TK::Var && b->name == x && !bound.count(x)) {
      take(a);
      return;
    }
    if (a->kind == TK::Var && a->name == x && !bound.count(x)) {
      take(b);
      return;
    }
    if (a->kind != b->kind) return;
    switch (a->kind) {
      case TK::Var:
      case TK::Nil:
      case TK::Choose:
      case TK::TrailLit:
        return;
      case TK::Abs: {
        types(a->annot, b->annot);
        Scope sc(*this, {a->name, b->name});
        terms(a->a, b->a);
        return;
      }
      case TK::App:
      case TK::Cons:
        terms(a->a, b->a);
        terms(a->b, b->b);
        return;
      case TK::Match: {
        terms(a->a, b->a);
        terms(a->b, b->b);
        Scope sc(*this, {a->name, a->name2, b->name, b->name2});
        terms(a->c, b->c);
        return;
      }
      case TK::Fix: {
        types(a->annot, b->annot);
        {
          Scope sc(*this, {a->name, b->name});
          terms(a->a, b->a);
        }
        terms(a->b, b->b);
        return;
      }
      case TK::Sel:
      case TK::Unpack:
        terms(a->a, b->a);
        return;
    }
  }

  void types(const TypePtr& a, const TypePtr& b) {
    if (cand) return;
    if (a->kind != b->kind) {
      // Mismatched shapes can still hide an alignment: skip existential
      // quantifiers and singleton wrappers on either side.
      if (b->kind == YK::Exists) {
        Scope sc(*this, {b->name});
        types(a, b->t2);
        return;
      }
      if (a->kind == YK::Exists) {
        Scope sc(*this, {a->name});
        types(a->t2, b);
        return;
      }
      if (a->kind == YK::Singleton) {
        types(a->t1, b);
        return;
      }
      if (b->kind == YK::Singleton) {
        types(a, b->t1);
        return;
      }
      return;
    }
    switch (a->kind) {
      case YK::Base:
        return;
      case YK::Singleton:
        terms(a->term, b->term);
        types(a->t1, b->t1);
        return;
      case YK::Pi:
      case YK::Exists: {
        types(a->t1, b->t1);
        Scope sc(*this, {a->name, b->name});
        types(a->t2, b->t2);
        return;
      }
      case YK::ConsT:
        types(a->t1, b->t1);
        types(a->t2, b->t2);
        return;
      case YK::MatchT: {
        terms(a->term, b->term);
        types(a->t1, b->t1);
        Scope sc(*this, {a->name, a->name2, b->name, b->name2});
        types(a->t2, b->t2);
        return;
      }
    }
  }
};

bool sub_struct(const Context& g, const TypePtr& t1, const TypePtr& t2, Session& s) {
  s.burn();
  if (alpha_eq(t1, t2)) return true;
  // Fast path: a stronger query with the left side widened.
  if (t1->kind == YK::Singleton) {
    if (sub_struct(g, widen(t1), t2, s)) {
      if (s.trace_enabled) {
        s.note("widen: " + print_type(t1) + " ~> " + print_type(widen(t1)));
      }
      return true;
    }
  }
  if (is_base(t2, BaseType::Top)) {
    s.note("SubTop");
    return true;
  }
  if (t1->kind == YK::ConsT && is_base(t2, BaseType::List)) {
    s.note("SubCons1");
    return true;
  }
  if (t1->kind == YK::ConsT && t2->kind == YK::ConsT) {
    if (sub_struct(g, t1->t1, t2->t1, s) && sub_struct(g, t1->t2, t2->t2, s)) {
      s.note("SubCons2");
      return true;
    }
  }
  if (t1->kind == YK::Pi && t2->kind == YK::Pi) {
    if (sub_struct(g, t2->t1, t1->t1, s)) {
      // Rebind both codomains to one binder that is fresh for the context
      // and free in neither body.
      std::set<Name> avoid = free_vars(t1->t2);
      avoid.erase(t1->name);
      std::set<Name> fv2 = free_vars(t2->t2);
      fv2.erase(t2->name);
      avoid.insert(fv2.begin(), fv2.end());
      Name x = t2->name;
      while (g.contains(x) || avoid.count(x)) x += "'";
      TypePtr cod1 = t1->name == x ? t1->t2 : subst(t1->t2, t1->name, var(x));
      TypePtr cod2 = t2->name == x ? t2->t2 : subst(t2->t2, t2->name, var(x));
      if (sub_query(g.extended(x, t2->t1), cod1, cod2, s)) {
        s.note("SubPi");
        return true;
      }
    }
  }
  if (t1->kind == YK::MatchT) {
    if (sub_struct(g, t1->t1, t2, s)) {
      auto [x, body1] = freshen_binder(g, t1->name, t1->t2);
      Context g1 = g.extended(x, top());
      auto [y, body2] = freshen_binder(g1, t1->name2, body1);
      if (sub_query(g1.extended(y, list()), body2, t2, s)) {
        s.note("SubMatch");
        return true;
      }
    }
  }
  if (t1->kind == YK::Singleton) {
    if (sub_struct(g, t1->t1, t2, s)) {
      s.note("SubSing");
      return true;
    }
  }
  if (t1->kind == YK::Exists) {
    auto [x, body] = freshen_binder(g, t1->name, t1->t2);
    if (sub_query(g.extended(x, t1->t1), body, t2, s)) {
      s.note("SubExistsLeft " + x);
      return true;
    }
  }
  if (t2->kind == YK::Exists) {
    auto [x, body] = freshen_binder(g, t2->name, t2->t2);
    if (auto cand = solve_x(g, x, t1, t2->t1, body, s)) {
      if (s.trace_enabled) {
        s.note("SubExistsRight " + x + " := " + print_term((*cand)->term));
      }
      if (sub_query(g, *cand, t2->t1, s) &&
          sub_query(g, t1, subst(body, x, (*cand)->term), s)) {
        return true;
      }
    }
  }
  return false;
}

bool sub_query(const Context& g, const TypePtr& t1, const TypePtr& t2, Session& s) {
  s.burn();
  // Normalization is optional: the plain structural rules are tried first
  // (they are cheap and settle most queries), the normalized-and-untangled
  // query second.
  if (sub_struct(g, t1, t2, s)) return true;
  TypePtr n1, n2;
  try {
    n1 = untangle(normalize(g, t1, s), s);
    n2 = untangle(normalize(g, t2, s), s);
  } catch (const InferFailure&) {
    return false;
  }
  if (alpha_eq(n1, t1) && alpha_eq(n2, t2)) return false;
  return sub_struct(g, n1, n2, s);
}

}  // namespace

TypePtr widen(const TypePtr& ty) {
  TypePtr t = ty;
  while (t->kind == YK::Singleton) {
    if (t->t1->kind == YK::Pi) {
      const TypePtr& p = t->t1;
      return pi(p->name, p->t1, singleton(app(t->term, var(p->name)), p->t2));
    }
    t = t->t1;
  }
  return t;
}

bool subtype(const Context& gamma, const TypePtr& t1, const TypePtr& t2, Session& s) {
  return sub_query(gamma, t1, t2, s);
}

bool subtype(const Context& gamma, const TypePtr& t1, const TypePtr& t2, long fuel,
             bool* unknown) {
  Session s(fuel);
  if (unknown) *unknown = false;
  try {
    return subtype(gamma, t1, t2, s);
  } catch (const OutOfFuel&) {
    if (unknown) *unknown = true;
    return false;
  } catch (const InferFailure&) {
    if (unknown) *unknown = true;
    return false;
  }
}

std::optional<TypePtr> solve_x(const Context& gamma, const Name& x, const TypePtr& t1,
                               const TypePtr& s_dom, const TypePtr& t2, Session& s) {
  (void)s_dom;
  Align align{x, std::nullopt, false, {}};
  align.types(t1, t2);
  if (!align.cand || align.captured) return std::nullopt;
  for (const Name& n : free_vars(*align.cand)) {
    if (!gamma.contains(n)) return std::nullopt;
  }
  try {
    TypePtr inferred = infer(gamma, *align.cand, s);
    if (inferred->kind != YK::Singleton) inferred = singleton(*align.cand, inferred);
    return inferred;
  } catch (const InferFailure&) {
    return std::nullopt;
  }
}

}  // namespace elam
