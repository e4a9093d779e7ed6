#include "elam/betadelta.hpp"

#include <map>

#include "elam/eval.hpp"
#include "elam/trail.hpp"

namespace elam {

namespace {

using K = Term::Kind;

std::optional<TermPtr> delta(const Context& gamma, const TermPtr& t) {
  if (t->kind != K::Var) return std::nullopt;
  auto ty = gamma.lookup(t->name);
  if (ty && (*ty)->kind == Type::Kind::Singleton) return (*ty)->term;
  return std::nullopt;
}

}  // namespace

std::optional<TermPtr> bd_step(const Context& gamma, const TermPtr& t) {
  if (auto d = delta(gamma, t)) return d;
  auto sub_a = [&]() -> std::optional<TermPtr> {
    if (auto r = bd_step(gamma, t->a)) {
      auto m = std::make_shared<Term>(*t);
      m->a = *r;
      return TermPtr(m);
    }
    return std::nullopt;
  };
  auto sub_b = [&]() -> std::optional<TermPtr> {
    if (auto r = bd_step(gamma, t->b)) {
      auto m = std::make_shared<Term>(*t);
      m->b = *r;
      return TermPtr(m);
    }
    return std::nullopt;
  };
  switch (t->kind) {
    case K::App: {
      if (auto r = sub_a()) return r;
      if (!is_value(t->a)) return std::nullopt;
      if (auto r = sub_b()) return r;
      if (t->a->kind == K::Abs && is_value(t->b)) return subst(t->a->a, t->a->name, t->b);
      return std::nullopt;
    }
    case K::Cons: {
      if (auto r = sub_a()) return r;
      if (!is_value(t->a)) return std::nullopt;
      return sub_b();
    }
    case K::Match: {
      if (auto r = sub_a()) return r;
      if (t->a->kind == K::Nil) return t->b;
      if (t->a->kind == K::Cons && is_value(t->a)) {
        return subst(subst(t->c, t->name, t->a->a), t->name2, t->a->b);
      }
      return std::nullopt;
    }
    case K::Fix: {
      if (t->bound == 0) return t->b;
      return subst(t->a, t->name, fixpoint(t->bound - 1, t->name, t->annot, t->a, t->b));
    }
    case K::Sel: {
      if (auto r = sub_a()) return r;
      if (t->a->kind == K::TrailLit) return trail_lit(select(t->a->trail, {t->sel}));
      return std::nullopt;
    }
    case K::Unpack: {
      if (auto r = sub_a()) return r;
      if (t->a->kind == K::TrailLit) return unpack_value(t->base, t->a->trail);
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

namespace {

// Big-step normal form agreeing with iterated bd_step: components to the
// right of a non-value are left untouched, mirroring the strict contexts.
// Nodes known to be values are memoized per run, so revisiting a shared
// value argument (e.g. at every recursion unrolling) costs O(1) instead of
// a full re-walk.
struct NF {
  const Context& gamma;
  Session& s;
  // Owning pointers: keys must stay alive, or a freed node reallocated at
  // the same address would masquerade as an already-seen value.
  std::map<const Term*, TermPtr> vals;

  bool val(const TermPtr& t) const { return vals.count(t.get()) != 0; }

  // Shallow value classification of a run() result: composite children
  // have already been run, so their valueness is in the memo.
  void mark(const TermPtr& r) {
    switch (r->kind) {
      case K::Var:
      case K::Nil:
      case K::Abs:
      case K::TrailLit:
        vals.emplace(r.get(), r);
        return;
      case K::Cons:
        if (val(r->a) && val(r->b)) vals.emplace(r.get(), r);
        return;
      case K::Sel:
      case K::Unpack:
        if (val(r->a) && r->a->kind != K::TrailLit) vals.emplace(r.get(), r);
        return;
      default:
        return;
    }
  }

  TermPtr run(const TermPtr& t) {
    if (val(t)) return t;
    TermPtr r = compute(t);
    mark(r);
    return r;
  }

  TermPtr compute(const TermPtr& t) {
    switch (t->kind) {
      case K::Var: {
        if (auto d = delta(gamma, t)) {
          s.burn();
          return run(*d);
        }
        return t;
      }
      case K::Nil:
      case K::Abs:
      case K::TrailLit:
      case K::Choose:
        return t;
      case K::Cons: {
        TermPtr a = run(t->a);
        if (!val(a)) {
          if (a == t->a) return t;
          return cons(a, t->b);
        }
        TermPtr b = run(t->b);
        if (a == t->a && b == t->b) return t;
        return cons(a, b);
      }
      case K::App: {
        TermPtr f = run(t->a);
        if (!val(f)) return f == t->a ? t : app(f, t->b);
        TermPtr arg = run(t->b);
        if (f->kind == K::Abs && val(arg)) {
          s.burn();
          return run(subst(f->a, f->name, arg));
        }
        if (f == t->a && arg == t->b) return t;
        return app(f, arg);
      }
      case K::Match: {
        TermPtr sc = run(t->a);
        if (sc->kind == K::Nil) {
          s.burn();
          return run(t->b);
        }
        if (sc->kind == K::Cons && val(sc)) {
          s.burn();
          return run(subst(subst(t->c, t->name, sc->a), t->name2, sc->b));
        }
        if (sc == t->a) return t;
        return match(sc, t->b, t->name, t->name2, t->c);
      }
      case K::Fix: {
        s.burn();
        if (t->bound == 0) return run(t->b);
        TermPtr smaller = fixpoint(t->bound - 1, t->name, t->annot, t->a, t->b);
        return run(subst(t->a, t->name, smaller));
      }
      case K::Sel: {
        TermPtr a = run(t->a);
        if (a->kind == K::TrailLit) {
          s.burn();
          return trail_lit(select(a->trail, {t->sel}));
        }
        if (a == t->a) return t;
        return sel(a, t->sel);
      }
      case K::Unpack: {
        TermPtr a = run(t->a);
        if (a->kind == K::TrailLit) {
          s.burn();
          // The extracted value comes from the trail literal, so its nodes
          // have never been classified; run it to seed the memo.
          return run(unpack_value(t->base, a->trail));
        }
        if (a == t->a) return t;
        return unpack(t->base, a);
      }
    }
    return t;
  }
};

}  // namespace

TermPtr bd_reduce(const Context& gamma, const TermPtr& t, Session& s) {
  NF nf{gamma, s, {}};
  return nf.run(t);
}

TermPtr bd_reduce(const Context& gamma, const TermPtr& t, long fuel) {
  Session s(fuel);
  return bd_reduce(gamma, t, s);
}

}  // namespace elam
