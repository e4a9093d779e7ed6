#include "elam/lower.hpp"

#include "elam/syntax.hpp"

namespace elam {

TermPtr lower_term(Session& s, const TermPtr& p, const TermPtr& t) {
  using K = Term::Kind;
  switch (t->kind) {
    case K::Var:
    case K::Nil:
      return t;
    case K::Choose:
      return unpack(t->base, p);
    case K::Abs: {
      Name z = s.fresh("z");
      return abs(z, trail_type(),
                 abs(t->name, lower_type(s, t->annot), lower_term(s, var(z), t->a)));
    }
    case K::App:
      return app(app(lower_term(s, sel(p, 1), t->a), sel(p, 3)),
                 lower_term(s, sel(p, 2), t->b));
    case K::Cons:
      return cons(lower_term(s, sel(p, 1), t->a), lower_term(s, sel(p, 2), t->b));
    case K::Match:
      return match(lower_term(s, sel(p, 1), t->a), lower_term(s, sel(p, 2), t->b),
                   t->name, t->name2, lower_term(s, sel(p, 3), t->c));
    case K::Fix:
      return fixpoint(t->bound, t->name, lower_type(s, t->annot),
                      lower_term(s, sel(p, 1), t->a), lower_term(s, sel(p, 2), t->b));
    case K::Sel:
    case K::Unpack:
    case K::TrailLit:
      // Core-only constructs carry no choices; congruent descent.
      if (t->kind == K::Sel) return sel(lower_term(s, p, t->a), t->sel);
      if (t->kind == K::Unpack) return unpack(t->base, lower_term(s, p, t->a));
      return t;
  }
  return t;
}

TypePtr lower_type(Session& s, const TypePtr& ty) {
  using K = Type::Kind;
  switch (ty->kind) {
    case K::Base:
      return ty;
    case K::Singleton: {
      Name z = s.fresh("z");
      return exists(z, trail_type(),
                    singleton(lower_term(s, var(z), ty->term), lower_type(s, ty->t1)));
    }
    case K::Pi: {
      Name z = s.fresh("z");
      return pi(z, trail_type(),
                pi(ty->name, lower_type(s, ty->t1), lower_type(s, ty->t2)));
    }
    case K::ConsT:
      return cons_type(lower_type(s, ty->t1), lower_type(s, ty->t2));
    case K::MatchT: {
      Name z = s.fresh("z");
      TypePtr out = match_type(lower_term(s, var(z), ty->term), lower_type(s, ty->t1),
                               ty->name, ty->name2, lower_type(s, ty->t2));
      // The scrutinee's trail is not bound by the translation equations; we
      // quantify it existentially when it survives, by analogy with the
      // singleton equation.
      if (free_vars(out).count(z)) return exists(z, trail_type(), out);
      return out;
    }
    case K::Exists:
      return exists(ty->name, lower_type(s, ty->t1), lower_type(s, ty->t2));
  }
  return ty;
}

TermPtr lower_program(Session& s, const TermPtr& t) {
  std::set<Name> names;
  all_names(t, names);
  s.reserve(names);
  Name z = s.fresh("z");
  return abs(z, trail_type(), lower_term(s, var(z), t));
}

}  // namespace elam
