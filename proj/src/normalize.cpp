#include "elam/normalize.hpp"

#include <algorithm>
#include <cassert>

#include "elam/betadelta.hpp"
#include "elam/infer.hpp"

namespace elam {

namespace {

using TK = Term::Kind;
using YK = Type::Kind;

// Renames a binder that would collide with an existing context entry.
std::pair<Name, TypePtr> freshen_binder(const Context& g, const Name& x, TypePtr body) {
  if (!g.contains(x)) return {x, std::move(body)};
  std::set<Name> fv = free_vars(body);
  Name nx = x;
  do {
    nx += "'";
  } while (g.contains(nx) || fv.count(nx));
  return {nx, subst(body, x, var(nx))};
}

TypePtr normalize_rec(const Context& g, const TypePtr& ty, Session& s) {
  s.burn();
  switch (ty->kind) {
    case YK::Base:
      return ty;
    case YK::Singleton: {
      TermPtr t2 = bd_reduce(g, ty->term, s);
      TypePtr r = infer(g, t2, s);
      if (r->kind == YK::Singleton) return r;
      return singleton(t2, r);
    }
    case YK::Pi: {
      TypePtr dom = normalize_rec(g, ty->t1, s);
      auto [x, body] = freshen_binder(g, ty->name, ty->t2);
      TypePtr cod = normalize_rec(g.extended(x, dom), body, s);
      return pi(x, dom, cod);
    }
    case YK::Exists: {
      TypePtr dom = normalize_rec(g, ty->t1, s);
      auto [x, body] = freshen_binder(g, ty->name, ty->t2);
      bool occurs = free_vars(body).count(x) != 0;
      TypePtr out = normalize_rec(g.extended(x, dom), body, s);
      if (!occurs) {
        assert(!free_vars(out).count(x));
        return out;
      }
      return exists(x, dom, out);
    }
    case YK::ConsT:
      return cons_type(normalize_rec(g, ty->t1, s), normalize_rec(g, ty->t2, s));
    case YK::MatchT: {
      TermPtr sc = bd_reduce(g, ty->term, s);
      if (sc->kind == TK::Nil) return normalize_rec(g, ty->t1, s);
      if (sc->kind == TK::Cons) {
        auto [x, body1] = freshen_binder(g, ty->name, ty->t2);
        Context g1 = g.extended(x, singleton(sc->a, top()));
        auto [y, body2] = freshen_binder(g1, ty->name2, body1);
        Context g2 = g1.extended(y, singleton(sc->b, list()));
        return normalize_rec(g2, body2, s);
      }
      return match_type(sc, ty->t1, ty->name, ty->name2, ty->t2);
    }
  }
  return ty;
}

// --- trails_of -------------------------------------------------------------

// Peels a selection chain; returns the root term and fills p outermost-last.
const TermPtr& peel_chain(const TermPtr& t, Path& p) {
  if (t->kind == TK::Sel) {
    const TermPtr& root = peel_chain(t->a, p);
    p.push_back(t->sel);
    return root;
  }
  return t;
}

struct TrailScan {
  const Name& x;
  std::set<Path>& out;

  void term(const TermPtr& t) {
    switch (t->kind) {
      case TK::Var:
        // A bare occurrence is the empty selection path. (Path{} explicitly:
        // insert({}) would pick the initializer-list overload and do nothing.)
        if (t->name == x) out.insert(Path{});
        return;
      case TK::Sel: {
        Path p;
        const TermPtr& root = peel_chain(t, p);
        if (root->kind == TK::Var && root->name == x) {
          out.insert(p);
          return;
        }
        term(t->a);
        return;
      }
      case TK::Nil:
      case TK::Choose:
      case TK::TrailLit:
        return;
      case TK::Abs:
        type(t->annot);
        if (t->name != x) term(t->a);
        return;
      case TK::App:
      case TK::Cons:
        term(t->a);
        term(t->b);
        return;
      case TK::Match:
        term(t->a);
        term(t->b);
        if (t->name != x && t->name2 != x) term(t->c);
        return;
      case TK::Fix:
        type(t->annot);
        if (t->name != x) term(t->a);
        term(t->b);
        return;
      case TK::Unpack:
        term(t->a);
        return;
    }
  }

  void type(const TypePtr& ty) {
    switch (ty->kind) {
      case YK::Base:
        return;
      case YK::Singleton:
        term(ty->term);
        type(ty->t1);
        return;
      case YK::Pi:
      case YK::Exists:
        type(ty->t1);
        if (ty->name != x) type(ty->t2);
        return;
      case YK::ConsT:
        type(ty->t1);
        type(ty->t2);
        return;
      case YK::MatchT:
        term(ty->term);
        type(ty->t1);
        if (ty->name != x && ty->name2 != x) type(ty->t2);
        return;
    }
  }
};

// --- untangle --------------------------------------------------------------

// Rewrites occurrences of the exact maximal chain x..p (optionally only when
// directly under unpack with tag `tag`) to the variable y.
struct ChainRewrite {
  const Name& x;
  const Path& p;
  Name y;
  bool unpack_only;
  BaseType tag = BaseType::Top;

  bool chain_matches(const TermPtr& t) const {
    Path q;
    const TermPtr& root = peel_chain(t, q);
    return root->kind == TK::Var && root->name == x && q == p;
  }

  TermPtr term(const TermPtr& t) {
    if (!unpack_only && chain_matches(t)) return var(y);
    switch (t->kind) {
      case TK::Var:
      case TK::Nil:
      case TK::Choose:
      case TK::TrailLit:
        return t;
      case TK::Unpack:
        if (unpack_only && t->base == tag && chain_matches(t->a)) return var(y);
        return unpack(t->base, term(t->a));
      case TK::Sel: {
        // A matched chain was handled above; otherwise only the root can
        // contain further occurrences.
        return sel(term(t->a), t->sel);
      }
      case TK::Abs:
        if (t->name == x) return abs(t->name, type(t->annot), t->a);
        return abs(t->name, type(t->annot), term(t->a));
      case TK::App:
        return app(term(t->a), term(t->b));
      case TK::Cons:
        return cons(term(t->a), term(t->b));
      case TK::Match: {
        TermPtr cc = (t->name == x || t->name2 == x) ? t->c : term(t->c);
        return match(term(t->a), term(t->b), t->name, t->name2, cc);
      }
      case TK::Fix: {
        TermPtr body = t->name == x ? t->a : term(t->a);
        return fixpoint(t->bound, t->name, type(t->annot), body, term(t->b));
      }
    }
    return t;
  }

  TypePtr type(const TypePtr& ty) {
    switch (ty->kind) {
      case YK::Base:
        return ty;
      case YK::Singleton:
        return singleton(term(ty->term), type(ty->t1));
      case YK::Pi:
      case YK::Exists: {
        TypePtr body = ty->name == x ? ty->t2 : type(ty->t2);
        return ty->kind == YK::Pi ? pi(ty->name, type(ty->t1), body)
                                  : exists(ty->name, type(ty->t1), body);
      }
      case YK::ConsT:
        return cons_type(type(ty->t1), type(ty->t2));
      case YK::MatchT: {
        TypePtr body = (ty->name == x || ty->name2 == x) ? ty->t2 : type(ty->t2);
        return match_type(term(ty->term), type(ty->t1), ty->name, ty->name2, body);
      }
    }
    return ty;
  }
};

// Finds the tag of some unpack applied to the exact chain x..p, if any.
struct TagScan {
  const Name& x;
  const Path& p;
  std::optional<BaseType> found;

  bool chain_matches(const TermPtr& t) const {
    Path q;
    const TermPtr& root = peel_chain(t, q);
    return root->kind == TK::Var && root->name == x && q == p;
  }

  void term(const TermPtr& t) {
    if (found) return;
    if (t->kind == TK::Unpack && chain_matches(t->a)) {
      found = t->base;
      return;
    }
    switch (t->kind) {
      case TK::Abs:
        type(t->annot);
        if (t->name != x) term(t->a);
        return;
      case TK::Match:
        term(t->a);
        term(t->b);
        if (t->name != x && t->name2 != x) term(t->c);
        return;
      case TK::Fix:
        type(t->annot);
        if (t->name != x) term(t->a);
        term(t->b);
        return;
      default:
        if (t->a) term(t->a);
        if (t->b) term(t->b);
        if (t->c) term(t->c);
        return;
    }
  }

  void type(const TypePtr& ty) {
    if (found) return;
    switch (ty->kind) {
      case YK::Base:
        return;
      case YK::Singleton:
        term(ty->term);
        type(ty->t1);
        return;
      case YK::Pi:
      case YK::Exists:
        type(ty->t1);
        if (ty->name != x) type(ty->t2);
        return;
      case YK::ConsT:
        type(ty->t1);
        type(ty->t2);
        return;
      case YK::MatchT:
        term(ty->term);
        type(ty->t1);
        if (ty->name != x && ty->name2 != x) type(ty->t2);
        return;
    }
  }
};

TypePtr untangle_rec(const TypePtr& ty, Session& s) {
  switch (ty->kind) {
    case YK::Base:
      return ty;
    case YK::Singleton:
      return singleton(ty->term, untangle_rec(ty->t1, s));
    case YK::Pi:
      return pi(ty->name, untangle_rec(ty->t1, s), untangle_rec(ty->t2, s));
    case YK::ConsT:
      return cons_type(untangle_rec(ty->t1, s), untangle_rec(ty->t2, s));
    case YK::MatchT:
      return match_type(ty->term, untangle_rec(ty->t1, s), ty->name, ty->name2,
                        untangle_rec(ty->t2, s));
    case YK::Exists: {
      if (!is_base(ty->t1, BaseType::Trail)) {
        return exists(ty->name, untangle_rec(ty->t1, s), untangle_rec(ty->t2, s));
      }
      const Name& x = ty->name;
      TypePtr body = untangle_rec(ty->t2, s);
      std::set<Path> ps = trails_of(x, body);
      // Paths are bound smallest-outermost: wrapping proceeds inside-out, so
      // process in descending order.
      std::vector<Path> order(ps.begin(), ps.end());
      std::sort(order.begin(), order.end(), std::greater<>());
      TypePtr acc = body;
      for (const Path& p : order) {
        Name y = s.fresh("u");
        TagScan tags{x, p, std::nullopt};
        tags.type(acc);
        if (tags.found) {
          ChainRewrite rw{x, p, y, true, *tags.found};
          TypePtr replaced = rw.type(acc);
          if (!trails_of(x, replaced).count(p)) {
            acc = exists(y, base(*tags.found), replaced);
            continue;
          }
        }
        ChainRewrite rw{x, p, y, false};
        acc = exists(y, trail_type(), rw.type(acc));
      }
      return acc;
    }
  }
  return ty;
}

}  // namespace

TypePtr normalize(const Context& gamma, const TypePtr& ty, Session& s) {
  return normalize_rec(gamma, ty, s);
}

TypePtr normalize(const Context& gamma, const TypePtr& ty, long fuel) {
  Session s(fuel);
  return normalize(gamma, ty, s);
}

std::set<Path> trails_of(const Name& x, const TypePtr& ty) {
  std::set<Path> out;
  TrailScan scan{x, out};
  scan.type(ty);
  return out;
}

TypePtr untangle(const TypePtr& ty, Session& s) {
  std::set<Name> names;
  all_names(ty, names);
  s.reserve(names);
  return untangle_rec(ty, s);
}

}  // namespace elam
