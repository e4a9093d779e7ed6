#include "elam/syntax.hpp"

#include <cassert>
#include <map>

namespace elam {

namespace {

// Free-variable sets are computed compositionally and memoized on the
// nodes themselves (nodes are immutable and widely shared, e.g. a value
// argument revisited at every recursion unrolling). Sharing is preserved
// where the set is inherited unchanged from a child, so long selection
// chains carry one set, not one per link.
using FvSet = std::set<Name>;
using FvPtr = std::shared_ptr<const FvSet>;

const FvPtr& empty_fv() {
  static const FvPtr e = std::make_shared<FvSet>();
  return e;
}

FvPtr fv_of(const TermPtr& t);
FvPtr fv_of(const TypePtr& t);

FvPtr fv_union(std::initializer_list<FvPtr> parts) {
  const FvPtr* only = nullptr;
  int nonempty = 0;
  for (const FvPtr& p : parts) {
    if (!p->empty()) {
      ++nonempty;
      only = &p;
    }
  }
  if (nonempty == 0) return empty_fv();
  if (nonempty == 1) return *only;
  auto out = std::make_shared<FvSet>();
  for (const FvPtr& p : parts) out->insert(p->begin(), p->end());
  return out;
}

FvPtr fv_minus(const FvPtr& s, const Name& x) {
  if (!s->count(x)) return s;
  auto out = std::make_shared<FvSet>(*s);
  out->erase(x);
  return out;
}

FvPtr fv_minus(const FvPtr& s, const Name& x, const Name& y) {
  return fv_minus(fv_minus(s, x), y);
}

FvPtr fv_trail(const TrailPtr& tr) {
  switch (tr->kind) {
    case TrailTree::Kind::Empty:
      return empty_fv();
    case TrailTree::Kind::Leaf:
      return fv_of(tr->value);
    case TrailTree::Kind::Node:
      return fv_union({fv_trail(tr->c1), fv_trail(tr->c2), fv_trail(tr->c3)});
  }
  return empty_fv();
}

FvPtr fv_term_compute(const TermPtr& t) {
  using K = Term::Kind;
  switch (t->kind) {
    case K::Var:
      return std::make_shared<FvSet>(FvSet{t->name});
    case K::Abs:
      return fv_union({fv_of(t->annot), fv_minus(fv_of(t->a), t->name)});
    case K::App:
    case K::Cons:
      return fv_union({fv_of(t->a), fv_of(t->b)});
    case K::Nil:
    case K::Choose:
      return empty_fv();
    case K::Match:
      return fv_union(
          {fv_of(t->a), fv_of(t->b), fv_minus(fv_of(t->c), t->name, t->name2)});
    case K::Fix:
      return fv_union({fv_of(t->annot), fv_minus(fv_of(t->a), t->name), fv_of(t->b)});
    case K::Sel:
    case K::Unpack:
      return fv_of(t->a);
    case K::TrailLit:
      return fv_trail(t->trail);
  }
  return empty_fv();
}

FvPtr fv_type_compute(const TypePtr& t) {
  using K = Type::Kind;
  switch (t->kind) {
    case K::Base:
      return empty_fv();
    case K::Singleton:
      return fv_union({fv_of(t->term), fv_of(t->t1)});
    case K::Pi:
    case K::Exists:
      return fv_union({fv_of(t->t1), fv_minus(fv_of(t->t2), t->name)});
    case K::ConsT:
      return fv_union({fv_of(t->t1), fv_of(t->t2)});
    case K::MatchT:
      return fv_union({fv_of(t->term), fv_of(t->t1),
                       fv_minus(fv_of(t->t2), t->name, t->name2)});
  }
  return empty_fv();
}

FvPtr fv_of(const TermPtr& t) {
  if (FvPtr c = std::atomic_load(&t->fv_cache.ptr)) return c;
  FvPtr r = fv_term_compute(t);
  std::atomic_store(&t->fv_cache.ptr, r);
  return r;
}

FvPtr fv_of(const TypePtr& t) {
  if (FvPtr c = std::atomic_load(&t->fv_cache.ptr)) return c;
  FvPtr r = fv_type_compute(t);
  std::atomic_store(&t->fv_cache.ptr, r);
  return r;
}

Name rename_avoiding(const Name& y, const std::set<Name>& avoid) {
  Name cand = y + "'";
  while (avoid.count(cand)) cand += "'";
  return cand;
}

// Substitution state: the variable, the replacement, and fv(s) computed once.
struct Subst {
  const Name& x;
  const TermPtr& s;
  const std::set<Name>& fvs;

  TermPtr term(const TermPtr& t) const;
  TypePtr type(const TypePtr& t) const;

  // Renames binder y when it would capture a free variable of s, returning
  // the (possibly renamed) binder and the rewritten scope.
  template <typename Node, typename Rec>
  std::pair<Name, Node> binder(const Name& y, const Node& scope, Rec rec) const {
    if (fvs.count(y)) {
      std::set<Name> avoid = fvs;
      for (const auto& n : free_vars(scope)) avoid.insert(n);
      avoid.insert(x);
      Name y2 = rename_avoiding(y, avoid);
      return {y2, rec(subst(scope, y, var(y2)))};
    }
    return {y, rec(scope)};
  }
};

TermPtr Subst::term(const TermPtr& t) const {
  using K = Term::Kind;
  if (!fv_of(t)->count(x)) return t;
  switch (t->kind) {
    case K::Var:
      return t->name == x ? s : t;
    case K::Abs: {
      TypePtr annot = type(t->annot);
      TermPtr r;
      if (t->name == x) {
        if (annot == t->annot) return t;
        r = abs(t->name, annot, t->a);
      } else {
        auto [y, body] = binder(t->name, t->a, [&](const TermPtr& u) { return term(u); });
        r = abs(y, annot, body);
      }
      const_cast<Term*>(r.get())->frame_id = t->frame_id;
      return r;
    }
    case K::App: {
      TermPtr r = app(term(t->a), term(t->b));
      if (t->site) const_cast<Term*>(r.get())->site = t->site;
      return r;
    }
    case K::Nil:
      return t;
    case K::Cons:
      return cons(term(t->a), term(t->b));
    case K::Match: {
      TermPtr scrut = term(t->a);
      TermPtr nilc = term(t->b);
      if (t->name == x || t->name2 == x)
        return match(scrut, nilc, t->name, t->name2, t->c);
      Name hd = t->name, tl = t->name2;
      TermPtr body = t->c;
      if (fvs.count(hd)) {
        std::set<Name> avoid = fvs;
        for (const auto& n : free_vars(body)) avoid.insert(n);
        avoid.insert(x);
        avoid.insert(tl);
        Name hd2 = rename_avoiding(hd, avoid);
        body = subst(body, hd, var(hd2));
        hd = hd2;
      }
      if (fvs.count(tl)) {
        std::set<Name> avoid = fvs;
        for (const auto& n : free_vars(body)) avoid.insert(n);
        avoid.insert(x);
        avoid.insert(hd);
        Name tl2 = rename_avoiding(tl, avoid);
        body = subst(body, tl, var(tl2));
        tl = tl2;
      }
      return match(scrut, nilc, hd, tl, term(body));
    }
    case K::Fix: {
      TypePtr annot = type(t->annot);
      TermPtr dflt = term(t->b);
      if (t->name == x) return fixpoint(t->bound, t->name, annot, t->a, dflt);
      auto [y, body] = binder(t->name, t->a, [&](const TermPtr& u) { return term(u); });
      return fixpoint(t->bound, y, annot, body, dflt);
    }
    case K::Choose: {
      // preserve instrumentation sites
      auto r = choose(t->base);
      if (t->site) const_cast<Term*>(r.get())->site = t->site;
      return r;
    }
    case K::Sel:
      return sel(term(t->a), t->sel);
    case K::Unpack:
      return unpack(t->base, term(t->a));
    case K::TrailLit:
      return t;  // leaf values are closed
  }
  return t;
}

TypePtr Subst::type(const TypePtr& t) const {
  using K = Type::Kind;
  if (!fv_of(t)->count(x)) return t;
  switch (t->kind) {
    case K::Base:
      return t;
    case K::Singleton:
      return singleton(term(t->term), type(t->t1));
    case K::Pi:
    case K::Exists: {
      TypePtr dom = type(t->t1);
      if (t->name == x) {
        return t->kind == K::Pi ? pi(t->name, dom, t->t2) : exists(t->name, dom, t->t2);
      }
      auto [y, body] = binder(t->name, t->t2, [&](const TypePtr& u) { return type(u); });
      return t->kind == K::Pi ? pi(y, dom, body) : exists(y, dom, body);
    }
    case K::ConsT:
      return cons_type(type(t->t1), type(t->t2));
    case K::MatchT: {
      TermPtr scrut = term(t->term);
      TypePtr nilt = type(t->t1);
      if (t->name == x || t->name2 == x)
        return match_type(scrut, nilt, t->name, t->name2, t->t2);
      Name hd = t->name, tl = t->name2;
      TypePtr body = t->t2;
      if (fvs.count(hd)) {
        std::set<Name> avoid = fvs;
        for (const auto& n : free_vars(body)) avoid.insert(n);
        avoid.insert(x);
        avoid.insert(tl);
        Name hd2 = rename_avoiding(hd, avoid);
        body = subst(body, hd, var(hd2));
        hd = hd2;
      }
      if (fvs.count(tl)) {
        std::set<Name> avoid = fvs;
        for (const auto& n : free_vars(body)) avoid.insert(n);
        avoid.insert(x);
        avoid.insert(hd);
        Name tl2 = rename_avoiding(tl, avoid);
        body = subst(body, tl, var(tl2));
        tl = tl2;
      }
      return match_type(scrut, nilt, hd, tl, type(body));
    }
  }
  return t;
}

// --- alpha equivalence via on-the-fly de Bruijn levels ---

struct AlphaEnv {
  std::map<Name, int> left, right;
  int depth = 0;
};

struct Bind {
  AlphaEnv& env;
  Name l, r;
  std::optional<int> oldl, oldr;
  Bind(AlphaEnv& e, const Name& ln, const Name& rn) : env(e), l(ln), r(rn) {
    if (auto it = env.left.find(l); it != env.left.end()) oldl = it->second;
    if (auto it = env.right.find(r); it != env.right.end()) oldr = it->second;
    env.left[l] = env.depth;
    env.right[r] = env.depth;
    env.depth++;
  }
  ~Bind() {
    env.depth--;
    if (oldl) env.left[l] = *oldl; else env.left.erase(l);
    if (oldr) env.right[r] = *oldr; else env.right.erase(r);
  }
};

bool aeq_term(const TermPtr& a, const TermPtr& b, AlphaEnv& env);
bool aeq_type(const TypePtr& a, const TypePtr& b, AlphaEnv& env);

bool aeq_trail(const TrailPtr& a, const TrailPtr& b, AlphaEnv& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TrailTree::Kind::Empty:
      return true;
    case TrailTree::Kind::Leaf:
      return a->tag == b->tag && aeq_term(a->value, b->value, env);
    case TrailTree::Kind::Node:
      return aeq_trail(a->c1, b->c1, env) && aeq_trail(a->c2, b->c2, env) &&
             aeq_trail(a->c3, b->c3, env);
  }
  return false;
}

bool aeq_term(const TermPtr& a, const TermPtr& b, AlphaEnv& env) {
  using K = Term::Kind;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case K::Var: {
      auto la = env.left.find(a->name);
      auto lb = env.right.find(b->name);
      if (la != env.left.end() || lb != env.right.end())
        return la != env.left.end() && lb != env.right.end() && la->second == lb->second;
      return a->name == b->name;
    }
    case K::Abs: {
      if (!aeq_type(a->annot, b->annot, env)) return false;
      Bind g(env, a->name, b->name);
      return aeq_term(a->a, b->a, env);
    }
    case K::App:
    case K::Cons:
      return aeq_term(a->a, b->a, env) && aeq_term(a->b, b->b, env);
    case K::Nil:
      return true;
    case K::Match: {
      if (!aeq_term(a->a, b->a, env) || !aeq_term(a->b, b->b, env)) return false;
      Bind g1(env, a->name, b->name);
      Bind g2(env, a->name2, b->name2);
      return aeq_term(a->c, b->c, env);
    }
    case K::Fix: {
      if (a->bound != b->bound) return false;
      if (!aeq_type(a->annot, b->annot, env)) return false;
      if (!aeq_term(a->b, b->b, env)) return false;
      Bind g(env, a->name, b->name);
      return aeq_term(a->a, b->a, env);
    }
    case K::Choose:
      return a->base == b->base;
    case K::Sel:
      return a->sel == b->sel && aeq_term(a->a, b->a, env);
    case K::Unpack:
      return a->base == b->base && aeq_term(a->a, b->a, env);
    case K::TrailLit:
      return aeq_trail(a->trail, b->trail, env);
  }
  return false;
}

bool aeq_type(const TypePtr& a, const TypePtr& b, AlphaEnv& env) {
  using K = Type::Kind;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case K::Base:
      return a->base == b->base;
    case K::Singleton:
      return aeq_term(a->term, b->term, env) && aeq_type(a->t1, b->t1, env);
    case K::Pi:
    case K::Exists: {
      if (!aeq_type(a->t1, b->t1, env)) return false;
      Bind g(env, a->name, b->name);
      return aeq_type(a->t2, b->t2, env);
    }
    case K::ConsT:
      return aeq_type(a->t1, b->t1, env) && aeq_type(a->t2, b->t2, env);
    case K::MatchT: {
      if (!aeq_term(a->term, b->term, env)) return false;
      if (!aeq_type(a->t1, b->t1, env)) return false;
      Bind g1(env, a->name, b->name);
      Bind g2(env, a->name2, b->name2);
      return aeq_type(a->t2, b->t2, env);
    }
  }
  return false;
}

bool dialect_term(const TermPtr& t, Dialect d);
bool dialect_type(const TypePtr& t, Dialect d);

bool dialect_term(const TermPtr& t, Dialect d) {
  using K = Term::Kind;
  switch (t->kind) {
    case K::Choose:
      return d == Dialect::Surface;
    case K::Sel:
    case K::Unpack:
      return d == Dialect::Core && dialect_term(t->a, d);
    case K::TrailLit:
      return d == Dialect::Core;
    case K::Var:
    case K::Nil:
      return true;
    case K::Abs:
      return dialect_type(t->annot, d) && dialect_term(t->a, d);
    case K::App:
    case K::Cons:
      return dialect_term(t->a, d) && dialect_term(t->b, d);
    case K::Match:
      return dialect_term(t->a, d) && dialect_term(t->b, d) && dialect_term(t->c, d);
    case K::Fix:
      return dialect_type(t->annot, d) && dialect_term(t->a, d) && dialect_term(t->b, d);
  }
  return false;
}

bool dialect_type(const TypePtr& t, Dialect d) {
  using K = Type::Kind;
  switch (t->kind) {
    case K::Base:
      return t->base != BaseType::Trail || d == Dialect::Core;
    case K::Singleton:
      return dialect_term(t->term, d) && dialect_type(t->t1, d);
    case K::Pi:
      return dialect_type(t->t1, d) && dialect_type(t->t2, d);
    case K::ConsT:
      return d == Dialect::Core && dialect_type(t->t1, d) && dialect_type(t->t2, d);
    case K::MatchT:
      return d == Dialect::Core && dialect_term(t->term, d) && dialect_type(t->t1, d) &&
             dialect_type(t->t2, d);
    case K::Exists:
      return d == Dialect::Core && dialect_type(t->t1, d) && dialect_type(t->t2, d);
  }
  return false;
}

}  // namespace

std::set<Name> free_vars(const TermPtr& t) { return *fv_of(t); }

std::set<Name> free_vars(const TypePtr& t) { return *fv_of(t); }

TermPtr subst(const TermPtr& t, const Name& x, const TermPtr& s) {
  FvPtr fvs = fv_of(s);
  Subst st{x, s, *fvs};
  return st.term(t);
}

TypePtr subst(const TypePtr& t, const Name& x, const TermPtr& s) {
  FvPtr fvs = fv_of(s);
  Subst st{x, s, *fvs};
  return st.type(t);
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  AlphaEnv env;
  return aeq_term(a, b, env);
}

bool alpha_eq(const TypePtr& a, const TypePtr& b) {
  AlphaEnv env;
  return aeq_type(a, b, env);
}

bool check_dialect(const TermPtr& t, Dialect d) { return dialect_term(t, d); }
bool check_dialect(const TypePtr& t, Dialect d) { return dialect_type(t, d); }

void all_names(const TermPtr& t, std::set<Name>& out) {
  using K = Term::Kind;
  switch (t->kind) {
    case K::Var:
      out.insert(t->name);
      return;
    case K::Abs:
      out.insert(t->name);
      all_names(t->annot, out);
      all_names(t->a, out);
      return;
    case K::App:
    case K::Cons:
      all_names(t->a, out);
      all_names(t->b, out);
      return;
    case K::Nil:
    case K::Choose:
      return;
    case K::Match:
      out.insert(t->name);
      out.insert(t->name2);
      all_names(t->a, out);
      all_names(t->b, out);
      all_names(t->c, out);
      return;
    case K::Fix:
      out.insert(t->name);
      all_names(t->annot, out);
      all_names(t->a, out);
      all_names(t->b, out);
      return;
    case K::Sel:
    case K::Unpack:
      all_names(t->a, out);
      return;
    case K::TrailLit:
      return;
  }
}

void all_names(const TypePtr& t, std::set<Name>& out) {
  using K = Type::Kind;
  switch (t->kind) {
    case K::Base:
      return;
    case K::Singleton:
      all_names(t->term, out);
      all_names(t->t1, out);
      return;
    case K::Pi:
    case K::Exists:
      out.insert(t->name);
      all_names(t->t1, out);
      all_names(t->t2, out);
      return;
    case K::ConsT:
      all_names(t->t1, out);
      all_names(t->t2, out);
      return;
    case K::MatchT:
      out.insert(t->name);
      out.insert(t->name2);
      all_names(t->term, out);
      all_names(t->t1, out);
      all_names(t->t2, out);
      return;
  }
}

bool Context::contains(const Name& x) const {
  for (const auto& [n, ty] : entries_)
    if (n == x) return true;
  return false;
}

std::optional<TypePtr> Context::lookup(const Name& x) const {
  for (const auto& [n, ty] : entries_)
    if (n == x) return ty;
  return std::nullopt;
}

Context Context::extended(Name x, TypePtr ty) const {
  assert(!contains(x));
  Context c = *this;
  c.entries_.emplace_back(std::move(x), std::move(ty));
  return c;
}

}  // namespace elam
