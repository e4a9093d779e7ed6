#include "elam/infer.hpp"

#include <functional>
#include <future>
#include <limits>

#include "elam/eval.hpp"
#include "elam/lower.hpp"
#include "elam/subtype.hpp"

namespace elam {

namespace {

using TK = Term::Kind;
using YK = Type::Kind;

std::pair<Name, TermPtr> freshen_binder(const Context& g, const Name& x, TermPtr body) {
  if (!g.contains(x)) return {x, std::move(body)};
  std::set<Name> fv = free_vars(body);
  Name nx = x;
  do {
    nx += "'";
  } while (g.contains(nx) || fv.count(nx));
  return {nx, subst(body, x, var(nx))};
}

TypePtr infer_rec(const Context& g, const TermPtr& t, Session& s);

bool check_rec(const Context& g, const TermPtr& t, const TypePtr& ty, Session& s) {
  TypePtr inferred = infer_rec(g, t, s);
  return subtype(g, inferred, ty, s);
}

TypePtr infer_rec(const Context& g, const TermPtr& t, Session& s) {
  s.burn();
  switch (t->kind) {
    case TK::Var: {
      auto ty = g.lookup(t->name);
      if (!ty) throw InferFailure("unbound variable " + t->name);
      return singleton(t, *ty);
    }
    case TK::Abs: {
      auto [x, body] = freshen_binder(g, t->name, t->a);
      TypePtr body_ty = infer_rec(g.extended(x, t->annot), body, s);
      TermPtr lam = x == t->name ? t : abs(x, t->annot, body);
      return singleton(lam, pi(x, t->annot, body_ty));
    }
    case TK::App: {
      TypePtr fn_ty = widen(infer_rec(g, t->a, s));
      if (fn_ty->kind != YK::Pi) {
        throw InferFailure("applied term is not a function: " + print_term(t->a));
      }
      if (!check_rec(g, t->b, fn_ty->t1, s)) {
        throw InferFailure("argument does not check against the parameter type in " +
                           print_term(t));
      }
      return subst(fn_ty->t2, fn_ty->name, t->b);
    }
    case TK::Fix: {
      auto [x, body] = freshen_binder(g, t->name, t->a);
      if (!check_rec(g.extended(x, t->annot), body, t->annot, s)) {
        throw InferFailure("recursive body does not check against its annotation in " +
                           print_term(t));
      }
      if (!check_rec(g, t->b, t->annot, s)) {
        throw InferFailure("default value does not check against the annotation in " +
                           print_term(t));
      }
      return singleton(t, t->annot);
    }
    case TK::Nil:
      return singleton(t, list());
    case TK::Cons: {
      TypePtr head_ty = infer_rec(g, t->a, s);
      TypePtr tail_ty = infer_rec(g, t->b, s);
      if (!subtype(g, tail_ty, list(), s)) {
        throw InferFailure("cons tail is not a list: " + print_term(t->b));
      }
      return singleton(t, cons_type(head_ty, tail_ty));
    }
    case TK::Match: {
      if (!check_rec(g, t->a, list(), s)) {
        throw InferFailure("match scrutinee is not a list: " + print_term(t->a));
      }
      TypePtr nil_ty = infer_rec(g, t->b, s);
      auto [x, body1] = freshen_binder(g, t->name, t->c);
      Context g1 = g.extended(x, top());
      auto [y, body2] = freshen_binder(g1, t->name2, body1);
      TypePtr cons_ty = infer_rec(g1.extended(y, list()), body2, s);
      TermPtr tm =
          (x == t->name && y == t->name2) ? t : match(t->a, t->b, x, y, body2);
      return singleton(tm, match_type(t->a, nil_ty, x, y, cons_ty));
    }
    case TK::Sel: {
      if (!check_rec(g, t->a, trail_type(), s)) {
        throw InferFailure("selection target is not a trail: " + print_term(t->a));
      }
      return singleton(t, trail_type());
    }
    case TK::Unpack: {
      if (!check_rec(g, t->a, trail_type(), s)) {
        throw InferFailure("unpack argument is not a trail: " + print_term(t->a));
      }
      return singleton(t, base(t->base));
    }
    case TK::TrailLit:
      return singleton(t, trail_type());
    case TK::Choose:
      throw InferFailure("choice construct in a core term");
  }
  throw InferFailure("unrecognized term");
}

// Lightweight well-formedness obligations for user annotations: singleton
// terms must check against their underlying, match-type scrutinees must be
// lists.
void require_wf(const Context& g, const TypePtr& ty, Session& s) {
  switch (ty->kind) {
    case YK::Base:
      return;
    case YK::Singleton:
      if (!check_rec(g, ty->term, ty->t1, s)) {
        throw InferFailure("singleton term does not inhabit its underlying type: " +
                           print_type(ty));
      }
      return;
    case YK::Pi:
    case YK::Exists: {
      require_wf(g, ty->t1, s);
      Name x = ty->name;
      TypePtr body = ty->t2;
      if (g.contains(x)) {
        std::set<Name> fv = free_vars(body);
        do {
          x += "'";
        } while (g.contains(x) || fv.count(x));
        body = subst(body, ty->name, var(x));
      }
      require_wf(g.extended(x, ty->t1), body, s);
      return;
    }
    case YK::ConsT:
      require_wf(g, ty->t1, s);
      require_wf(g, ty->t2, s);
      return;
    case YK::MatchT: {
      if (!check_rec(g, ty->term, list(), s)) {
        throw InferFailure("match-type scrutinee is not a list: " + print_type(ty));
      }
      require_wf(g, ty->t1, s);
      Name x = ty->name;
      TypePtr body = ty->t2;
      if (g.contains(x)) {
        std::set<Name> fv = free_vars(body);
        do {
          x += "'";
        } while (g.contains(x) || fv.count(x));
        body = subst(body, ty->name, var(x));
      }
      Context g1 = g.extended(x, top());
      Name y = ty->name2;
      if (g1.contains(y)) {
        std::set<Name> fv = free_vars(body);
        do {
          y += "'";
        } while (g1.contains(y) || fv.count(y));
        body = subst(body, ty->name2, var(y));
      }
      require_wf(g1.extended(y, list()), body, s);
      return;
    }
  }
}

}  // namespace

TypePtr infer(const Context& gamma, const TermPtr& t, Session& s) {
  return infer_rec(gamma, t, s);
}

TypePtr infer(const Context& gamma, const TermPtr& t, long fuel) {
  Session s(fuel);
  return infer(gamma, t, s);
}

bool check(const Context& gamma, const TermPtr& t, const TypePtr& ty, Session& s) {
  return check_rec(gamma, t, ty, s);
}

bool check(const Context& gamma, const TermPtr& t, const TypePtr& ty, long fuel) {
  Session s(fuel);
  return check(gamma, t, ty, s);
}

namespace {

template <typename Body>
void guarded(ItemResult& r, Body body) {
  try {
    body();
  } catch (const OutOfFuel&) {
    r.ok = false;
    r.message = "out of fuel";
  } catch (const InferFailure& e) {
    r.ok = false;
    r.message = e.what();
  } catch (const StuckTerm& e) {
    r.ok = false;
    r.message = e.what();
  }
}

// Shared driver for check/infer over a program file. Definitions are
// always processed in order (each extends the context seen by later
// items); check and eval items are independent of each other, so with
// parallel=true they run concurrently after the sequential pass.
ProgramReport run_program(const SourceFile& file, long fuel, std::uint64_t seed,
                          bool infer_only, bool parallel) {
  ProgramReport rep;
  rep.items.resize(file.items.size());
  Session lowering(std::numeric_limits<long>::max());
  std::set<Name> names;
  for (const SourceItem& item : file.items) {
    if (item.term) all_names(item.term, names);
    if (item.annot) all_names(item.annot, names);
  }
  lowering.reserve(names);
  Name za = lowering.fresh("z");
  Context g = Context().extended(za, trail_type());
  std::vector<std::pair<Name, TermPtr>> surface_defs;
  std::vector<std::function<void()>> jobs;
  int idx = 0;
  for (size_t i = 0; i < file.items.size(); ++i) {
    const SourceItem& item = file.items[i];
    ItemResult& r = rep.items[i];
    r.kind = item.kind;
    r.name = item.name;
    r.line = item.line;
    switch (item.kind) {
      case SourceItem::Kind::Def: {
        Path p(static_cast<size_t>(idx++), 2);
        p.push_back(1);
        guarded(r, [&] {
          TermPtr lowered = lower_term(lowering, sel_path(var(za), p), item.term);
          Session s(fuel);
          TypePtr ty = infer(g, lowered, s);
          g = g.extended(item.name, ty);
          surface_defs.emplace_back(item.name, item.term);
          r.ok = true;
          r.detail = print_type(ty);
        });
        break;
      }
      case SourceItem::Kind::Check: {
        Path p(static_cast<size_t>(idx++), 2);
        p.push_back(1);
        TermPtr lowered;
        TypePtr lty;
        guarded(r, [&] {
          lowered = lower_term(lowering, sel_path(var(za), p), item.term);
          lty = lower_type(lowering, item.annot);
          r.ok = true;
        });
        if (!lowered || !lty) break;
        Context gi = g;
        jobs.push_back([&r, gi, lowered, lty, fuel, infer_only] {
          guarded(r, [&] {
            Session s(fuel);
            if (infer_only) {
              r.ok = true;
              r.detail = print_type(infer(gi, lowered, s));
              return;
            }
            require_wf(gi, lty, s);
            r.ok = check(gi, lowered, lty, s);
            if (!r.ok) r.message = "term does not check against the annotation";
            r.detail = print_type(lty);
          });
        });
        break;
      }
      case SourceItem::Kind::Eval: {
        if (infer_only) {
          r.ok = true;
          r.message = "skipped";
          break;
        }
        TermPtr t = item.term;
        for (auto it = surface_defs.rbegin(); it != surface_defs.rend(); ++it) {
          t = subst(t, it->first, it->second);
        }
        jobs.push_back([&r, t, seed, fuel] {
          guarded(r, [&] {
            SeededChooser ch(seed);
            EvalResult res = eval(t, ch, fuel);
            r.ok = true;
            r.detail = print_term(res.value);
          });
        });
        break;
      }
    }
  }
  if (parallel) {
    std::vector<std::future<void>> fs;
    fs.reserve(jobs.size());
    for (auto& j : jobs) fs.push_back(std::async(std::launch::async, j));
    for (auto& f : fs) f.get();
  } else {
    for (auto& j : jobs) j();
  }
  for (const ItemResult& r : rep.items) rep.all_ok = rep.all_ok && r.ok;
  return rep;
}

}  // namespace

ProgramReport check_annotated_program(const SourceFile& file, long fuel, std::uint64_t seed,
                                      bool parallel) {
  return run_program(file, fuel, seed, false, parallel);
}

ProgramReport infer_annotated_program(const SourceFile& file, long fuel, bool parallel) {
  return run_program(file, fuel, 0, true, parallel);
}

}  // namespace elam
