#include "elam/eval.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "elam/syntax.hpp"

namespace elam {

namespace {

using K = Term::Kind;

Path ext(Path p, int k) {
  p.push_back(k);
  return p;
}

TermPtr random_list(std::mt19937_64& rng, int depth) {
  int n = depth <= 0 ? 0 : static_cast<int>(rng() % 4);
  TermPtr acc = nil();
  for (int i = 0; i < n; ++i) acc = cons(random_list(rng, depth - 1), acc);
  return acc;
}

// Canonical size-ordered-ish enumeration of closed list values: index 0 is
// nil, index n+1 is cons(value(h), value(t)) with (h, t) the Cantor
// unpairing of n, so both components have smaller indices.
TermPtr nth_list_value(size_t n) {
  if (n == 0) return nil();
  size_t z = n - 1;
  size_t w = static_cast<size_t>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  while (w * (w + 1) / 2 > z) --w;
  size_t t = z - w * (w + 1) / 2;
  size_t h = w - t;
  return cons(nth_list_value(h), nth_list_value(t));
}

}  // namespace

TermPtr SeededChooser::choose_value(BaseType) {
  // Closed first-order values only; a nested list inhabits both Top and List.
  return random_list(rng_, max_depth_);
}

TermPtr ScriptedChooser::choose_value(BaseType) {
  if (next_ >= values_.size()) throw std::out_of_range("choice script exhausted");
  return values_[next_++];
}

TermPtr EnumeratingChooser::choose_value(BaseType) { return nth_list_value(cursor_++); }

namespace {

struct Annotator {
  std::uint64_t next_frame = 1;

  TermPtr go(const TermPtr& t, bool absolute, std::uint64_t frame, const Path& p) {
    switch (t->kind) {
      case K::Var:
      case K::Nil:
      case K::TrailLit:
        return t;
      case K::Choose: {
        auto m = std::make_shared<Term>(*t);
        m->site = Site{absolute, frame, p};
        return m;
      }
      case K::Abs: {
        std::uint64_t f = next_frame++;
        auto m = std::make_shared<Term>(*t);
        m->a = go(t->a, false, f, {});
        m->frame_id = f;
        return m;
      }
      case K::App: {
        auto m = std::make_shared<Term>(*t);
        m->a = go(t->a, absolute, frame, ext(p, 1));
        m->b = go(t->b, absolute, frame, ext(p, 2));
        m->site = Site{absolute, frame, p};
        return m;
      }
      case K::Cons: {
        auto m = std::make_shared<Term>(*t);
        m->a = go(t->a, absolute, frame, ext(p, 1));
        m->b = go(t->b, absolute, frame, ext(p, 2));
        return m;
      }
      case K::Match: {
        auto m = std::make_shared<Term>(*t);
        m->a = go(t->a, absolute, frame, ext(p, 1));
        m->b = go(t->b, absolute, frame, ext(p, 2));
        m->c = go(t->c, absolute, frame, ext(p, 3));
        return m;
      }
      case K::Fix: {
        auto m = std::make_shared<Term>(*t);
        m->a = go(t->a, absolute, frame, ext(p, 1));
        m->b = go(t->b, absolute, frame, ext(p, 2));
        return m;
      }
      case K::Sel:
      case K::Unpack: {
        auto m = std::make_shared<Term>(*t);
        m->a = go(t->a, absolute, frame, p);
        return m;
      }
    }
    return t;
  }
};

TermPtr reroot_rec(const TermPtr& t, std::uint64_t frame, const Path& root, bool& changed) {
  switch (t->kind) {
    case K::Var:
    case K::Nil:
    case K::TrailLit:
      return t;
    case K::Choose: {
      if (t->site && !t->site->absolute && t->site->frame == frame) {
        auto m = std::make_shared<Term>(*t);
        Path abs_path = root;
        abs_path.insert(abs_path.end(), t->site->path.begin(), t->site->path.end());
        m->site = Site{true, 0, std::move(abs_path)};
        changed = true;
        return m;
      }
      return t;
    }
    default: {
      bool ch = false;
      TermPtr a = t->a ? reroot_rec(t->a, frame, root, ch) : t->a;
      TermPtr b = t->b ? reroot_rec(t->b, frame, root, ch) : t->b;
      TermPtr c = t->c ? reroot_rec(t->c, frame, root, ch) : t->c;
      bool site_hit = t->kind == K::App && t->site && !t->site->absolute && t->site->frame == frame;
      if (!ch && !site_hit) return t;
      changed = true;
      auto m = std::make_shared<Term>(*t);
      m->a = a;
      m->b = b;
      m->c = c;
      if (site_hit) {
        Path abs_path = root;
        abs_path.insert(abs_path.end(), t->site->path.begin(), t->site->path.end());
        m->site = Site{true, 0, std::move(abs_path)};
      }
      return m;
    }
  }
}

}  // namespace

TermPtr annotate_sites(const TermPtr& t) {
  Annotator a;
  return a.go(t, true, 0, {});
}

TermPtr reroot(const TermPtr& t, std::uint64_t frame, const Path& root) {
  bool changed = false;
  return reroot_rec(t, frame, root, changed);
}

bool is_value(const TermPtr& t) {
  switch (t->kind) {
    case K::Var:
    case K::Nil:
    case K::Abs:
    case K::TrailLit:
      return true;
    case K::Cons:
      return is_value(t->a) && is_value(t->b);
    case K::Sel:
    case K::Unpack:
      return t->a->kind != K::TrailLit && is_value(t->a);
    default:
      return false;
  }
}

namespace {

std::optional<TermPtr> find_logged(const ChoiceLog* prior, const Path& p) {
  if (!prior) return std::nullopt;
  for (const auto& e : prior->entries) {
    if (e.path == p) return e.value;
  }
  return std::nullopt;
}

Path site_path(const TermPtr& t) {
  if (t->site && t->site->absolute) return t->site->path;
  return {};
}

// Precondition: t is not a value.
StepResult reduce_one(const TermPtr& t, Chooser& chooser, const ChoiceLog* prior) {
  auto in_ctx = [&](const TermPtr& sub, auto rebuild) -> StepResult {
    StepResult r = reduce_one(sub, chooser, prior);
    return {rebuild(r.term), r.logged};
  };
  switch (t->kind) {
    case K::Cons: {
      if (!is_value(t->a)) {
        return in_ctx(t->a, [&](const TermPtr& a) {
          auto m = std::make_shared<Term>(*t);
          m->a = a;
          return m;
        });
      }
      return in_ctx(t->b, [&](const TermPtr& b) {
        auto m = std::make_shared<Term>(*t);
        m->b = b;
        return m;
      });
    }
    case K::App: {
      if (!is_value(t->a)) {
        return in_ctx(t->a, [&](const TermPtr& a) {
          auto m = std::make_shared<Term>(*t);
          m->a = a;
          return m;
        });
      }
      if (!is_value(t->b)) {
        return in_ctx(t->b, [&](const TermPtr& b) {
          auto m = std::make_shared<Term>(*t);
          m->b = b;
          return m;
        });
      }
      if (t->a->kind != K::Abs) throw StuckTerm(t, "application of a non-function value");
      const TermPtr& fn = t->a;
      TermPtr body = reroot(fn->a, fn->frame_id, ext(site_path(t), 3));
      return {subst(body, fn->name, t->b), std::nullopt};
    }
    case K::Match: {
      if (!is_value(t->a)) {
        return in_ctx(t->a, [&](const TermPtr& a) {
          auto m = std::make_shared<Term>(*t);
          m->a = a;
          return m;
        });
      }
      if (t->a->kind == K::Nil) return {t->b, std::nullopt};
      if (t->a->kind == K::Cons) {
        TermPtr r = subst(subst(t->c, t->name, t->a->a), t->name2, t->a->b);
        return {r, std::nullopt};
      }
      throw StuckTerm(t, "match on a non-list value");
    }
    case K::Fix: {
      if (t->bound == 0) return {t->b, std::nullopt};
      TermPtr smaller = fixpoint(t->bound - 1, t->name, t->annot, t->a, t->b);
      return {subst(t->a, t->name, smaller), std::nullopt};
    }
    case K::Choose: {
      Path p = site_path(t);
      if (auto v = find_logged(prior, p)) return {*v, std::nullopt};
      TermPtr v = chooser.choose_value(t->base);
      return {v, ChoiceEntry{p, v, t->base}};
    }
    case K::Sel: {
      if (t->a->kind == K::TrailLit) {
        return {trail_lit(select(t->a->trail, {t->sel})), std::nullopt};
      }
      return in_ctx(t->a, [&](const TermPtr& a) { return sel(a, t->sel); });
    }
    case K::Unpack: {
      if (t->a->kind == K::TrailLit) {
        return {unpack_value(t->base, t->a->trail), std::nullopt};
      }
      return in_ctx(t->a, [&](const TermPtr& a) { return unpack(t->base, a); });
    }
    default:
      throw StuckTerm(t, "no applicable rule");
  }
}

struct BigEval {
  Chooser& chooser;
  long fuel;
  ChoiceLog log;
  std::map<Path, TermPtr> chosen;

  void burn() {
    if (--fuel < 0) throw OutOfFuel();
  }

  TermPtr go(const TermPtr& t) {
    switch (t->kind) {
      case K::Var:
      case K::Nil:
      case K::Abs:
      case K::TrailLit:
        return t;
      case K::Cons: {
        TermPtr a = go(t->a);
        TermPtr b = go(t->b);
        if (a == t->a && b == t->b) return t;
        return cons(a, b);
      }
      case K::App: {
        TermPtr fn = go(t->a);
        TermPtr arg = go(t->b);
        burn();
        if (fn->kind != K::Abs) throw StuckTerm(t, "application of a non-function value");
        TermPtr body = reroot(fn->a, fn->frame_id, ext(site_path(t), 3));
        return go(subst(body, fn->name, arg));
      }
      case K::Match: {
        TermPtr s = go(t->a);
        burn();
        if (s->kind == K::Nil) return go(t->b);
        if (s->kind == K::Cons) {
          return go(subst(subst(t->c, t->name, s->a), t->name2, s->b));
        }
        throw StuckTerm(t, "match on a non-list value");
      }
      case K::Fix: {
        burn();
        if (t->bound == 0) return go(t->b);
        TermPtr smaller = fixpoint(t->bound - 1, t->name, t->annot, t->a, t->b);
        return go(subst(t->a, t->name, smaller));
      }
      case K::Choose: {
        if (t->site && !t->site->absolute) {
          throw StuckTerm(t, "choice construct outside an applied frame");
        }
        Path p = site_path(t);
        burn();
        auto it = chosen.find(p);
        if (it != chosen.end()) return it->second;
        TermPtr v = chooser.choose_value(t->base);
        chosen.emplace(p, v);
        log.entries.push_back(ChoiceEntry{p, v, t->base});
        return v;
      }
      case K::Sel: {
        TermPtr a = go(t->a);
        if (a->kind == K::TrailLit) {
          burn();
          return trail_lit(select(a->trail, {t->sel}));
        }
        if (a == t->a) return t;
        return sel(a, t->sel);
      }
      case K::Unpack: {
        TermPtr a = go(t->a);
        if (a->kind == K::TrailLit) {
          burn();
          return unpack_value(t->base, a->trail);
        }
        if (a == t->a) return t;
        return unpack(t->base, a);
      }
    }
    throw StuckTerm(t, "no applicable rule");
  }
};

struct RefusingChooser : Chooser {
  TermPtr choose_value(BaseType) override {
    throw std::logic_error("choice construct in deterministic core evaluation");
  }
};

}  // namespace

std::optional<StepResult> step(const TermPtr& t, Chooser& chooser, const ChoiceLog* prior) {
  if (is_value(t)) return std::nullopt;
  return reduce_one(t, chooser, prior);
}

EvalResult eval(const TermPtr& t, Chooser& chooser, long fuel) {
  BigEval be{chooser, fuel, {}, {}};
  TermPtr v = be.go(annotate_sites(t));
  return {v, std::move(be.log)};
}

TermPtr eval_core(const TermPtr& t, long fuel) {
  RefusingChooser rc;
  BigEval be{rc, fuel, {}, {}};
  return be.go(t);
}

}  // namespace elam
