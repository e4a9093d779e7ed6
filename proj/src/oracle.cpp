#include "elam/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "elam/betadelta.hpp"
#include "elam/eval.hpp"
#include "elam/frontend.hpp"

namespace elam {

namespace {

using TK = Term::Kind;
using YK = Type::Kind;

// All list values with exactly c cons constructors.
const std::vector<TermPtr>& lists_with_cons(int c) {
  static std::map<int, std::vector<TermPtr>> memo;
  auto it = memo.find(c);
  if (it != memo.end()) return it->second;
  std::vector<TermPtr> out;
  if (c == 0) {
    out.push_back(nil());
  } else {
    for (int a = 0; a <= c - 1; ++a) {
      int bcount = c - 1 - a;
      for (const TermPtr& h : lists_with_cons(a)) {
        for (const TermPtr& t : lists_with_cons(bcount)) {
          out.push_back(cons(h, t));
        }
      }
    }
  }
  return memo.emplace(c, std::move(out)).first->second;
}

std::vector<TermPtr> list_values(int max_size) {
  std::vector<TermPtr> out;
  for (int c = 0; c + 1 <= max_size; ++c) {
    const auto& vs = lists_with_cons(c);
    out.insert(out.end(), vs.begin(), vs.end());
  }
  return out;
}

int trail_size(const TrailPtr& t) {
  switch (t->kind) {
    case TrailTree::Kind::Empty:
      return 1;
    case TrailTree::Kind::Leaf:
      return 1 + value_size(t->value);
    case TrailTree::Kind::Node:
      return 1 + trail_size(t->c1) + trail_size(t->c2) + trail_size(t->c3);
  }
  return 1;
}

// All trails of total size <= s, smallest sizes first.
std::vector<TrailPtr> trails_up_to(int s, const EnumBudget& b) {
  std::vector<TrailPtr> out;
  if (s < 1) return out;
  out.push_back(trail_empty());
  for (const TermPtr& v : list_values(std::min(b.maxValueSize, s - 1))) {
    out.push_back(trail_leaf(BaseType::Top, v));
    out.push_back(trail_leaf(BaseType::List, v));
  }
  if (s >= 4) {
    std::vector<TrailPtr> smaller = trails_up_to(s - 3, b);
    for (const TrailPtr& c1 : smaller) {
      int s1 = trail_size(c1);
      for (const TrailPtr& c2 : smaller) {
        int s2 = trail_size(c2);
        if (1 + s1 + s2 + 1 > s) continue;
        for (const TrailPtr& c3 : smaller) {
          if (1 + s1 + s2 + trail_size(c3) > s) continue;
          out.push_back(trail_node(c1, c2, c3));
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TrailPtr& a, const TrailPtr& b2) {
                     return trail_size(a) < trail_size(b2);
                   });
  return out;
}

struct Enumerator {
  const EnumBudget& b;
  std::vector<TermPtr> out;
  std::set<std::string> seen;
  bool truncated = false;

  void add(const TermPtr& v) {
    if (static_cast<int>(out.size()) >= b.maxExistsWidth) {
      truncated = true;
      return;
    }
    if (seen.insert(print_term(v)).second) out.push_back(v);
  }

  void run(const TypePtr& ty) {
    switch (ty->kind) {
      case YK::Base:
        switch (ty->base) {
          case BaseType::Top:
          case BaseType::List:
            for (const TermPtr& v : list_values(b.maxValueSize)) add(v);
            return;
          case BaseType::Trail:
            for (const TrailPtr& t : trails_up_to(b.maxTrailSize, b)) add(trail_lit(t));
            return;
        }
        return;
      case YK::Singleton: {
        TermPtr nf;
        try {
          nf = bd_reduce(Context(), ty->term, b.fuel);
        } catch (const OutOfFuel&) {
          throw NotEnumerable("singleton term does not reduce within budget");
        }
        if (!is_value(nf) || !first_order_value(nf)) {
          throw NotEnumerable("singleton term has no first-order normal form");
        }
        if (member(nf, ty->t1, b) != Tri::False) add(nf);
        return;
      }
      case YK::Pi:
        throw NotEnumerable("function type");
      case YK::ConsT: {
        Enumerator heads{b, {}, {}, false};
        heads.run(ty->t1);
        Enumerator tails{b, {}, {}, false};
        tails.run(ty->t2);
        truncated = truncated || heads.truncated || tails.truncated;
        for (const TermPtr& h : heads.out) {
          for (const TermPtr& t : tails.out) {
            TermPtr v = cons(h, t);
            if (value_size(v) <= b.maxValueSize) {
              add(v);
            } else {
              truncated = true;
            }
          }
        }
        return;
      }
      case YK::MatchT: {
        TermPtr sc;
        try {
          sc = bd_reduce(Context(), ty->term, b.fuel);
        } catch (const OutOfFuel&) {
          throw NotEnumerable("match scrutinee does not reduce within budget");
        }
        if (sc->kind == TK::Nil) {
          run(ty->t1);
          return;
        }
        if (sc->kind == TK::Cons && is_value(sc)) {
          TypePtr body = subst(ty->t2, ty->name, sc->a);
          body = subst(body, ty->name2, sc->b);
          run(body);
          return;
        }
        throw NotEnumerable("match scrutinee is not a closed list value");
      }
      case YK::Exists: {
        Enumerator doms{b, {}, {}, false};
        doms.run(ty->t1);
        truncated = truncated || doms.truncated;
        for (const TermPtr& w : doms.out) {
          Enumerator inner{b, {}, {}, false};
          inner.run(subst(ty->t2, ty->name, w));
          truncated = truncated || inner.truncated;
          for (const TermPtr& v : inner.out) add(v);
        }
        return;
      }
    }
  }
};

}  // namespace

int value_size(const TermPtr& v) {
  switch (v->kind) {
    case TK::Cons:
      // One more than the number of cons constructors: nested nils are free.
      return value_size(v->a) + value_size(v->b);
    default:
      return 1;
  }
}

bool first_order_value(const TermPtr& v) {
  switch (v->kind) {
    case TK::Nil:
      return true;
    case TK::Cons:
      return first_order_value(v->a) && first_order_value(v->b);
    case TK::TrailLit:
      return true;
    default:
      return false;
  }
}

std::vector<TermPtr> enumerate_type(const TypePtr& ty, const EnumBudget& b) {
  Enumerator e{b, {}, {}, false};
  e.run(ty);
  return std::move(e.out);
}

Tri member(const TermPtr& v, const TypePtr& ty, const EnumBudget& b) {
  switch (ty->kind) {
    case YK::Base:
      switch (ty->base) {
        case BaseType::Top:
          return Tri::True;
        case BaseType::List: {
          TermPtr cur = v;
          while (cur->kind == TK::Cons) cur = cur->b;
          return cur->kind == TK::Nil ? Tri::True : Tri::False;
        }
        case BaseType::Trail:
          return v->kind == TK::TrailLit ? Tri::True : Tri::False;
      }
      return Tri::Undecided;
    case YK::Singleton: {
      TermPtr nf;
      try {
        nf = bd_reduce(Context(), ty->term, b.fuel);
      } catch (const OutOfFuel&) {
        return Tri::Undecided;
      }
      if (!is_value(nf) || !first_order_value(nf) || !first_order_value(v)) {
        return Tri::Undecided;
      }
      if (!alpha_eq(v, nf)) return Tri::False;
      return tri_and(Tri::True, member(v, ty->t1, b));
    }
    case YK::Pi:
      // Enumeration cannot inspect a function's graph, so a function value
      // is never confirmed, only non-functions refuted.
      return v->kind == TK::Abs ? Tri::Undecided : Tri::False;
    case YK::ConsT: {
      if (v->kind != TK::Cons) return Tri::False;
      return tri_and(member(v->a, ty->t1, b), member(v->b, ty->t2, b));
    }
    case YK::MatchT: {
      TermPtr sc;
      try {
        sc = bd_reduce(Context(), ty->term, b.fuel);
      } catch (const OutOfFuel&) {
        return Tri::Undecided;
      }
      if (sc->kind == TK::Nil) return member(v, ty->t1, b);
      if (sc->kind == TK::Cons && is_value(sc)) {
        TypePtr body = subst(ty->t2, ty->name, sc->a);
        body = subst(body, ty->name2, sc->b);
        return member(v, body, b);
      }
      return Tri::Undecided;
    }
    case YK::Exists: {
      Enumerator doms{b, {}, {}, false};
      try {
        doms.run(ty->t1);
      } catch (const NotEnumerable&) {
        return Tri::Undecided;
      }
      bool undecided = doms.truncated;
      for (const TermPtr& w : doms.out) {
        Tri r = member(v, subst(ty->t2, ty->name, w), b);
        if (r == Tri::True) return Tri::True;
        if (r == Tri::Undecided) undecided = true;
      }
      return undecided ? Tri::Undecided : Tri::False;
    }
  }
  return Tri::Undecided;
}

}  // namespace elam
