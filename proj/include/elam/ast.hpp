#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace elam {

enum class BaseType { Top, List, Trail };

using Name = std::string;

// A selection path over {1,2,3}, navigating into a trail.
using Path = std::vector<int>;

struct Term;
struct Type;
struct TrailTree;

using TermPtr = std::shared_ptr<const Term>;
using TypePtr = std::shared_ptr<const Type>;
using TrailPtr = std::shared_ptr<const TrailTree>;

// Ternary tree of tagged values; one run's non-deterministic choices.
struct TrailTree {
  enum class Kind { Empty, Leaf, Node };
  Kind kind = Kind::Empty;
  BaseType tag = BaseType::Top;  // Leaf
  TermPtr value;                 // Leaf: closed value inhabiting tag
  TrailPtr c1, c2, c3;           // Node
};

// Choice-site annotation used by the instrumented evaluator. A site is a
// selection path relative to a lambda frame; the global frame is absolute.
struct Site {
  bool absolute = false;
  std::uint64_t frame = 0;  // meaningful when !absolute
  Path path;
};

// Lazily computed per-node cache. Copying a node drops the cached value:
// the only reason to copy an (otherwise shared, immutable) node is to
// mutate the copy, which would invalidate it.
template <typename T>
struct CacheSlot {
  mutable std::shared_ptr<const T> ptr;
  CacheSlot() = default;
  CacheSlot(const CacheSlot&) noexcept {}
  CacheSlot& operator=(const CacheSlot&) noexcept { return *this; }
};

struct Term {
  enum class Kind { Var, Abs, App, Nil, Cons, Match, Fix, Choose, Sel, Unpack, TrailLit };
  Kind kind;

  Name name;    // Var; Abs binder; Match head binder
  Name name2;   // Match tail binder
  TypePtr annot;  // Abs, Fix
  TermPtr a, b, c;
  // children: Abs body=a; App fn=a arg=b; Cons head=a tail=b;
  // Match scrutinee=a nilCase=b consCase=c; Fix body=a default=b;
  // Sel target=a; Unpack arg=a
  long bound = 0;               // Fix recursion bound
  BaseType base = BaseType::Top;  // Choose, Unpack
  int sel = 0;                  // Sel index, one of 1..3
  TrailPtr trail;               // TrailLit

  // Instrumentation (evaluator only; ignored by alpha_eq and printing).
  std::optional<Site> site;     // Choose, App
  std::uint64_t frame_id = 0;   // Abs

  // Free-variable set, filled on first use (see free_vars/subst).
  CacheSlot<std::set<Name>> fv_cache;
};

struct Type {
  enum class Kind { Base, Singleton, Pi, ConsT, MatchT, Exists };
  Kind kind;

  BaseType base = BaseType::Top;  // Base
  TermPtr term;  // Singleton term; MatchT scrutinee
  TypePtr t1, t2;
  // Singleton underlying=t1; Pi domain=t1 codomain=t2; ConsT head=t1 tail=t2;
  // MatchT nilType=t1 consType=t2; Exists domain=t1 body=t2
  Name name;   // Pi/Exists binder; MatchT head binder
  Name name2;  // MatchT tail binder

  // Free-variable set, filled on first use (see free_vars/subst).
  CacheSlot<std::set<Name>> fv_cache;
};

// --- term constructors ---
TermPtr var(Name x);
TermPtr abs(Name x, TypePtr annot, TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr nil();
TermPtr cons(TermPtr head, TermPtr tail);
TermPtr match(TermPtr scrutinee, TermPtr nil_case, Name hd, Name tl, TermPtr cons_case);
TermPtr fixpoint(long bound, Name x, TypePtr annot, TermPtr body, TermPtr dflt);
TermPtr choose(BaseType b);
TermPtr sel(TermPtr target, int k);
TermPtr sel_path(TermPtr target, const Path& p);
TermPtr unpack(BaseType b, TermPtr arg);
TermPtr trail_lit(TrailPtr t);

// --- type constructors ---
TypePtr base(BaseType b);
TypePtr top();
TypePtr list();
TypePtr trail_type();
// Collapses a nested singleton: the outer term is kept, the underlying is
// taken from the innermost (non-singleton) level.
TypePtr singleton(TermPtr t, TypePtr underlying);
TypePtr pi(Name x, TypePtr domain, TypePtr codomain);
TypePtr cons_type(TypePtr head, TypePtr tail);
TypePtr match_type(TermPtr scrutinee, TypePtr nil_type, Name hd, Name tl, TypePtr cons_type);
TypePtr exists(Name x, TypePtr domain, TypePtr body);

// --- trail constructors ---
TrailPtr trail_empty();
TrailPtr trail_leaf(BaseType tag, TermPtr value);
TrailPtr trail_node(TrailPtr c1, TrailPtr c2, TrailPtr c3);

inline bool is_base(const TypePtr& t, BaseType b) {
  return t->kind == Type::Kind::Base && t->base == b;
}

}  // namespace elam
