#include "doctest.h"
#include "elam/frontend.hpp"
#include "elam/syntax.hpp"
#include "generators.hpp"

using namespace elam;

TEST_SUITE("syntax") {

TEST_CASE("free variables respect binders") {
  TermPtr t = abs("x", top(), app(var("x"), var("y")));
  auto fv = free_vars(t);
  CHECK(fv == std::set<Name>{"y"});

  TermPtr m = match(var("l"), var("n"), "h", "t", cons(var("h"), var("t")));
  CHECK(free_vars(m) == std::set<Name>{"l", "n"});

  TermPtr f = fixpoint(2, "f", list(), app(var("f"), var("a")), var("b"));
  CHECK(free_vars(f) == std::set<Name>{"a", "b"});
}

TEST_CASE("free variables of types") {
  TypePtr ty = exists("x", top(), singleton(cons(var("x"), var("y")), list()));
  CHECK(free_vars(ty) == std::set<Name>{"y"});
  TypePtr p = pi("x", singleton(var("x"), top()), singleton(var("x"), top()));
  // The domain's x is free; the codomain's x is bound.
  CHECK(free_vars(p) == std::set<Name>{"x"});
}

TEST_CASE("substitution replaces free occurrences only") {
  TermPtr t = app(var("x"), abs("x", top(), var("x")));
  TermPtr r = subst(t, "x", nil());
  CHECK(print_term(r) == "nil (\\(x: Top) => x)");
}

TEST_CASE("substitution avoids capture") {
  // [x := y] (\y => cons x y) must rename the binder.
  TermPtr t = abs("y", top(), cons(var("x"), var("y")));
  TermPtr r = subst(t, "x", var("y"));
  CHECK(r->kind == Term::Kind::Abs);
  CHECK(r->name != "y");
  CHECK(alpha_eq(r, abs("w", top(), cons(var("y"), var("w")))));
}

TEST_CASE("substitution in types avoids capture") {
  TypePtr ty = exists("y", top(), singleton(cons(var("x"), var("y")), list()));
  TypePtr r = subst(ty, "x", var("y"));
  CHECK(alpha_eq(r, exists("w", top(), singleton(cons(var("y"), var("w")), list()))));
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(abs("x", top(), var("x")), abs("y", top(), var("y"))));
  CHECK_FALSE(alpha_eq(abs("x", top(), var("x")), abs("x", top(), var("z"))));
  CHECK(alpha_eq(match(nil(), nil(), "a", "b", cons(var("a"), var("b"))),
                 match(nil(), nil(), "c", "d", cons(var("c"), var("d")))));
  // Shadowing: inner binder wins.
  CHECK(alpha_eq(abs("x", top(), abs("x", top(), var("x"))),
                 abs("a", top(), abs("b", top(), var("b")))));
  CHECK_FALSE(alpha_eq(abs("x", top(), abs("x", top(), var("x"))),
                       abs("a", top(), abs("b", top(), var("a")))));
}

TEST_CASE("alpha equivalence ignores instrumentation") {
  TermPtr a = choose(BaseType::Top);
  auto b = std::make_shared<Term>(*a);
  b->site = Site{true, 0, {1, 2}};
  CHECK(alpha_eq(a, TermPtr(b)));
}

TEST_CASE("singleton collapses nesting") {
  TypePtr inner = singleton(nil(), list());
  TypePtr outer = singleton(var("x"), inner);
  CHECK(outer->kind == Type::Kind::Singleton);
  CHECK(outer->term->kind == Term::Kind::Var);
  CHECK(is_base(outer->t1, BaseType::List));
}

TEST_CASE("dialects") {
  CHECK(check_dialect(choose(BaseType::Top), Dialect::Surface));
  CHECK_FALSE(check_dialect(choose(BaseType::Top), Dialect::Core));
  CHECK(check_dialect(unpack(BaseType::List, sel(var("z"), 1)), Dialect::Core));
  CHECK_FALSE(check_dialect(unpack(BaseType::List, var("z")), Dialect::Surface));
  CHECK_FALSE(check_dialect(trail_type(), Dialect::Surface));
  CHECK(check_dialect(trail_type(), Dialect::Core));
}

TEST_CASE("substitution round trips on generated terms") {
  testgen::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    TermPtr t = g.core_list(3);
    // Substituting a variable that is not free is the identity.
    CHECK(subst(t, "zzfresh", nil()).get() == t.get());
    // Renaming forth and back is alpha-invariant.
    TermPtr renamed = subst(t, "mx", var("zzfresh"));
    CHECK(alpha_eq(subst(renamed, "zzfresh", var("mx")), t));
  }
}

TEST_CASE("context extension and lookup") {
  Context g;
  CHECK_FALSE(g.contains("x"));
  Context g2 = g.extended("x", list());
  CHECK(g2.contains("x"));
  CHECK(is_base(*g2.lookup("x"), BaseType::List));
  CHECK_FALSE(g.contains("x"));
}

}  // TEST_SUITE
