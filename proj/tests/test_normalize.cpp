#include "doctest.h"
#include "elam/frontend.hpp"
#include "elam/lower.hpp"
#include "elam/normalize.hpp"
#include "generators.hpp"

using namespace elam;

TEST_SUITE("normalize") {

TEST_CASE("singleton terms reduce and the bound tightens") {
  // x is bound to the singleton of nil, so { x : Top } normalizes to the
  // sharper { nil : List }.
  Context g = Context().extended("x", singleton(nil(), list()));
  TypePtr n = normalize(g, parse_type("{ x : Top }"), 10000);
  CHECK(print_type(n) == "{ nil : List }");
}

TEST_CASE("match types resolve on reduced scrutinees") {
  TypePtr n1 = normalize(Context(), parse_type("Match nil { nil => Top ; cons x xs => List }"),
                         10000);
  CHECK(print_type(n1) == "Top");
  TypePtr n2 = normalize(
      Context(), parse_type("Match cons nil (cons nil nil) { nil => Top ; cons x xs => { xs : List } }"),
      10000);
  // Re-inference sharpens the underlying bound to the constructor form.
  CHECK(print_type(n2) == "{ cons nil nil : Cons { nil : List } { nil : List } }");
  // A stuck scrutinee leaves the match type in place.
  TypePtr n3 = normalize(Context(), parse_type("Match l { nil => Top ; cons x xs => List }"),
                         10000);
  CHECK(n3->kind == Type::Kind::MatchT);
}

TEST_CASE("vacuous existentials are dropped") {
  TypePtr n = normalize(Context(), parse_type("exists(x: Top) => { nil : List }"), 10000);
  CHECK(print_type(n) == "{ nil : List }");
  // A used binder survives.
  TypePtr k = normalize(Context(), parse_type("exists(x: Top) => { cons x nil : List }"), 10000);
  CHECK(k->kind == Type::Kind::Exists);
}

TEST_CASE("normalization is idempotent on generated types") {
  testgen::Gen g(79);
  for (int i = 0; i < 300; ++i) {
    TypePtr ty = g.type(3);
    TypePtr n1 = normalize(Context(), ty, 1000000);
    TypePtr n2 = normalize(Context(), n1, 1000000);
    CHECK(alpha_eq(n1, n2));
  }
}

TEST_CASE("trails_of collects maximal selection chains") {
  TypePtr ty = parse_type(
      "exists(z: Trail) => { cons (unpack[Top](z.1)) (unpack[List](z.2.3)) : List }");
  auto ps = trails_of("z", ty->t2);
  CHECK(ps == std::set<Path>{{1}, {2, 3}});
  // The binder occurrence at the root counts as the empty path; shadowed
  // occurrences do not count.
  TypePtr ty2 = parse_type("{ cons z (unpack[Top]((\\(z: Trail) => z.1) w)) : List }");
  CHECK(trails_of("z", ty2) == std::set<Path>{{}});
}

TEST_CASE("untangling splits a trail existential per used selection") {
  Session s(100000);
  TypePtr ty = parse_type(
      "exists(z: Trail) => { cons (unpack[Top](z.1)) (cons (unpack[List](z.2)) nil) : List }");
  TypePtr u = untangle(ty, s);
  CHECK(alpha_eq(u, parse_type(
                        "exists(a: Top) => exists(b: List) => { cons a (cons b nil) : List }")));
}

TEST_CASE("selections not consumed by unpack stay trail-typed") {
  Session s(100000);
  TypePtr ty = parse_type("exists(z: Trail) => { cons (unpack[Top](z.1)) z.2 : List }");
  TypePtr u = untangle(ty, s);
  REQUIRE(u->kind == Type::Kind::Exists);
  bool saw_trail = false, saw_top = false;
  for (TypePtr c = u; c->kind == Type::Kind::Exists; c = c->t2) {
    saw_trail |= is_base(c->t1, BaseType::Trail);
    saw_top |= is_base(c->t1, BaseType::Top);
  }
  CHECK(saw_trail);
  CHECK(saw_top);
}

TEST_CASE("non-trail existentials are untouched by untangling") {
  Session s(100000);
  TypePtr ty = parse_type("exists(x: Top) => { cons x nil : List }");
  CHECK(alpha_eq(untangle(ty, s), ty));
}

TEST_CASE("untangling is idempotent on generated tangled types") {
  testgen::Gen g(83);
  for (int i = 0; i < 300; ++i) {
    int paths = 0;
    TypePtr ty = g.tangled(paths);
    Session s1(1000000), s2(1000000);
    TypePtr u1 = untangle(ty, s1);
    TypePtr u2 = untangle(u1, s2);
    CHECK(alpha_eq(u1, u2));
  }
}

TEST_CASE("untangling the lowering of a choice-annotated singleton") {
  Session ls(100000), us(100000);
  TypePtr low = lower_type(ls, parse_type("{ cons choose[Top] choose[List] : List }"));
  TypePtr u = untangle(low, us);
  CHECK(alpha_eq(u, parse_type("exists(a: Top) => exists(b: List) => { cons a b : List }")));
}

}  // TEST_SUITE
