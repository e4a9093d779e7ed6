#include <algorithm>

#include "doctest.h"
#include "elam/frontend.hpp"
#include "elam/oracle.hpp"
#include "generators.hpp"

using namespace elam;

TEST_SUITE("oracle") {

TEST_CASE("value sizes count leaves") {
  CHECK(value_size(nil()) == 1);
  CHECK(value_size(cons(nil(), nil())) == 2);
  CHECK(value_size(cons(cons(nil(), nil()), nil())) == 3);
  CHECK(first_order_value(cons(nil(), nil())));
  CHECK_FALSE(first_order_value(abs("x", top(), var("x"))));
}

TEST_CASE("list enumeration counts match the closed formula") {
  // A closed list value with n nil leaves is a binary tree with n - 1
  // internal nodes: Catalan(n - 1) many. Size <= 4 admits n in 1..4,
  // giving 1 + 1 + 2 + 5 = 9 values.
  EnumBudget b;
  b.maxValueSize = 4;
  auto vs = enumerate_type(list(), b);
  CHECK(vs.size() == 9);
  b.maxValueSize = 2;
  CHECK(enumerate_type(list(), b).size() == 2);
  b.maxValueSize = 5;  // + Catalan(4) = 14
  CHECK(enumerate_type(list(), b).size() == 23);
  // Top denotes the same first-order values.
  CHECK(enumerate_type(top(), b).size() == 23);
  // All enumerated values are distinct.
  b.maxValueSize = 4;
  vs = enumerate_type(list(), b);
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j) CHECK_FALSE(alpha_eq(vs[i], vs[j]));
}

TEST_CASE("function types are not enumerable") {
  EnumBudget b;
  CHECK_THROWS_AS(enumerate_type(parse_type("Pi(x: List) => List"), b), NotEnumerable);
}

TEST_CASE("membership in base and singleton types") {
  EnumBudget b;
  CHECK(member(nil(), list(), b) == Tri::True);
  CHECK(member(abs("x", top(), var("x")), list(), b) == Tri::False);
  CHECK(member(nil(), parse_type("{ nil : List }"), b) == Tri::True);
  CHECK(member(cons(nil(), nil()), parse_type("{ nil : List }"), b) == Tri::False);
  // The singleton term reduces before comparison.
  CHECK(member(nil(), parse_type("{ (\\(x: List) => x) nil : List }"), b) == Tri::True);
  // Functions against function types are undecided, not false.
  CHECK(member(abs("x", list(), var("x")), parse_type("Pi(x: List) => List"), b) ==
        Tri::Undecided);
}

TEST_CASE("membership in constructor and match types") {
  EnumBudget b;
  CHECK(member(cons(nil(), nil()), parse_type("Cons { nil : List } List"), b) == Tri::True);
  CHECK(member(cons(cons(nil(), nil()), nil()), parse_type("Cons { nil : List } List"), b) ==
        Tri::False);
  CHECK(member(nil(), parse_type("Cons Top Top"), b) == Tri::False);
  CHECK(member(nil(), parse_type("Match nil { nil => { nil : List } ; cons x xs => Top }"),
               b) == Tri::True);
  CHECK(member(nil(), parse_type("Match cons nil nil { nil => Top ; cons x xs => { x : List } }"),
               b) == Tri::True);
}

TEST_CASE("membership in existential types searches for witnesses") {
  EnumBudget b;
  CHECK(member(cons(nil(), nil()), parse_type("exists(x: List) => { cons x nil : List }"), b) ==
        Tri::True);
  CHECK(member(cons(nil(), cons(nil(), nil())),
               parse_type("exists(x: List) => { cons x nil : List }"), b) == Tri::False);
  CHECK(member(nil(), parse_type("exists(x: Top) => { x : Top }"), b) == Tri::True);
  // Trail-typed existentials quantify over trails.
  CHECK(member(cons(nil(), nil()),
               parse_type("exists(z: Trail) => { cons (unpack[Top](z.1)) nil : List }"),
               b) == Tri::True);
}

TEST_CASE("enumeration and membership agree on first-order types") {
  testgen::Gen g(109);
  EnumBudget b;
  b.maxTrailSize = 6;
  EnumBudget strict = b;
  for (int i = 0; i < 200; ++i) {
    TypePtr ty = g.type(2);
    std::vector<TermPtr> in;
    try {
      in = enumerate_type(ty, b);
    } catch (const NotEnumerable&) {
      continue;
    }
    // Everything enumerated is a member.
    for (const TermPtr& v : in) CHECK(member(v, ty, strict) != Tri::False);
    // Everything of bounded size that is a member is enumerated.
    for (const TermPtr& v : enumerate_type(list(), b)) {
      bool listed = std::any_of(in.begin(), in.end(),
                                [&](const TermPtr& w) { return alpha_eq(v, w); });
      Tri m = member(v, ty, strict);
      if (m == Tri::True) CHECK(listed);
      if (m == Tri::False) CHECK_FALSE(listed);
    }
  }
}

TEST_CASE("the ternary connective is monotone") {
  CHECK(tri_and(Tri::True, Tri::True) == Tri::True);
  CHECK(tri_and(Tri::True, Tri::Undecided) == Tri::Undecided);
  CHECK(tri_and(Tri::Undecided, Tri::False) == Tri::False);
  CHECK(tri_and(Tri::False, Tri::True) == Tri::False);
}

}  // TEST_SUITE
