#include "doctest.h"
#include "elam/frontend.hpp"
#include "elam/lower.hpp"
#include "elam/oracle.hpp"
#include "elam/subtype.hpp"
#include "generators.hpp"

using namespace elam;

namespace {

bool sub(const std::string& a, const std::string& b) {
  return subtype(Context(), parse_type(a), parse_type(b), 100000);
}

}  // namespace

TEST_SUITE("subtype") {

TEST_CASE("reflexivity on generated types") {
  testgen::Gen g(89);
  for (int i = 0; i < 400; ++i) {
    TypePtr ty = g.type(3);
    CHECK(subtype(Context(), ty, ty, 100000));
  }
}

TEST_CASE("Top is the top element") {
  testgen::Gen g(97);
  for (int i = 0; i < 200; ++i) {
    CHECK(subtype(Context(), g.type(3), top(), 100000));
  }
  CHECK_FALSE(sub("Top", "List"));
}

TEST_CASE("singletons are subtypes of their bound") {
  CHECK(sub("{ nil : List }", "List"));
  CHECK(sub("{ cons nil nil : List }", "List"));
  CHECK_FALSE(sub("List", "{ nil : List }"));
  // Distinct values have incomparable singletons.
  CHECK_FALSE(sub("{ nil : List }", "{ cons nil nil : List }"));
  // Equal-after-reduction terms have equal singletons.
  CHECK(sub("{ (\\(x: List) => x) nil : List }", "{ nil : List }"));
}

TEST_CASE("constructor types are covariant") {
  CHECK(sub("Cons { nil : List } List", "Cons List List"));
  CHECK(sub("Cons List List", "Cons Top Top"));
  CHECK_FALSE(sub("Cons Top List", "Cons List List"));
  // Cons head/tail singleton form relates to List.
  CHECK(sub("{ cons nil nil : Cons { nil : List } { nil : List } }", "List"));
}

TEST_CASE("function types are contravariant in the domain") {
  CHECK(sub("Pi(x: Top) => List", "Pi(x: List) => List"));
  CHECK_FALSE(sub("Pi(x: List) => List", "Pi(x: Top) => List"));
  CHECK(sub("Pi(x: List) => { x : List }", "Pi(x: { nil : List }) => List"));
  // Codomains are compared under the sharper (right) domain.
  CHECK(sub("Pi(x: { nil : List }) => { x : List }", "Pi(x: { nil : List }) => { nil : List }"));
}

TEST_CASE("existentials on the right are instantiated") {
  CHECK(sub("{ nil : List }", "exists(x: Top) => { x : Top }"));
  CHECK(sub("{ cons nil (cons nil nil) : List }", "exists(x: List) => { cons nil x : List }"));
  CHECK_FALSE(sub("{ nil : List }", "exists(x: List) => { cons nil x : List }"));
}

TEST_CASE("existentials on the left generalize") {
  CHECK(sub("exists(x: { nil : List }) => { cons x nil : List }", "{ cons nil nil : List }"));
  CHECK(sub("exists(x: List) => { cons x nil : List }", "List"));
  CHECK_FALSE(sub("exists(x: Top) => { x : Top }", "List"));
}

TEST_CASE("match types resolve before comparison") {
  CHECK(sub("Match nil { nil => { nil : List } ; cons x xs => Top }", "List"));
  CHECK(sub("{ nil : List }", "Match cons nil nil { nil => Top ; cons x xs => { x : List } }"));
}

TEST_CASE("the choice-pair annotation admits the concrete pair") {
  Session ls(100000);
  TypePtr lhs = parse_type("{ cons nil nil : List }");
  TypePtr rhs = lower_type(ls, parse_type("{ cons choose[Top] choose[List] : List }"));
  CHECK(subtype(Context(), lhs, rhs, 100000));
  // A pair whose second component is not a list is rejected.
  Session ls2(100000);
  TypePtr bad = parse_type("{ cons nil (\\(x: Top) => x) : Cons Top Top }");
  CHECK_FALSE(subtype(Context(), bad, rhs, 100000));
}

TEST_CASE("fuel exhaustion reports unknown instead of a verdict") {
  bool unknown = false;
  bool r = subtype(Context(),
                   parse_type("{ fix[9999](f: List => cons nil f, nil) : List }"),
                   parse_type("{ nil : List }"), 50, &unknown);
  CHECK_FALSE(r);
  CHECK(unknown);
}

TEST_CASE("widening strips singleton layers") {
  TypePtr w = widen(parse_type("{ nil : List }"));
  CHECK(is_base(w, BaseType::List));
  // Widening a singleton over a function type exposes a function type.
  TypePtr wf = widen(parse_type("{ \\(x: List) => x : Pi(x: List) => List }"));
  CHECK(wf->kind == Type::Kind::Pi);
}

TEST_CASE("transitivity spot checks against enumeration") {
  // For every pair of generated types where subtyping says yes, every
  // enumerated member of the left must be a member of the right.
  testgen::Gen g(101);
  EnumBudget b;
  b.maxTrailSize = 6;
  int positive = 0;
  for (int i = 0; i < 300; ++i) {
    TypePtr t1 = g.type(2);
    TypePtr t2 = g.type(2);
    bool unknown = false;
    if (!subtype(Context(), t1, t2, 100000, &unknown) || unknown) continue;
    ++positive;
    std::vector<TermPtr> vs;
    try {
      vs = enumerate_type(t1, b);
    } catch (const NotEnumerable&) {
      continue;
    }
    for (const TermPtr& v : vs) {
      CHECK(member(v, t2, b) != Tri::False);
    }
  }
  CHECK(positive > 20);
}

}  // TEST_SUITE
