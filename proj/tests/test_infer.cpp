#include "doctest.h"
#include "elam/eval.hpp"
#include "elam/frontend.hpp"
#include "elam/infer.hpp"
#include "elam/oracle.hpp"
#include "elam/subtype.hpp"
#include "generators.hpp"

using namespace elam;

TEST_SUITE("infer") {

TEST_CASE("inference returns the singleton of the term") {
  testgen::Gen g(103);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = g.core_term(3);
    TypePtr ty = infer(Context(), t, 1000000);
    REQUIRE(ty->kind == Type::Kind::Singleton);
    CHECK(alpha_eq(ty->term, t));
  }
}

TEST_CASE("concrete inferences") {
  TypePtr t1 = infer(Context(), parse_term("cons nil nil"), 10000);
  CHECK(print_type(t1) == "{ cons nil nil : Cons { nil : List } { nil : List } }");
  TypePtr t2 = infer(Context(), parse_term("\\(x: List) => cons x nil"), 10000);
  REQUIRE(t2->kind == Type::Kind::Singleton);
  CHECK(t2->t1->kind == Type::Kind::Pi);
  TypePtr t3 = infer(Context(), trail_lit(trail_leaf(BaseType::Top, nil())), 10000);
  CHECK(is_base(t3->t1, BaseType::Trail));
  // Variables get the singleton of their binding.
  Context g = Context().extended("x", list());
  TypePtr t4 = infer(g, parse_term("x"), 10000);
  CHECK(print_type(t4) == "{ x : List }");
}

TEST_CASE("application types depend on the argument") {
  TypePtr ty = infer(Context(), parse_term("(\\(x: List) => cons x x) (cons nil nil)"), 10000);
  REQUIRE(ty->kind == Type::Kind::Singleton);
  // The codomain has the argument substituted in.
  CHECK(subtype(Context(), ty, parse_type("{ cons (cons nil nil) (cons nil nil) : List }"),
                100000));
}

TEST_CASE("failures") {
  CHECK_THROWS_AS(infer(Context(), parse_term("y"), 10000), InferFailure);
  CHECK_THROWS_AS(infer(Context(), parse_term("nil nil"), 10000), InferFailure);
  CHECK_THROWS_AS(infer(Context(), parse_term("choose[Top]"), 10000), InferFailure);
  CHECK_THROWS_AS(infer(Context(), parse_term("match (\\(x: Top) => x) { nil => nil ; cons a b => a }"),
                        10000),
                  InferFailure);
  // The fix body must check against the annotation.
  CHECK_THROWS_AS(infer(Context(), parse_term("fix[2](f: Pi(x: List) => List => nil, nil)"),
                        10000),
                  InferFailure);
}

TEST_CASE("inference is sound for evaluation, randomized") {
  testgen::Gen g(107);
  EnumBudget b;
  for (int i = 0; i < 300; ++i) {
    TermPtr t = g.core_term(3);
    TypePtr ty = infer(Context(), t, 1000000);
    TermPtr v = eval_core(t, 1000000);
    Tri m = member(v, ty, b);
    if (m == Tri::Undecided) {
      CHECK(v->kind == Term::Kind::Abs);
    } else {
      CHECK(m == Tri::True);
    }
  }
}

TEST_CASE("program checking runs items in order") {
  SourceFile f = parse_file(
      "def one = cons nil nil\n"
      "check one : List\n"
      "check cons one nil : { cons (cons nil nil) nil : List }\n"
      "eval cons choose[Top] one\n");
  ProgramReport r = check_annotated_program(f, 100000, 9);
  CHECK(r.all_ok);
  REQUIRE(r.items.size() == 4);
  CHECK(r.items[0].kind == SourceItem::Kind::Def);
  CHECK(r.items[3].kind == SourceItem::Kind::Eval);
  CHECK(!r.items[3].detail.empty());
}

TEST_CASE("program checking reports failures per item") {
  SourceFile f = parse_file(
      "check nil : { cons nil nil : List }\n"
      "check cons nil nil : List\n");
  ProgramReport r = check_annotated_program(f, 100000);
  CHECK_FALSE(r.all_ok);
  REQUIRE(r.items.size() == 2);
  CHECK_FALSE(r.items[0].ok);
  CHECK(r.items[1].ok);
}

TEST_CASE("malformed annotations fail the item, not the run") {
  SourceFile f = parse_file("check nil : { \\(x: Top) => x : List }\n");
  ProgramReport r = check_annotated_program(f, 100000);
  REQUIRE(r.items.size() == 1);
  CHECK_FALSE(r.items[0].ok);
}

TEST_CASE("parallel and sequential checking agree") {
  SourceFile f = parse_file(
      "def one = cons nil nil\n"
      "check one : List\n"
      "check one : { cons nil nil : List }\n"
      "check nil : { cons nil nil : List }\n"
      "eval cons choose[List] one\n");
  ProgramReport seq = check_annotated_program(f, 100000, 5, false);
  ProgramReport par = check_annotated_program(f, 100000, 5, true);
  REQUIRE(seq.items.size() == par.items.size());
  for (size_t i = 0; i < seq.items.size(); ++i) {
    CHECK(seq.items[i].ok == par.items[i].ok);
    CHECK(seq.items[i].detail == par.items[i].detail);
  }
}

TEST_CASE("inference mode reports types and skips evaluation") {
  SourceFile f = parse_file(
      "def one = cons nil nil\n"
      "check one : List\n"
      "eval cons choose[Top] nil\n");
  ProgramReport r = infer_annotated_program(f, 100000);
  CHECK(r.all_ok);
  REQUIRE(r.items.size() == 3);
  CHECK(!r.items[1].detail.empty());
}

}  // TEST_SUITE
