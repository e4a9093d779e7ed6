#include "doctest.h"
#include "elam/eval.hpp"
#include "elam/frontend.hpp"
#include "elam/lower.hpp"
#include "generators.hpp"

using namespace elam;

namespace {

// Drives the single-step relation to a value, threading the choice log so
// revisited choice sites replay. Mirrors what the big-step evaluator does.
EvalResult eval_by_steps(TermPtr t, Chooser& ch, long fuel) {
  t = annotate_sites(t);
  ChoiceLog log;
  while (auto r = step(t, ch, &log)) {
    if (--fuel < 0) throw OutOfFuel();
    t = r->term;
    if (r->logged) log.entries.push_back(*r->logged);
  }
  return {t, log};
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("deterministic reductions") {
  long fuel = 1000;
  CHECK(print_term(eval_core(parse_term("(\\(x: Top) => cons x nil) nil"), fuel)) ==
        "cons nil nil");
  CHECK(print_term(eval_core(
            parse_term("match cons nil (cons nil nil) { nil => nil ; cons x xs => xs }"),
            fuel)) == "cons nil nil");
  CHECK(print_term(eval_core(parse_term("match nil { nil => cons nil nil ; cons x xs => x }"),
                             fuel)) == "cons nil nil");
  // fix unrolls bound times, then takes the default.
  CHECK(print_term(eval_core(
            parse_term("fix[2](f: List => cons nil f, cons nil nil)"), fuel)) ==
        "cons nil (cons nil (cons nil nil))");
  // Selecting below a leaf truncates to the empty trail, which unpacks to nil.
  TrailPtr leaf = trail_leaf(BaseType::List, cons(nil(), nil()));
  CHECK(print_term(eval_core(unpack(BaseType::List, sel(trail_lit(leaf), 1)), fuel)) == "nil");
  TrailPtr node = trail_node(leaf, trail_empty(), trail_empty());
  CHECK(print_term(eval_core(unpack(BaseType::List, sel(trail_lit(node), 1)), fuel)) ==
        "cons nil nil");
}

TEST_CASE("selection and unpack are values on non-literals") {
  TermPtr t = parse_term("\\(z: Trail) => cons (unpack[Top](z.1)) nil");
  TrailPtr tau = trail_node(trail_leaf(BaseType::Top, cons(nil(), nil())), trail_empty(),
                            trail_empty());
  TermPtr applied = app(t, trail_lit(tau));
  CHECK(print_term(eval_core(applied, 1000)) == "cons (cons nil nil) nil");
  CHECK(is_value(parse_term("unpack[Top](z.1)")));
  CHECK_FALSE(is_value(unpack(BaseType::Top, trail_lit(trail_empty()))));
}

TEST_CASE("stuck terms and fuel") {
  CHECK_THROWS_AS(eval_core(parse_term("nil nil"), 1000), StuckTerm);
  CHECK_THROWS_AS(eval_core(parse_term("match (\\(x: Top) => x) { nil => nil ; cons a b => a }"),
                            1000),
                  StuckTerm);
  CHECK_THROWS_AS(eval_core(parse_term("fix[1000](f: List => cons nil f, nil)"), 10),
                  OutOfFuel);
}

TEST_CASE("choices are logged with their lowering paths") {
  SeededChooser ch(5);
  EvalResult r = eval(parse_term("cons choose[Top] (cons choose[List] nil)"), ch, 1000);
  REQUIRE(r.log.entries.size() == 2);
  CHECK(r.log.entries[0].tag == BaseType::Top);
  CHECK(r.log.entries[1].tag == BaseType::List);
  // The two sites are distinct and prefix-free, as lowering requires.
  CHECK_FALSE(is_path_prefix(r.log.entries[0].path, r.log.entries[1].path));
  CHECK_FALSE(is_path_prefix(r.log.entries[1].path, r.log.entries[0].path));
  // The value is the pair of chosen values.
  REQUIRE(r.value->kind == Term::Kind::Cons);
  CHECK(alpha_eq(r.value->a, r.log.entries[0].value));
  CHECK(alpha_eq(r.value->b->a, r.log.entries[1].value));
}

TEST_CASE("a choice site duplicated by recursion replays its value") {
  TermPtr t = parse_term("fix[2](f: List => cons choose[Top] f, nil)");
  SeededChooser ch(42);
  EvalResult r = eval(t, ch, 1000);
  CHECK(r.log.entries.size() == 1);
  REQUIRE(r.value->kind == Term::Kind::Cons);
  REQUIRE(r.value->b->kind == Term::Kind::Cons);
  CHECK(alpha_eq(r.value->a, r.value->b->a));
}

TEST_CASE("scripted chooser replays and reports exhaustion") {
  ScriptedChooser ch({nil(), cons(nil(), nil())});
  EvalResult r = eval(parse_term("cons choose[Top] (cons choose[List] nil)"), ch, 1000);
  CHECK(print_term(r.value) == "cons nil (cons (cons nil nil) nil)");
  CHECK(ch.consumed() == 2);
  ScriptedChooser empty({});
  CHECK_THROWS_AS(eval(parse_term("cons choose[Top] nil"), empty, 1000), std::out_of_range);
}

TEST_CASE("enumerating chooser walks the value order") {
  EnumeratingChooser ch;
  EvalResult r = eval(parse_term("cons choose[List] (cons choose[List] nil)"), ch, 1000);
  CHECK(print_term(r.value->a) == "nil");
  CHECK(print_term(r.value->b->a) == "cons nil nil");
}

TEST_CASE("single-step and big-step evaluation agree, randomized") {
  testgen::Gen g(47);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = g.surface_program(3);
    SeededChooser c1(1000 + static_cast<std::uint64_t>(i));
    SeededChooser c2(1000 + static_cast<std::uint64_t>(i));
    EvalResult big = eval(t, c1, 200000);
    EvalResult small = eval_by_steps(t, c2, 200000);
    CHECK(alpha_eq(big.value, small.value));
    REQUIRE(big.log.entries.size() == small.log.entries.size());
    for (size_t k = 0; k < big.log.entries.size(); ++k) {
      CHECK(big.log.entries[k].path == small.log.entries[k].path);
      CHECK(alpha_eq(big.log.entries[k].value, small.log.entries[k].value));
    }
  }
}

TEST_CASE("core evaluation agrees with stepping on generated core terms") {
  testgen::Gen g(53);
  ScriptedChooser no_choices({});
  for (int i = 0; i < 300; ++i) {
    TermPtr t = g.core_term(3);
    TermPtr v1 = eval_core(t, 200000);
    EvalResult v2 = eval_by_steps(t, no_choices, 200000);
    CHECK(alpha_eq(v1, v2.value));
    CHECK(v2.log.entries.empty());
  }
}

TEST_CASE("replaying a logged run through the lowering reproduces the value") {
  testgen::Gen g(59);
  for (int i = 0; i < 100; ++i) {
    TermPtr t = g.surface_program(3);
    SeededChooser ch(static_cast<std::uint64_t>(i) * 7 + 1);
    EvalResult r = eval(t, ch, 200000);
    Session s(1000000);
    TermPtr lowered = lower_program(s, t);
    TermPtr replay = eval_core(app(lowered, trail_lit(trail_of_log(r.log))), 1000000);
    CHECK(alpha_eq(replay, r.value));
  }
}

}  // TEST_SUITE
