#include "doctest.h"
#include "elam/frontend.hpp"
#include "elam/trail.hpp"
#include "generators.hpp"

using namespace elam;

TEST_SUITE("trail") {

TEST_CASE("select walks nodes and truncates at leaves") {
  TrailPtr leaf = trail_leaf(BaseType::List, cons(nil(), nil()));
  TrailPtr tau = trail_node(leaf, trail_empty(), trail_node(trail_empty(), leaf, trail_empty()));
  CHECK(trail_eq(select(tau, {}), tau));
  CHECK(trail_eq(select(tau, {1}), leaf));
  CHECK(trail_eq(select(tau, {3, 2}), leaf));
  // Selecting below a leaf or into an empty yields the empty trail.
  CHECK(select(tau, {1, 2})->kind == TrailTree::Kind::Empty);
  CHECK(select(tau, {2, 1})->kind == TrailTree::Kind::Empty);
}

TEST_CASE("update installs and select retrieves") {
  TrailPtr sub = trail_leaf(BaseType::Top, nil());
  TrailPtr tau = update(trail_empty(), {2, 3, 1}, sub);
  CHECK(trail_eq(select(tau, {2, 3, 1}), sub));
  CHECK(select(tau, {1})->kind == TrailTree::Kind::Empty);
}

TEST_CASE("select after update: retrieval and non-interference, randomized") {
  testgen::Gen g(31);
  int checked_disjoint = 0;
  for (int i = 0; i < 2000; ++i) {
    TrailPtr tau = g.trail(3);
    TrailPtr sub = g.trail(2);
    Path p = g.path(3);
    CHECK(trail_eq(select(update(tau, p, sub), p), sub));
    Path q = g.path(3);
    if (!is_path_prefix(p, q) && !is_path_prefix(q, p)) {
      ++checked_disjoint;
      CHECK(trail_eq(select(update(tau, p, sub), q), select(tau, q)));
    }
  }
  CHECK(checked_disjoint > 500);
}

TEST_CASE("unpack_value matches on the tag") {
  TermPtr v = cons(nil(), nil());
  TrailPtr leaf = trail_leaf(BaseType::List, v);
  CHECK(alpha_eq(unpack_value(BaseType::List, leaf), v));
  // Tag mismatch, node, and empty all give nil.
  CHECK(unpack_value(BaseType::Top, leaf)->kind == Term::Kind::Nil);
  CHECK(unpack_value(BaseType::List, trail_empty())->kind == Term::Kind::Nil);
  CHECK(unpack_value(BaseType::List, trail_node(leaf, leaf, leaf))->kind == Term::Kind::Nil);
}

TEST_CASE("path prefix relation") {
  CHECK(is_path_prefix({}, {1, 2}));
  CHECK(is_path_prefix({1}, {1, 2}));
  CHECK(is_path_prefix({1, 2}, {1, 2}));
  CHECK_FALSE(is_path_prefix({1, 2}, {1}));
  CHECK_FALSE(is_path_prefix({2}, {1, 2}));
}

TEST_CASE("trail_of_log installs one leaf per entry") {
  ChoiceLog log;
  log.entries.push_back({{1}, nil(), BaseType::Top});
  log.entries.push_back({{2, 2}, cons(nil(), nil()), BaseType::List});
  TrailPtr tau = trail_of_log(log);
  TrailPtr a = select(tau, {1});
  REQUIRE(a->kind == TrailTree::Kind::Leaf);
  CHECK(a->tag == BaseType::Top);
  TrailPtr b = select(tau, {2, 2});
  REQUIRE(b->kind == TrailTree::Kind::Leaf);
  CHECK(alpha_eq(b->value, cons(nil(), nil())));
}

TEST_CASE("trail_of_log rejects overlapping paths") {
  ChoiceLog log;
  log.entries.push_back({{1}, nil(), BaseType::Top});
  log.entries.push_back({{1, 2}, nil(), BaseType::Top});
  CHECK_THROWS_AS(trail_of_log(log), PrefixClash);
}

TEST_CASE("trail equality is structural") {
  testgen::Gen g(37);
  for (int i = 0; i < 200; ++i) {
    TrailPtr tau = g.trail(3);
    CHECK(trail_eq(tau, tau));
    // Rebuilding through update at the root preserves equality.
    CHECK(trail_eq(update(trail_empty(), {}, tau), tau));
  }
  CHECK_FALSE(trail_eq(trail_empty(), trail_leaf(BaseType::Top, nil())));
  CHECK_FALSE(trail_eq(trail_leaf(BaseType::Top, nil()),
                       trail_leaf(BaseType::List, nil())));
}

}  // TEST_SUITE
