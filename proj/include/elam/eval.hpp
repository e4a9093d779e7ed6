#pragma once

#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "elam/session.hpp"
#include "elam/trail.hpp"

namespace elam {

// Source of values for choice constructs. Implementations must return
// closed values of the requested base type (a list value when b is List).
class Chooser {
 public:
  virtual ~Chooser() = default;
  virtual TermPtr choose_value(BaseType b) = 0;
};

// Random closed first-order values (nested lists only, no lambdas) of
// bounded depth.
class SeededChooser : public Chooser {
 public:
  explicit SeededChooser(std::uint64_t seed, int max_depth = 3)
      : rng_(seed), max_depth_(max_depth) {}
  TermPtr choose_value(BaseType b) override;

 private:
  std::mt19937_64 rng_;
  int max_depth_;
};

// Replays a fixed sequence of values; throws std::out_of_range when the
// script is exhausted.
class ScriptedChooser : public Chooser {
 public:
  explicit ScriptedChooser(std::vector<TermPtr> values) : values_(std::move(values)) {}
  TermPtr choose_value(BaseType b) override;
  size_t consumed() const { return next_; }

 private:
  std::vector<TermPtr> values_;
  size_t next_ = 0;
};

// Walks the canonical size-ordered enumeration of closed list values,
// advancing a cursor on every request.
class EnumeratingChooser : public Chooser {
 public:
  TermPtr choose_value(BaseType b) override;

 private:
  size_t cursor_ = 0;
};

// Assigns to every choice construct and application the trail selection
// path that lowering gives the same program position: paths are relative
// to the nearest enclosing lambda (which receives a fresh frame id), and
// absolute at the top level. Required before instrumented evaluation of
// terms containing choice constructs.
TermPtr annotate_sites(const TermPtr& t);

// Rewrites sites relative to `frame` into absolute sites rooted at `root`.
// Applied to a lambda body when the lambda is applied: the body's trail
// frame becomes the application's path extended by 3.
TermPtr reroot(const TermPtr& t, std::uint64_t frame, const Path& root);

bool is_value(const TermPtr& t);

struct StepResult {
  TermPtr term;
  std::optional<ChoiceEntry> logged;
};

// One call-by-value reduction step, or nullopt when t is a value. `prior`
// supplies already-logged choices: a choice construct whose site path was
// already decided (recursion unrolling duplicates sites) replays the
// recorded value instead of consulting the chooser.
std::optional<StepResult> step(const TermPtr& t, Chooser& chooser,
                               const ChoiceLog* prior = nullptr);

struct EvalResult {
  TermPtr value;
  ChoiceLog log;
};

// Runs t to a value, recording every choice. Annotates sites itself.
// Throws OutOfFuel or StuckTerm.
EvalResult eval(const TermPtr& t, Chooser& chooser, long fuel);

// Deterministic evaluation of core terms; selections and unpacks reduce on
// trail literals and are values on anything else.
TermPtr eval_core(const TermPtr& t, long fuel);

}  // namespace elam
