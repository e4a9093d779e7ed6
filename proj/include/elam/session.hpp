#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "elam/ast.hpp"

namespace elam {

struct OutOfFuel : std::runtime_error {
  OutOfFuel() : std::runtime_error("out of fuel") {}
};

struct StuckTerm : std::runtime_error {
  TermPtr term;
  explicit StuckTerm(TermPtr t, const std::string& why)
      : std::runtime_error("stuck term: " + why), term(std::move(t)) {}
};

struct InferFailure : std::runtime_error {
  explicit InferFailure(const std::string& why) : std::runtime_error(why) {}
};

// Shared state for one checking/normalization task: a fuel budget charged by
// every reduction and rule application, a fresh-name supply, and a flag
// recording whether any optional normalization step was abandoned for lack
// of fuel (in which case a negative subtyping answer is inconclusive).
class Session {
 public:
  explicit Session(long fuel = 10000) : fuel_(fuel) {}

  void burn(long n = 1) {
    fuel_ -= n;
    if (fuel_ < 0) throw OutOfFuel();
  }
  long fuel_left() const { return fuel_; }

  // Reserves names not used anywhere in the inputs of the task.
  void reserve(const std::set<Name>& names) { reserved_.insert(names.begin(), names.end()); }
  Name fresh(const std::string& stem) {
    for (;;) {
      Name cand = stem + std::to_string(counter_++);
      if (!reserved_.count(cand)) return cand;
    }
  }

  void mark_unknown() { unknown_ = true; }
  bool unknown() const { return unknown_; }

  bool trace_enabled = false;
  std::vector<std::string> trace;
  void note(const std::string& line) {
    if (trace_enabled) trace.push_back(line);
  }

 private:
  long fuel_;
  std::uint64_t counter_ = 0;
  std::set<Name> reserved_;
  bool unknown_ = false;
};

}  // namespace elam
