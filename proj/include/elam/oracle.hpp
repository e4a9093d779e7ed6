#pragma once

#include <stdexcept>
#include <vector>

#include "elam/syntax.hpp"

namespace elam {

// Ground-truth membership by bounded enumeration of type denotations.
// Sizes count constructors: nil has size 1, cons adds 1.
struct EnumBudget {
  int maxValueSize = 4;    // largest enumerated list value
  int maxTrailSize = 8;    // largest enumerated trail (total constructor count)
  int maxExistsWidth = 20000;  // witness cutoff per existential
  long fuel = 10000;       // reduction budget for embedded terms
};

struct NotEnumerable : std::runtime_error {
  explicit NotEnumerable(const std::string& why) : std::runtime_error(why) {}
};

enum class Tri { False, True, Undecided };

inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Undecided || b == Tri::Undecided) return Tri::Undecided;
  return Tri::True;
}

int value_size(const TermPtr& v);
bool first_order_value(const TermPtr& v);

// All closed first-order values of size within budget in the denotation of
// ty. Throws NotEnumerable for function types and non-closed scrutinees.
std::vector<TermPtr> enumerate_type(const TypePtr& ty, const EnumBudget& b);

// Tri-state membership; Undecided when functions or budget limits block
// the verdict (callers must treat Undecided as "skip", never as a pass).
Tri member(const TermPtr& v, const TypePtr& ty, const EnumBudget& b);

}  // namespace elam
