#pragma once

#include <stdexcept>
#include <vector>

#include "elam/ast.hpp"

namespace elam {

// Subtree of tau at p; Empty/Leaf encountered before p ends yields Empty.
TrailPtr select(const TrailPtr& tau, const Path& p);

// Replaces the subtree at p, creating intermediate Nodes (with Empty
// siblings) as needed, so that select(update(tau,p,sub), p) == sub.
TrailPtr update(const TrailPtr& tau, const Path& p, const TrailPtr& sub);

// Root-leaf extraction: the leaf value when the tag matches b, nil otherwise.
TermPtr unpack_value(BaseType b, const TrailPtr& tau);

// One recorded non-deterministic choice: the site path assigned by the
// lowering, the chosen value, and the tag of the choice construct.
struct ChoiceEntry {
  Path path;
  TermPtr value;
  BaseType tag;
};

struct ChoiceLog {
  std::vector<ChoiceEntry> entries;
};

// Raised by trail_of_log when one recorded path is a prefix of another;
// recorded runs of well-formed programs never do this.
struct PrefixClash : std::runtime_error {
  Path a, b;
  PrefixClash(Path pa, Path pb);
};

bool is_path_prefix(const Path& a, const Path& b);

// Folds the log into a trail: each entry installs Leaf(tag, value) at its
// path. Throws PrefixClash if two entry paths overlap.
TrailPtr trail_of_log(const ChoiceLog& log);

bool trail_eq(const TrailPtr& a, const TrailPtr& b);

}  // namespace elam
