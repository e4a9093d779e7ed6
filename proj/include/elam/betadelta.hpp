#pragma once

#include <optional>

#include "elam/session.hpp"
#include "elam/syntax.hpp"

namespace elam {

// One beta-delta step under a context: delta replaces a variable whose
// context binding is a singleton by the singleton's term; beta is the plain
// call-by-value relation (closed under the same evaluation contexts).
// Delta is tried before beta at each position, leftmost-outermost.
// Returns nullopt when t is in normal form under gamma.
std::optional<TermPtr> bd_step(const Context& gamma, const TermPtr& t);

// Beta-delta normal form; charges the session one unit per rule application.
TermPtr bd_reduce(const Context& gamma, const TermPtr& t, Session& s);
TermPtr bd_reduce(const Context& gamma, const TermPtr& t, long fuel);

}  // namespace elam
