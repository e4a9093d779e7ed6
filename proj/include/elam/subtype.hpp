#pragma once

#include <optional>

#include "elam/session.hpp"
#include "elam/syntax.hpp"

namespace elam {

// Strips singleton layers; a singleton over a dependent function type is
// approximated by a function type whose codomain is the singleton of the
// application.
TypePtr widen(const TypePtr& ty);

// Algorithmic subtyping. Normalization + untangling is applied once at
// query entry and before every premise that extends the context, and is
// optional: if the normalized query fails, the plain structural rules are
// still attempted on the original query. Session fuel bounds the search;
// OutOfFuel propagates.
bool subtype(const Context& gamma, const TypePtr& t1, const TypePtr& t2, Session& s);

// Convenience wrapper: fuel exhaustion and inference failures map to false
// (reported as "unknown" via the flag).
bool subtype(const Context& gamma, const TypePtr& t1, const TypePtr& t2, long fuel,
             bool* unknown = nullptr);

// Greedy instantiation for an existential on the right: structurally aligns
// t1 against t2 and takes the first term matched against Var x as the
// candidate, returning its inferred singleton type. Fails when no alignment
// exists or the candidate is not well-formed in gamma.
std::optional<TypePtr> solve_x(const Context& gamma, const Name& x, const TypePtr& t1,
                               const TypePtr& s_dom, const TypePtr& t2, Session& s);

}  // namespace elam
