#pragma once

#include <set>

#include "elam/session.hpp"
#include "elam/syntax.hpp"

namespace elam {

// Type normalization: singleton terms are beta-delta reduced and re-inferred
// (tightening the underlying bound), vacuous existentials are dropped, match
// types whose scrutinee reduces to nil or a cons are resolved to the branch.
TypePtr normalize(const Context& gamma, const TypePtr& ty, Session& s);
TypePtr normalize(const Context& gamma, const TypePtr& ty, long fuel);

// All maximal selection paths applied to Var x anywhere in ty, including
// inside terms embedded in types. Maximal: the full selection chain of each
// occurrence, never a proper prefix of it.
std::set<Path> trails_of(const Name& x, const TypePtr& ty);

// Splits every trail-typed existential into one existential per selection
// path used on its binder: selections consumed only by unpack[B] become
// binders of type B, others stay trails. Paths are bound in lexicographic
// order, outermost first.
TypePtr untangle(const TypePtr& ty, Session& s);

}  // namespace elam
