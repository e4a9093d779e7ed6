#pragma once

#include "elam/session.hpp"

namespace elam {

// Translation from the surface language to the core: every choice construct
// becomes an unpack of a trail selection, lambdas take an extra leading
// trail parameter, and each subterm position gets a distinct selection of
// the incoming trail p (applications use p.1/p.2 for the parts and pass
// p.3 to the function; cons p.1/p.2; match p.1/p.2/p.3; fix p.1/p.2).
TermPtr lower_term(Session& s, const TermPtr& p, const TermPtr& t);

// Types: singletons gain an existentially bound trail for their term,
// dependent function types gain a universally bound trail parameter.
TypePtr lower_type(Session& s, const TypePtr& ty);

// Whole-program form: a lambda binding the initial trail.
TermPtr lower_program(Session& s, const TermPtr& t);

}  // namespace elam
