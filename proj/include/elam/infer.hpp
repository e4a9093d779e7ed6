#pragma once

#include <string>
#include <vector>

#include "elam/frontend.hpp"
#include "elam/session.hpp"
#include "elam/syntax.hpp"

namespace elam {

// Bidirectional type inference on core terms. Always returns a singleton
// type whose embedded term is alpha-equal to t. Throws InferFailure.
TypePtr infer(const Context& gamma, const TermPtr& t, Session& s);
TypePtr infer(const Context& gamma, const TermPtr& t, long fuel);

// Inference followed by a subtyping check against ty.
bool check(const Context& gamma, const TermPtr& t, const TypePtr& ty, Session& s);
bool check(const Context& gamma, const TermPtr& t, const TypePtr& ty, long fuel);

struct ItemResult {
  SourceItem::Kind kind;
  Name name;       // Def items
  int line = 0;
  bool ok = false;
  std::string message;  // failure reason or result description
  std::string detail;   // inferred type / evaluated value, printed
};

struct ProgramReport {
  std::vector<ItemResult> items;
  bool all_ok = true;
};

// Type-checks a program file. Definitions and checked terms are lowered
// against disjoint selections of one ambient trail binding and processed
// in order; `def` extends the context with the inferred singleton, `check`
// runs the bidirectional checker, `eval` runs the instrumented evaluator
// on the surface term (definitions substituted).
ProgramReport check_annotated_program(const SourceFile& file, long fuel,
                                      std::uint64_t seed = 0, bool parallel = false);

// Same pipeline, but check items report the inferred type of the term
// instead of a verdict, and eval items are skipped.
ProgramReport infer_annotated_program(const SourceFile& file, long fuel,
                                      bool parallel = false);

}  // namespace elam
