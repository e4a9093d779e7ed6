#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "elam/ast.hpp"

namespace elam {

enum class Dialect { Surface, Core };

std::set<Name> free_vars(const TermPtr& t);
std::set<Name> free_vars(const TypePtr& t);

// Capture-avoiding substitution [x -> s].
TermPtr subst(const TermPtr& t, const Name& x, const TermPtr& s);
TypePtr subst(const TypePtr& t, const Name& x, const TermPtr& s);

bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const TypePtr& a, const TypePtr& b);

// True iff t uses only constructs of the dialect: Choose only in the
// surface language, Sel/Unpack/TrailLit only in the core.
bool check_dialect(const TermPtr& t, Dialect d);
bool check_dialect(const TypePtr& t, Dialect d);

// Collects every identifier occurring anywhere in a term or type, bound or
// free. Used to seed fresh-name supplies.
void all_names(const TermPtr& t, std::set<Name>& out);
void all_names(const TypePtr& t, std::set<Name>& out);

// Ordered typing context; names are pairwise distinct and later bindings may
// only reference earlier ones.
class Context {
 public:
  Context() = default;

  bool contains(const Name& x) const;
  std::optional<TypePtr> lookup(const Name& x) const;
  Context extended(Name x, TypePtr ty) const;

  const std::vector<std::pair<Name, TypePtr>>& bindings() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::pair<Name, TypePtr>> entries_;
};

}  // namespace elam
