#include "elam/trail.hpp"

#include "elam/frontend.hpp"
#include "elam/syntax.hpp"

namespace elam {

TrailPtr select(const TrailPtr& tau, const Path& p) {
  TrailPtr cur = tau;
  for (int k : p) {
    if (cur->kind != TrailTree::Kind::Node) return trail_empty();
    cur = k == 1 ? cur->c1 : k == 2 ? cur->c2 : cur->c3;
  }
  return cur;
}

static TrailPtr update_at(const TrailPtr& tau, const Path& p, size_t i, const TrailPtr& sub) {
  if (i == p.size()) return sub;
  TrailPtr c1 = trail_empty(), c2 = trail_empty(), c3 = trail_empty();
  if (tau->kind == TrailTree::Kind::Node) {
    c1 = tau->c1;
    c2 = tau->c2;
    c3 = tau->c3;
  }
  switch (p[i]) {
    case 1: c1 = update_at(c1, p, i + 1, sub); break;
    case 2: c2 = update_at(c2, p, i + 1, sub); break;
    default: c3 = update_at(c3, p, i + 1, sub); break;
  }
  return trail_node(c1, c2, c3);
}

TrailPtr update(const TrailPtr& tau, const Path& p, const TrailPtr& sub) {
  return update_at(tau, p, 0, sub);
}

TermPtr unpack_value(BaseType b, const TrailPtr& tau) {
  if (tau->kind == TrailTree::Kind::Leaf && tau->tag == b) return tau->value;
  return nil();
}

bool is_path_prefix(const Path& a, const Path& b) {
  if (a.size() > b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

PrefixClash::PrefixClash(Path pa, Path pb)
    : std::runtime_error("overlapping trail paths " + print_path(pa) + " and " + print_path(pb)),
      a(std::move(pa)),
      b(std::move(pb)) {}

TrailPtr trail_of_log(const ChoiceLog& log) {
  for (size_t i = 0; i < log.entries.size(); ++i) {
    for (size_t j = i + 1; j < log.entries.size(); ++j) {
      const Path& pi = log.entries[i].path;
      const Path& pj = log.entries[j].path;
      if (is_path_prefix(pi, pj) || is_path_prefix(pj, pi)) throw PrefixClash(pi, pj);
    }
  }
  TrailPtr tau = trail_empty();
  for (const ChoiceEntry& e : log.entries) {
    tau = update(tau, e.path, trail_leaf(e.tag, e.value));
  }
  return tau;
}

bool trail_eq(const TrailPtr& a, const TrailPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TrailTree::Kind::Empty:
      return true;
    case TrailTree::Kind::Leaf:
      return a->tag == b->tag && alpha_eq(a->value, b->value);
    case TrailTree::Kind::Node:
      return trail_eq(a->c1, b->c1) && trail_eq(a->c2, b->c2) && trail_eq(a->c3, b->c3);
  }
  return false;
}

}  // namespace elam
