#include <sstream>

#include "elam/frontend.hpp"

namespace elam {

namespace {

// Precedence levels: 0 = full term (lambda/match/fix bodies extend right),
// 1 = application operand, 2 = atom (selection targets, cons arguments).
void pt(std::ostringstream& os, const TermPtr& t, int level);
void pty(std::ostringstream& os, const TypePtr& t, bool atom);

bool term_is_atom(const TermPtr& t) {
  using K = Term::Kind;
  switch (t->kind) {
    case K::Var:
    case K::Nil:
    case K::Choose:
    case K::Unpack:
    case K::Sel:
    case K::TrailLit:
      return true;
    default:
      return false;
  }
}

void pt(std::ostringstream& os, const TermPtr& t, int level) {
  using K = Term::Kind;
  switch (t->kind) {
    case K::Var:
      os << t->name;
      return;
    case K::Nil:
      os << "nil";
      return;
    case K::Choose:
      os << "choose[" << to_string(t->base) << "]";
      return;
    case K::Abs:
      if (level > 0) os << "(";
      os << "\\(" << t->name << ": ";
      pty(os, t->annot, false);
      os << ") => ";
      pt(os, t->a, 0);
      if (level > 0) os << ")";
      return;
    case K::App: {
      if (level > 1) os << "(";
      pt(os, t->a, t->a->kind == K::App ? 1 : 2);
      os << " ";
      pt(os, t->b, 2);
      if (level > 1) os << ")";
      return;
    }
    case K::Cons:
      if (level > 1) os << "(";
      os << "cons ";
      pt(os, t->a, 2);
      os << " ";
      pt(os, t->b, 2);
      if (level > 1) os << ")";
      return;
    case K::Match:
      if (level > 0) os << "(";
      os << "match ";
      pt(os, t->a, 1);
      os << " { nil => ";
      pt(os, t->b, 0);
      os << " ; cons " << t->name << " " << t->name2 << " => ";
      pt(os, t->c, 0);
      os << " }";
      if (level > 0) os << ")";
      return;
    case K::Fix:
      if (level > 0) os << "(";
      os << "fix[" << t->bound << "](" << t->name << ": ";
      pty(os, t->annot, false);
      os << " => ";
      pt(os, t->a, 0);
      os << ", ";
      pt(os, t->b, 0);
      os << ")";
      if (level > 0) os << ")";
      return;
    case K::Sel: {
      if (term_is_atom(t->a)) {
        pt(os, t->a, 2);
      } else {
        os << "(";
        pt(os, t->a, 0);
        os << ")";
      }
      os << "." << t->sel;
      return;
    }
    case K::Unpack:
      os << "unpack[" << to_string(t->base) << "](";
      pt(os, t->a, 0);
      os << ")";
      return;
    case K::TrailLit:
      // Trails have no concrete syntax; this form is for diagnostics only.
      os << "<" << print_trail(t->trail) << ">";
      return;
  }
}

void pty(std::ostringstream& os, const TypePtr& t, bool atom) {
  using K = Type::Kind;
  switch (t->kind) {
    case K::Base:
      os << to_string(t->base);
      return;
    case K::Singleton:
      os << "{ ";
      pt(os, t->term, 0);
      os << " : ";
      pty(os, t->t1, false);
      os << " }";
      return;
    case K::Pi:
      if (atom) os << "(";
      os << "Pi(" << t->name << ": ";
      pty(os, t->t1, false);
      os << ") => ";
      pty(os, t->t2, false);
      if (atom) os << ")";
      return;
    case K::Exists:
      if (atom) os << "(";
      os << "exists(" << t->name << ": ";
      pty(os, t->t1, false);
      os << ") => ";
      pty(os, t->t2, false);
      if (atom) os << ")";
      return;
    case K::ConsT:
      if (atom) os << "(";
      os << "Cons ";
      pty(os, t->t1, true);
      os << " ";
      pty(os, t->t2, true);
      if (atom) os << ")";
      return;
    case K::MatchT:
      if (atom) os << "(";
      os << "Match ";
      pt(os, t->term, 1);
      os << " { nil => ";
      pty(os, t->t1, false);
      os << " ; cons " << t->name << " " << t->name2 << " => ";
      pty(os, t->t2, false);
      os << " }";
      if (atom) os << ")";
      return;
  }
}

}  // namespace

std::string to_string(BaseType b) {
  switch (b) {
    case BaseType::Top:
      return "Top";
    case BaseType::List:
      return "List";
    case BaseType::Trail:
      return "Trail";
  }
  return "?";
}

std::string print_term(const TermPtr& t) {
  std::ostringstream os;
  pt(os, t, 0);
  return os.str();
}

std::string print_type(const TypePtr& t) {
  std::ostringstream os;
  pty(os, t, false);
  return os.str();
}

std::string print_trail(const TrailPtr& t) {
  switch (t->kind) {
    case TrailTree::Kind::Empty:
      return "empty";
    case TrailTree::Kind::Leaf:
      return "leaf " + to_string(t->tag) + " (" + print_term(t->value) + ")";
    case TrailTree::Kind::Node:
      return "node(" + print_trail(t->c1) + ", " + print_trail(t->c2) + ", " +
             print_trail(t->c3) + ")";
  }
  return "?";
}

std::string print_path(const Path& p) {
  std::string s;
  for (int k : p) s += "." + std::to_string(k);
  if (s.empty()) s = "<root>";
  return s;
}

}  // namespace elam
