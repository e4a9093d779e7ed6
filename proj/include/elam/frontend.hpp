#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "elam/ast.hpp"

namespace elam {

struct ParseError : std::runtime_error {
  int line, column;
  std::string expected;
  ParseError(int ln, int col, const std::string& msg, std::string exp = "")
      : std::runtime_error(msg), line(ln), column(col), expected(std::move(exp)) {}
};

// One item of a .elam program file.
struct SourceItem {
  enum class Kind { Def, Check, Eval };
  Kind kind;
  Name name;     // Def only
  TermPtr term;
  TypePtr annot;  // Check only
  int line = 0;
};

struct SourceFile {
  std::vector<SourceItem> items;
};

TermPtr parse_term(const std::string& text);
TypePtr parse_type(const std::string& text);
SourceFile parse_file(const std::string& text);

// "x : T, y : U" context syntax used by the norm subcommand.
std::vector<std::pair<Name, TypePtr>> parse_bindings(const std::string& text);

std::string print_term(const TermPtr& t);
std::string print_type(const TypePtr& t);
std::string print_trail(const TrailPtr& t);
std::string print_path(const Path& p);

std::string to_string(BaseType b);

}  // namespace elam
