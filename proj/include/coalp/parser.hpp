#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coalp/term.hpp"

namespace coalp {

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
  std::string message;
};

std::string to_string(const Diagnostic& d);

/// `program` is present iff no error was reported. Warnings may accompany a
/// successful parse.
struct ParseResult {
  std::optional<Program> program;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
  std::vector<Diagnostic> errors() const;
};

struct QueryResult {
  std::optional<Atom> atom;
  std::optional<Diagnostic> error;

  bool ok() const { return atom.has_value(); }
};

/// Grammar (Edinburgh subset):
///   program   ::= { directive | clause }
///   directive ::= ":-" "coinductive" indicator { "," indicator } "."
///   indicator ::= name "/" integer
///   clause    ::= atom [ ":-" atom { "," atom } ] "."
///   atom      ::= name [ "(" term { "," term } ")" ]
///   term      ::= variable | integer | name [ "(" term { "," term } ")" ]
///               | "[" "]" | "[" term { "," term } [ "|" term ] "]"
/// `%` starts a comment running to end of line. `_` alone is a fresh
/// anonymous variable per occurrence.
ParseResult parse_program(std::string_view src);

/// A single atom, optionally terminated by ".". Conjunctions are rejected.
QueryResult parse_query(std::string_view src);

}  // namespace coalp
