#pragma once

#include <string>
#include <vector>

#include "coalp/substitution.hpp"
#include "coalp/term.hpp"

namespace coalp {

/// A conjunction still to be proved and the bindings made so far. An empty
/// atom list is the empty clause.
struct SldGoal {
  std::vector<Atom> atoms;
  Substitution answer;
};

struct SldEvent {
  enum class Kind { kAnswer, kDepthExceeded };
  Kind kind = Kind::kAnswer;
  Substitution answer;     // restricted to the query variables
  std::size_t depth = 0;   // resolution steps on this branch
  std::size_t steps = 0;   // resolution steps since the search started
};

struct SldResult {
  std::vector<Substitution> answers;
  std::vector<SldEvent> events;  // in search order
  bool depth_exceeded = false;
  /// True when the whole search tree was explored within the depth limit.
  bool exhaustive() const { return !depth_exceeded && !stopped; }
  bool stopped = false;  // max_solutions reached
};

/// Leftmost selection, clauses in program order, depth-first with
/// backtracking. Branches reaching `depth_limit` resolution steps are
/// recorded and abandoned.
SldResult sld_solve(const Program& p, const Atom& goal, std::size_t depth_limit,
                    std::size_t max_solutions);

}  // namespace coalp
