#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coalp/cotree.hpp"
#include "coalp/term.hpp"

namespace coalp {

enum class Check { kGC1, kGC2, kGC3 };
std::string_view to_string(Check c);

struct CheckOutcome {
  bool pass = false;
  std::string detail;
};

/// Passes when the head predicate does not recur in the body, or when a
/// single function symbol occurs strictly more often in the head arguments
/// than in the arguments of every recursive body atom.
CheckOutcome gc1_clause(const Clause& c);

/// gc1_clause() on the synthetic clause `ancestor :- descendant`.
CheckOutcome gc1_pair(const Atom& ancestor, const Atom& descendant);

struct LoopEvidence {
  Signature predicate;
  Atom ancestor;
  Atom descendant;
  bool guarded = false;
};

/// First same-predicate ancestor/descendant pair in `t` that fails
/// gc1_pair(), in preorder of the descendant.
std::optional<LoopEvidence> find_unguarded_loop(const CoTree& t);

/// Result of one check on one clause head.
struct HeadCheck {
  Check check = Check::kGC1;
  std::size_t clause_index = 0;
  Atom head;
  bool pass = false;
  std::string detail;
  std::optional<LoopEvidence> evidence;
};

struct StageResult {
  bool pass = true;
  std::vector<HeadCheck> heads;
};

StageResult gc1_program(const Program& p);

/// Builds the tree of every clause head to budget and checks every
/// same-predicate ancestor/descendant pair. Exceeding the budget fails.
StageResult gc2_program(const Program& p, const Budget& b);

struct Gc3Options {
  std::size_t step_limit = 50;
  std::size_t max_states = 10000;
};

/// Breadth-first exploration of derivations from every clause head. Each
/// tree along the way must satisfy the GC2 condition and stay within
/// budget. A derivation stops once every open leaf either has no step
/// clause or lies below a same-predicate ancestor forming a guarded loop.
/// Derivations still open at the step limit make the check fail.
StageResult gc3_program(const Program& p, const Budget& b,
                        const Gc3Options& opts = {});

enum class Verdict { kGuarded, kUnguarded };
std::string_view to_string(Verdict v);

struct GuardReport {
  Verdict verdict = Verdict::kGuarded;
  std::vector<HeadCheck> checks;    // every line, in check order
  std::vector<HeadCheck> failures;  // failing lines, sorted by clause
  double elapsed_seconds = 0;
};

/// GC1, then GC2, then GC3, stopping after the first stage with failures.
GuardReport check_program(const Program& p, const Budget& b,
                          const Gc3Options& opts = {});

/// One `GC<k> <head>: pass|fail` line per check with its detail, then
/// `verdict: ...` and `gc-time: <seconds>`.
std::string render_report(const GuardReport& r);

}  // namespace coalp
