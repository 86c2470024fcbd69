#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coalp/cotree.hpp"
#include "coalp/substitution.hpp"
#include "coalp/term.hpp"

namespace coalp {

/// <A, T>: an atomic goal together with its coinductive tree.
struct Goal {
  Atom atom;
  CoTree tree;
};

/// Builds the goal for `atom` and expands its tree to budget.
Goal start_goal(const Program& p, const Atom& atom, const Budget& b,
                ExpansionOutcome* outcome = nullptr);

struct Resolvent {
  NodePath path;
  Atom node_atom;
  std::size_t clause_index = 0;
  Substitution mgu;  // restricted to the variables of the goal tree
};

enum class RunStatus { kSuccess, kExhausted, kBudgetExceeded, kObservationLimit };
std::string_view to_string(RunStatus s);

enum class Strategy { kInductivePriority };

struct RunConfig {
  Budget budget;
  std::size_t observe_depth = 10;
  std::size_t max_solutions = 1;
  /// Step limit for queries with an inductive root predicate.
  std::size_t max_steps = 100;
  /// Cap on search states visited by enumerate_solutions.
  std::size_t max_states = 200000;
  Strategy strategy = Strategy::kInductivePriority;
};

struct DerivationTrace {
  std::vector<Goal> goals;
  std::vector<Resolvent> resolvents;
  Substitution answer;  // composed mgus restricted to the query variables
  RunStatus status = RunStatus::kExhausted;
  std::optional<SuccessReport> success;
};

struct StepResult {
  Goal goal;
  Resolvent resolvent;
  ExpansionOutcome expansion = ExpansionOutcome::kComplete;
};

/// Clauses (in program order) whose renamed head unifies with the label at
/// `path` by an mgu that is non-empty on the tree's variables.
std::vector<std::size_t> step_clauses(const Program& p, const Goal& g,
                                      const NodePath& path);

/// One coinductive derivation step. Absent when the clause does not unify
/// with the target label or the mgu is empty on the tree.
std::optional<StepResult> derive_step(const Program& p, const Goal& g,
                                      const NodePath& target,
                                      std::size_t clause_index,
                                      const Budget& b);

struct Selection {
  NodePath path;
  std::size_t clause_index = 0;
};

/// Filter for select_node(); receives the node and its ancestors.
using NodeFilter =
    std::function<bool(const AndNode&, std::span<const AndNode* const>)>;

/// First node with at least one step clause: inductive predicates before
/// coinductive ones, then preorder.
std::optional<NodePath> select_node(const Program& p, const Goal& g,
                                    const NodeFilter& eligible = nullptr);

/// select_node() plus the lowest step clause of that node.
std::optional<Selection> select_resolvent(const Program& p, const Goal& g);

/// Leaf rule used to close a goal whose root predicate is inductive: an
/// open leaf of a coinductive predicate counts as closed when it still
/// unifies with a clause head, sits below a same-predicate ancestor with a
/// guarded loop, and shares no variable with the root. Goals with a
/// coinductive root get no acceptor and close only with boxes.
LeafAcceptor success_acceptor(const Program& p, const Atom& root);

std::optional<SuccessReport> find_success(const Program& p, const Goal& g);

/// Single canonical derivation, no backtracking.
DerivationTrace run_query(const Program& p, const Atom& goal,
                          const RunConfig& cfg);

struct Enumeration {
  std::vector<DerivationTrace> solutions;
  /// Branches cut by the budget or by the step bound, at most one per status.
  std::vector<DerivationTrace> incomplete;
  /// kSuccess when at least one solution was found; otherwise the reason
  /// the search stopped.
  RunStatus status = RunStatus::kExhausted;
};

/// Iterative deepening over derivation steps. Solutions come in order of
/// derivation length, then canonical choice order, without duplicates up
/// to renaming.
Enumeration enumerate_solutions(const Program& p, const Atom& goal,
                                const RunConfig& cfg);

/// `step i: node=<atom> clause=<k> mgu={...}` per resolvent, then
/// `status=<status> answer={...}`.
std::string render_trace(const DerivationTrace& t);

/// "X = [0, s(0)], Y = Z" over the query variables that the answer binds;
/// "true" when none is bound.
std::string render_answer(const Atom& goal, const Substitution& answer);

}  // namespace coalp
