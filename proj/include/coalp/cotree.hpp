#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coalp/substitution.hpp"
#include "coalp/term.hpp"

namespace coalp {

enum class NodeStatus {
  kFrontier,  // not yet expanded
  kExpanded,  // at least one clause head term-matches the label
  kDeadEnd,   // expanded, no clause head term-matches the label
};

std::string_view to_string(NodeStatus s);

struct OrNode;

struct AndNode {
  Atom label;
  NodeStatus status = NodeStatus::kFrontier;
  std::vector<OrNode> or_children;  // ordered by clause index

  const OrNode* or_child(std::size_t clause_index) const;
  OrNode* or_child(std::size_t clause_index);
};

/// One clause whose renamed head term-matches the parent label. A fact
/// clause gives an or-node without children, drawn as the box leaf.
struct OrNode {
  std::size_t clause_index = 0;    // 1-based, program order
  std::uint32_t rename_index = 0;  // index the clause was renamed apart with
  Substitution matcher;            // apply(matcher, renamed head) == label
  std::vector<AndNode> and_children;

  bool is_box() const { return and_children.empty(); }
};

bool operator==(const AndNode& a, const AndNode& b);
bool operator==(const OrNode& a, const OrNode& b);

/// Tree expansion limits. Nodes counts and-nodes plus or-nodes; depth
/// counts and-node levels below the root.
struct Budget {
  std::size_t max_nodes = 1000;
  std::size_t max_depth = 100;

  bool valid() const { return max_nodes > 0 && max_depth > 0; }
};

/// Address of an and-node: from the root, each step picks the or-child for
/// `clause_index` and then its `child`-th and-child. Paths stay valid when
/// a substitution adds or-children, since or-children are keyed by clause.
struct PathStep {
  std::size_t clause_index = 0;
  std::size_t child = 0;

  friend bool operator==(const PathStep&, const PathStep&) = default;
  friend auto operator<=>(const PathStep&, const PathStep&) = default;
};
using NodePath = std::vector<PathStep>;

std::string to_string(const NodePath& path);

class CoTree {
 public:
  /// A single frontier node labelled `goal`.
  explicit CoTree(Atom goal);

  const AndNode& root() const { return root_; }
  AndNode& root() { return root_; }

  const AndNode* find(const NodePath& path) const;
  AndNode* find(const NodePath& path);

  /// Rename indices handed out so far are all below this value.
  std::uint32_t next_index() const { return next_index_; }
  std::uint32_t take_index() { return next_index_++; }
  void reserve_indices_above(std::uint32_t index);

  std::size_t node_count() const;
  std::size_t and_node_count() const;
  std::size_t depth() const;
  bool has_frontier() const;

  /// Preorder walk (parent before children, left to right). The callback
  /// receives the node, its path, and its ancestors from the root down.
  using Visitor = std::function<void(const AndNode&, const NodePath&,
                                     std::span<const AndNode* const>)>;
  void visit(const Visitor& fn) const;

  /// Every variable occurring in a label.
  std::vector<Var> vars() const;

  friend bool operator==(const CoTree& a, const CoTree& b);

 private:
  AndNode root_;
  std::uint32_t next_index_ = 1;
};

CoTree new_cotree(Atom goal);

/// Applies `s` to every label and matcher. Node statuses are left as they
/// were; expand_to_budget() re-examines them.
CoTree apply(const Substitution& s, const CoTree& t);

enum class ExpansionOutcome { kComplete, kBudgetExceeded };
std::string_view to_string(ExpansionOutcome o);

struct Expansion {
  CoTree tree;
  ExpansionOutcome outcome = ExpansionOutcome::kComplete;
};

/// Expands the frontier node at `path`: one or-child per clause (program
/// order) whose head, renamed apart, term-matches the label.
CoTree expand_node(const Program& p, CoTree t, const NodePath& path);

/// Breadth-first, leftmost-first expansion until no node is left to
/// examine or the budget would be exceeded. Already expanded nodes are
/// re-examined and gain or-children for clauses that now term-match, which
/// is what re-expansion after a substitution requires.
Expansion expand_to_budget(const Program& p, CoTree t, const Budget& b);

/// Same fixpoint, but `pick(n)` chooses which of the n pending nodes to
/// examine next. Any scheduler yields the same tree up to variable names.
Expansion expand_with_scheduler(const Program& p, CoTree t, const Budget& b,
                                const std::function<std::size_t(std::size_t)>& pick);

/// Decides whether an and-node that is not closed by a box may still count
/// as closed. Receives the node and its ancestors.
using LeafAcceptor =
    std::function<bool(const AndNode&, std::span<const AndNode* const>)>;

struct SuccessReport {
  /// (and-node, chosen clause index) for every selected expanded node, in
  /// preorder.
  std::vector<std::pair<NodePath, std::size_t>> choices;
  /// Open leaves admitted by the acceptor, if any.
  std::vector<NodePath> accepted_leaves;
};

/// Chooses one or-child per selected and-node, lowest clause index first,
/// so that every selected branch ends in a box (or in a leaf admitted by
/// `accept`).
std::optional<SuccessReport> find_success_subtree(
    const CoTree& t, const LeafAcceptor& accept = nullptr);

}  // namespace coalp
