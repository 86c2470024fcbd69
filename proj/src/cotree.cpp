#include "coalp/cotree.hpp"

#include <algorithm>
#include <sstream>

#include "coalp/unify.hpp"

namespace coalp {

namespace {

std::uint32_t max_index(const Atom& a) {
  std::uint32_t m = 0;
  for (const Var& v : vars_of(a)) m = std::max(m, v.index);
  return m;
}

std::size_t count_nodes(const AndNode& n, bool with_or) {
  std::size_t total = 1;
  for (const OrNode& o : n.or_children) {
    if (with_or) ++total;
    for (const AndNode& c : o.and_children) total += count_nodes(c, with_or);
  }
  return total;
}

std::size_t depth_of(const AndNode& n) {
  std::size_t d = 0;
  for (const OrNode& o : n.or_children) {
    for (const AndNode& c : o.and_children) d = std::max(d, 1 + depth_of(c));
  }
  return d;
}

bool any_frontier(const AndNode& n) {
  if (n.status == NodeStatus::kFrontier) return true;
  return std::any_of(n.or_children.begin(), n.or_children.end(),
                     [](const OrNode& o) {
                       return std::any_of(o.and_children.begin(),
                                          o.and_children.end(), any_frontier);
                     });
}

void visit_node(const AndNode& n, NodePath& path,
                std::vector<const AndNode*>& ancestors,
                const CoTree::Visitor& fn) {
  fn(n, path, ancestors);
  ancestors.push_back(&n);
  for (const OrNode& o : n.or_children) {
    for (std::size_t i = 0; i < o.and_children.size(); ++i) {
      path.push_back({o.clause_index, i});
      visit_node(o.and_children[i], path, ancestors, fn);
      path.pop_back();
    }
  }
  ancestors.pop_back();
}

AndNode apply_node(const Substitution& s, const AndNode& n) {
  AndNode out{apply(s, n.label), n.status, {}};
  out.or_children.reserve(n.or_children.size());
  for (const OrNode& o : n.or_children) {
    OrNode copy{o.clause_index, o.rename_index, {}, {}};
    for (const auto& [v, t] : o.matcher) copy.matcher.bind(v, apply(s, t));
    copy.and_children.reserve(o.and_children.size());
    for (const AndNode& c : o.and_children) {
      copy.and_children.push_back(apply_node(s, c));
    }
    out.or_children.push_back(std::move(copy));
  }
  return out;
}

// Or-children for clauses that term-match `node.label` and are not yet
// attached, in clause order. Rename indices are taken from `tree`.
std::vector<OrNode> new_matches(const Program& p, CoTree& tree,
                                const AndNode& node) {
  std::vector<OrNode> out;
  for (const Clause& c : p.clauses) {
    if (c.head.predicate != node.label.predicate ||
        c.head.arity() != node.label.arity()) {
      continue;
    }
    if (node.or_child(c.source_index) != nullptr) continue;
    const std::uint32_t index = tree.next_index();
    Clause renamed = rename_apart(c, index);
    auto theta = term_match(node.label, renamed.head);
    if (!theta) continue;
    tree.take_index();
    OrNode o{c.source_index, index, *theta, {}};
    o.and_children.reserve(renamed.body.size());
    for (const Atom& b : renamed.body) {
      o.and_children.push_back(AndNode{apply(*theta, b), NodeStatus::kFrontier, {}});
    }
    out.push_back(std::move(o));
  }
  return out;
}

void attach(AndNode& node, std::vector<OrNode> added) {
  for (OrNode& o : added) node.or_children.push_back(std::move(o));
  std::stable_sort(node.or_children.begin(), node.or_children.end(),
                   [](const OrNode& a, const OrNode& b) {
                     return a.clause_index < b.clause_index;
                   });
  node.status = node.or_children.empty() ? NodeStatus::kDeadEnd
                                         : NodeStatus::kExpanded;
}

struct Pending {
  AndNode* node;
  std::size_t depth;
};

}  // namespace

std::string_view to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::kFrontier: return "frontier";
    case NodeStatus::kExpanded: return "expanded";
    case NodeStatus::kDeadEnd: return "dead-end";
  }
  return "?";
}

std::string_view to_string(ExpansionOutcome o) {
  return o == ExpansionOutcome::kComplete ? "complete" : "budget-exceeded";
}

std::string to_string(const NodePath& path) {
  std::ostringstream os;
  os << "root";
  for (const PathStep& s : path) os << '/' << s.clause_index << '.' << s.child;
  return os.str();
}

const OrNode* AndNode::or_child(std::size_t clause_index) const {
  for (const OrNode& o : or_children) {
    if (o.clause_index == clause_index) return &o;
  }
  return nullptr;
}

OrNode* AndNode::or_child(std::size_t clause_index) {
  for (OrNode& o : or_children) {
    if (o.clause_index == clause_index) return &o;
  }
  return nullptr;
}

bool operator==(const AndNode& a, const AndNode& b) {
  return a.label == b.label && a.status == b.status &&
         a.or_children == b.or_children;
}

bool operator==(const OrNode& a, const OrNode& b) {
  return a.clause_index == b.clause_index && a.rename_index == b.rename_index &&
         a.matcher == b.matcher && a.and_children == b.and_children;
}

CoTree::CoTree(Atom goal) : root_{std::move(goal), NodeStatus::kFrontier, {}} {
  reserve_indices_above(max_index(root_.label));
}

void CoTree::reserve_indices_above(std::uint32_t index) {
  next_index_ = std::max(next_index_, index + 1);
}

const AndNode* CoTree::find(const NodePath& path) const {
  const AndNode* n = &root_;
  for (const PathStep& s : path) {
    const OrNode* o = n->or_child(s.clause_index);
    if (o == nullptr || s.child >= o->and_children.size()) return nullptr;
    n = &o->and_children[s.child];
  }
  return n;
}

AndNode* CoTree::find(const NodePath& path) {
  return const_cast<AndNode*>(std::as_const(*this).find(path));
}

std::size_t CoTree::node_count() const { return count_nodes(root_, true); }
std::size_t CoTree::and_node_count() const { return count_nodes(root_, false); }
std::size_t CoTree::depth() const { return depth_of(root_); }
bool CoTree::has_frontier() const { return any_frontier(root_); }

void CoTree::visit(const Visitor& fn) const {
  NodePath path;
  std::vector<const AndNode*> ancestors;
  visit_node(root_, path, ancestors, fn);
}

std::vector<Var> CoTree::vars() const {
  std::vector<Var> out;
  visit([&](const AndNode& n, const NodePath&, std::span<const AndNode* const>) {
    collect_vars(n.label, out);
  });
  return out;
}

bool operator==(const CoTree& a, const CoTree& b) {
  return a.next_index_ == b.next_index_ && a.root_ == b.root_;
}

CoTree new_cotree(Atom goal) { return CoTree(std::move(goal)); }

CoTree apply(const Substitution& s, const CoTree& t) {
  CoTree out = t;
  out.root() = apply_node(s, t.root());
  for (const auto& [_, term] : s) {
    for (const Var& v : vars_of(term)) out.reserve_indices_above(v.index);
  }
  return out;
}

CoTree expand_node(const Program& p, CoTree t, const NodePath& path) {
  AndNode* node = t.find(path);
  if (node == nullptr) return t;
  std::vector<OrNode> added = new_matches(p, t, *node);
  attach(*node, std::move(added));
  return t;
}

Expansion expand_with_scheduler(
    const Program& p, CoTree t, const Budget& b,
    const std::function<std::size_t(std::size_t)>& pick) {
  std::size_t count = t.node_count();
  std::vector<Pending> pending{{&t.root(), 0}};
  while (!pending.empty()) {
    const std::size_t at = std::min(pick(pending.size()), pending.size() - 1);
    Pending current = pending[at];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(at));
    AndNode& node = *current.node;

    std::vector<OrNode> added = new_matches(p, t, node);
    std::size_t extra = 0;
    bool has_children = false;
    for (const OrNode& o : added) {
      extra += 1 + o.and_children.size();
      has_children = has_children || !o.is_box();
    }
    if (count + extra > b.max_nodes ||
        (has_children && current.depth + 1 > b.max_depth)) {
      return {std::move(t), ExpansionOutcome::kBudgetExceeded};
    }
    count += extra;
    attach(node, std::move(added));
    // Children live in vectors that are not resized again during this
    // pass, so the pointers stay valid.
    for (OrNode& o : node.or_children) {
      for (AndNode& c : o.and_children) pending.push_back({&c, current.depth + 1});
    }
  }
  return {std::move(t), ExpansionOutcome::kComplete};
}

Expansion expand_to_budget(const Program& p, CoTree t, const Budget& b) {
  return expand_with_scheduler(p, std::move(t), b,
                               [](std::size_t) { return std::size_t{0}; });
}

namespace {

bool closes(const AndNode& n, NodePath& path,
            std::vector<const AndNode*>& ancestors, const LeafAcceptor& accept,
            SuccessReport& report) {
  const std::size_t mark_choices = report.choices.size();
  const std::size_t mark_leaves = report.accepted_leaves.size();
  ancestors.push_back(&n);
  for (const OrNode& o : n.or_children) {
    bool all = true;
    for (std::size_t i = 0; i < o.and_children.size() && all; ++i) {
      path.push_back({o.clause_index, i});
      all = closes(o.and_children[i], path, ancestors, accept, report);
      path.pop_back();
    }
    if (all) {
      ancestors.pop_back();
      report.choices.insert(
          report.choices.begin() + static_cast<std::ptrdiff_t>(mark_choices),
          {path, o.clause_index});
      return true;
    }
    report.choices.resize(mark_choices);
    report.accepted_leaves.resize(mark_leaves);
  }
  ancestors.pop_back();
  if (n.status != NodeStatus::kExpanded && accept &&
      accept(n, std::span<const AndNode* const>(ancestors))) {
    report.accepted_leaves.push_back(path);
    return true;
  }
  return false;
}

}  // namespace

std::optional<SuccessReport> find_success_subtree(const CoTree& t,
                                                  const LeafAcceptor& accept) {
  SuccessReport report;
  NodePath path;
  std::vector<const AndNode*> ancestors;
  if (!closes(t.root(), path, ancestors, accept, report)) return std::nullopt;
  return report;
}

}  // namespace coalp
