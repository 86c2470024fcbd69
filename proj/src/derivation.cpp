#include "coalp/derivation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "coalp/guardedness.hpp"
#include "coalp/unify.hpp"

namespace coalp {

namespace {

std::optional<Substitution> restricted_mgu(const Program& p,
                                           std::span<const Var> tree_vars,
                                           const Atom& label,
                                           std::size_t clause_index,
                                           std::uint32_t index) {
  const Clause& c = p.clause(clause_index);
  if (c.head.predicate != label.predicate || c.head.arity() != label.arity()) {
    return std::nullopt;
  }
  auto theta = unify(label, rename_apart(c.head, index));
  if (!theta) return std::nullopt;
  Substitution r = theta->restricted_to(tree_vars);
  if (r.empty()) return std::nullopt;
  return r;
}

bool has_step(const Program& p, std::span<const Var> tree_vars,
              const Atom& label, std::uint32_t index) {
  for (std::size_t k = 1; k <= p.clauses.size(); ++k) {
    if (restricted_mgu(p, tree_vars, label, k, index)) return true;
  }
  return false;
}

bool unifies_with_some_head(const Program& p, const Atom& a,
                            std::uint32_t index) {
  for (const Clause& c : p.clauses) {
    if (unify(a, rename_apart(c.head, index))) return true;
  }
  return false;
}

bool shares_var(const Atom& a, const Atom& b) {
  const std::vector<Var> vs = vars_of(b);
  for (const Var& v : vars_of(a)) {
    if (std::find(vs.begin(), vs.end(), v) != vs.end()) return true;
  }
  return false;
}

Substitution compose_all(const std::vector<Resolvent>& rs) {
  Substitution acc;
  for (const Resolvent& r : rs) acc = compose(acc, r.mgu);
  return acc;
}

}  // namespace

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kSuccess: return "success";
    case RunStatus::kExhausted: return "exhausted";
    case RunStatus::kBudgetExceeded: return "budget-exceeded";
    case RunStatus::kObservationLimit: return "observation-limit";
  }
  return "?";
}

Goal start_goal(const Program& p, const Atom& atom, const Budget& b,
                ExpansionOutcome* outcome) {
  Expansion e = expand_to_budget(p, CoTree(atom), b);
  if (outcome != nullptr) *outcome = e.outcome;
  return Goal{atom, std::move(e.tree)};
}

std::vector<std::size_t> step_clauses(const Program& p, const Goal& g,
                                      const NodePath& path) {
  std::vector<std::size_t> out;
  const AndNode* node = g.tree.find(path);
  if (node == nullptr) return out;
  const std::vector<Var> vars = g.tree.vars();
  for (std::size_t k = 1; k <= p.clauses.size(); ++k) {
    if (restricted_mgu(p, vars, node->label, k, g.tree.next_index())) {
      out.push_back(k);
    }
  }
  return out;
}

std::optional<StepResult> derive_step(const Program& p, const Goal& g,
                                      const NodePath& target,
                                      std::size_t clause_index,
                                      const Budget& b) {
  const AndNode* node = g.tree.find(target);
  if (node == nullptr || clause_index == 0 ||
      clause_index > p.clauses.size()) {
    return std::nullopt;
  }
  CoTree tree = g.tree;
  const std::uint32_t index = tree.take_index();
  auto theta =
      restricted_mgu(p, g.tree.vars(), node->label, clause_index, index);
  if (!theta) return std::nullopt;

  StepResult out{Goal{apply(*theta, g.atom), apply(*theta, tree)},
                 Resolvent{target, node->label, clause_index, *theta},
                 ExpansionOutcome::kComplete};
  Expansion e = expand_to_budget(p, std::move(out.goal.tree), b);
  out.goal.tree = std::move(e.tree);
  out.expansion = e.outcome;
  return out;
}

std::optional<NodePath> select_node(const Program& p, const Goal& g,
                                    const NodeFilter& eligible) {
  const std::vector<Var> vars = g.tree.vars();
  const std::uint32_t index = g.tree.next_index();
  std::optional<NodePath> inductive;
  std::optional<NodePath> coinductive;
  g.tree.visit([&](const AndNode& n, const NodePath& path,
                   std::span<const AndNode* const> ancestors) {
    if (inductive) return;
    const bool co = p.is_coinductive(n.label);
    if (co && coinductive) return;
    if (eligible && !eligible(n, ancestors)) return;
    if (!has_step(p, vars, n.label, index)) return;
    (co ? coinductive : inductive) = path;
  });
  return inductive ? inductive : coinductive;
}

std::optional<Selection> select_resolvent(const Program& p, const Goal& g) {
  auto path = select_node(p, g);
  if (!path) return std::nullopt;
  std::vector<std::size_t> ks = step_clauses(p, g, *path);
  if (ks.empty()) return std::nullopt;
  return Selection{std::move(*path), ks.front()};
}

LeafAcceptor success_acceptor(const Program& p, const Atom& root) {
  if (p.is_coinductive(root)) return nullptr;
  return [&p, root](const AndNode& n, std::span<const AndNode* const> ancestors) {
    if (!p.is_coinductive(n.label)) return false;
    if (shares_var(n.label, root)) return false;
    std::uint32_t index = 1;
    for (const Var& v : vars_of(n.label)) index = std::max(index, v.index + 1);
    if (!unifies_with_some_head(p, n.label, index)) return false;
    for (const AndNode* a : ancestors) {
      if (signature(a->label) == signature(n.label) &&
          gc1_pair(a->label, n.label).pass) {
        return true;
      }
    }
    return false;
  };
}

std::optional<SuccessReport> find_success(const Program& p, const Goal& g) {
  return find_success_subtree(g.tree, success_acceptor(p, g.atom));
}

DerivationTrace run_query(const Program& p, const Atom& goal,
                          const RunConfig& cfg) {
  DerivationTrace trace;
  ExpansionOutcome outcome = ExpansionOutcome::kComplete;
  trace.goals.push_back(start_goal(p, goal, cfg.budget, &outcome));
  const bool coinductive = p.is_coinductive(goal);
  const std::vector<Var> goal_vars = vars_of(goal);
  Substitution acc;

  auto finish = [&](RunStatus s) {
    trace.status = s;
    trace.answer = acc.restricted_to(goal_vars);
    return trace;
  };

  if (outcome == ExpansionOutcome::kBudgetExceeded) {
    return finish(RunStatus::kBudgetExceeded);
  }
  for (;;) {
    const Goal& g = trace.goals.back();
    if (auto s = find_success(p, g)) {
      trace.success = std::move(s);
      return finish(RunStatus::kSuccess);
    }
    const std::size_t steps = trace.resolvents.size();
    if (coinductive && steps >= cfg.observe_depth) {
      return finish(RunStatus::kObservationLimit);
    }
    if (!coinductive && steps >= cfg.max_steps) {
      return finish(RunStatus::kBudgetExceeded);
    }
    auto sel = select_resolvent(p, g);
    if (!sel) return finish(RunStatus::kExhausted);
    auto step = derive_step(p, g, sel->path, sel->clause_index, cfg.budget);
    if (!step) return finish(RunStatus::kExhausted);
    acc = compose(acc, step->resolvent.mgu);
    trace.resolvents.push_back(std::move(step->resolvent));
    trace.goals.push_back(std::move(step->goal));
    if (step->expansion == ExpansionOutcome::kBudgetExceeded) {
      return finish(RunStatus::kBudgetExceeded);
    }
  }
}

namespace {

// Depth-bounded search for one iteration of enumerate_solutions(). The
// success subtree is built top-down: every and-node on it is either
// committed to one of its or-children, accepted as a guarded open leaf,
// or still undecided. An undecided node is decided for free by picking an
// existing or-child, or by one derivation step that creates it.
class Search {
 public:
  Search(const Program& p, const Atom& goal, const RunConfig& cfg,
         Enumeration& out, std::set<std::string>& seen)
      : p_(p), goal_(goal), goal_vars_(vars_of(goal)), cfg_(cfg),
        coinductive_(p.is_coinductive(goal)), out_(out), seen_(seen) {}

  bool cut() const { return cut_; }
  bool stopped() const { return stopped_; }

  void run(Goal start, std::size_t steps) {
    goals_.push_back(std::move(start));
    dfs(steps);
  }

 private:
  struct Open {
    NodePath path;
    const AndNode* node;
    std::vector<const AndNode*> ancestors;
  };

  void walk(const AndNode& n, NodePath& path,
            std::vector<const AndNode*>& ancestors, std::vector<Open>& open,
            bool& valid) const {
    if (accepted_.contains(path)) {
      if (!acceptor_ || !acceptor_(n, ancestors)) valid = false;
      return;
    }
    auto it = commit_.find(path);
    const OrNode* o = it == commit_.end() ? nullptr : n.or_child(it->second);
    if (o == nullptr) {
      open.push_back({path, &n, ancestors});
      return;
    }
    ancestors.push_back(&n);
    for (std::size_t i = 0; i < o->and_children.size(); ++i) {
      path.push_back({o->clause_index, i});
      walk(o->and_children[i], path, ancestors, open, valid);
      path.pop_back();
    }
    ancestors.pop_back();
  }

  void record_incomplete(RunStatus s) {
    for (const DerivationTrace& t : out_.incomplete) {
      if (t.status == s) return;
    }
    DerivationTrace t;
    t.goals.assign(goals_.begin(), goals_.end());
    t.resolvents = resolvents_;
    t.answer = compose_all(resolvents_).restricted_to(goal_vars_);
    t.status = s;
    out_.incomplete.push_back(std::move(t));
  }

  void record_solution() {
    DerivationTrace t;
    t.answer = compose_all(resolvents_).restricted_to(goal_vars_);
    const std::string key = to_string(canonical_variant(apply(t.answer, goal_)));
    if (!seen_.insert(key).second) return;
    t.goals.assign(goals_.begin(), goals_.end());
    t.resolvents = resolvents_;
    t.status = RunStatus::kSuccess;
    SuccessReport report;
    for (const auto& [path, k] : commit_) report.choices.emplace_back(path, k);
    report.accepted_leaves.assign(accepted_.begin(), accepted_.end());
    t.success = std::move(report);
    out_.solutions.push_back(std::move(t));
    if (out_.solutions.size() >= cfg_.max_solutions) stopped_ = true;
  }

  void dfs(std::size_t steps_left) {
    if (stopped_) return;
    if (++states_ > cfg_.max_states) {
      record_incomplete(RunStatus::kBudgetExceeded);
      stopped_ = true;
      return;
    }
    const Goal& g = goals_.back();
    acceptor_ = success_acceptor(p_, g.atom);

    std::vector<Open> open;
    bool valid = true;
    NodePath path;
    std::vector<const AndNode*> ancestors;
    walk(g.tree.root(), path, ancestors, open, valid);
    if (!valid) return;
    if (open.empty()) {
      record_solution();
      return;
    }
    const Open* pick = &open.front();
    for (const Open& o : open) {
      if (!p_.is_coinductive(o.node->label)) {
        pick = &o;
        break;
      }
    }
    const NodePath target = pick->path;
    const AndNode& node = *pick->node;

    for (const OrNode& o : node.or_children) {
      commit_[target] = o.clause_index;
      dfs(steps_left);
      commit_.erase(target);
      if (stopped_) return;
    }
    acceptor_ = success_acceptor(p_, g.atom);
    if (node.status != NodeStatus::kExpanded && acceptor_ &&
        acceptor_(node, pick->ancestors)) {
      accepted_.insert(target);
      dfs(steps_left);
      accepted_.erase(target);
      if (stopped_) return;
    }
    const std::vector<std::size_t> ks = step_clauses(p_, goals_.back(), target);
    if (ks.empty()) return;
    if (steps_left == 0) {
      cut_ = true;
      record_incomplete(coinductive_ ? RunStatus::kObservationLimit
                                     : RunStatus::kBudgetExceeded);
      return;
    }
    for (std::size_t k : ks) {
      auto step = derive_step(p_, goals_.back(), target, k, cfg_.budget);
      if (!step) continue;
      resolvents_.push_back(std::move(step->resolvent));
      goals_.push_back(std::move(step->goal));
      if (step->expansion == ExpansionOutcome::kBudgetExceeded) {
        record_incomplete(RunStatus::kBudgetExceeded);
      } else {
        commit_[target] = k;
        dfs(steps_left - 1);
        commit_.erase(target);
      }
      goals_.pop_back();
      resolvents_.pop_back();
      if (stopped_) return;
    }
  }

  const Program& p_;
  const Atom& goal_;
  const std::vector<Var> goal_vars_;
  const RunConfig& cfg_;
  const bool coinductive_;
  Enumeration& out_;
  std::set<std::string>& seen_;

  std::deque<Goal> goals_;
  std::vector<Resolvent> resolvents_;
  std::map<NodePath, std::size_t> commit_;
  std::set<NodePath> accepted_;
  LeafAcceptor acceptor_;
  std::size_t states_ = 0;
  bool cut_ = false;
  bool stopped_ = false;
};

}  // namespace

Enumeration enumerate_solutions(const Program& p, const Atom& goal,
                                const RunConfig& cfg) {
  Enumeration out;
  ExpansionOutcome outcome = ExpansionOutcome::kComplete;
  Goal start = start_goal(p, goal, cfg.budget, &outcome);
  if (outcome == ExpansionOutcome::kBudgetExceeded) {
    DerivationTrace t;
    t.goals.push_back(std::move(start));
    t.status = RunStatus::kBudgetExceeded;
    out.incomplete.push_back(std::move(t));
    out.status = RunStatus::kBudgetExceeded;
    return out;
  }
  const std::size_t bound =
      p.is_coinductive(goal) ? cfg.observe_depth : cfg.max_steps;
  std::set<std::string> seen;
  for (std::size_t depth = 0; depth <= bound; ++depth) {
    out.incomplete.clear();
    Search search(p, goal, cfg, out, seen);
    search.run(start, depth);
    if (search.stopped() || !search.cut()) break;
  }
  if (!out.solutions.empty()) {
    out.status = RunStatus::kSuccess;
  } else if (!out.incomplete.empty()) {
    out.status = out.incomplete.front().status;
    for (const DerivationTrace& t : out.incomplete) {
      if (t.status == RunStatus::kBudgetExceeded) out.status = t.status;
    }
  } else {
    out.status = RunStatus::kExhausted;
  }
  return out;
}

std::string render_trace(const DerivationTrace& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.resolvents.size(); ++i) {
    const Resolvent& r = t.resolvents[i];
    os << "step " << i + 1 << ": node=" << r.node_atom
       << " clause=" << r.clause_index << " mgu=" << r.mgu << '\n';
  }
  os << "status=" << to_string(t.status) << " answer=" << t.answer << '\n';
  return os.str();
}

std::string render_answer(const Atom& goal, const Substitution& answer) {
  std::ostringstream os;
  bool first = true;
  for (const Var& v : vars_of(goal)) {
    const Term* t = answer.find(v);
    if (t == nullptr) continue;
    if (!first) os << ", ";
    os << v << " = " << *t;
    first = false;
  }
  return first ? "true" : os.str();
}

}  // namespace coalp
