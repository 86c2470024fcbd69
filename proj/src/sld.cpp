#include "coalp/sld.hpp"

#include <algorithm>

#include "coalp/unify.hpp"

namespace coalp {

namespace {

struct Frame {
  SldGoal goal;
  std::size_t depth = 0;
  std::size_t next_clause = 0;
};

}  // namespace

SldResult sld_solve(const Program& p, const Atom& goal, std::size_t depth_limit,
                    std::size_t max_solutions) {
  SldResult result;
  const std::vector<Var> goal_vars = vars_of(goal);
  std::uint32_t fresh = 1;
  for (const Var& v : goal_vars) fresh = std::max(fresh, v.index + 1);
  std::size_t steps = 0;

  auto record = [&](SldEvent::Kind kind, const SldGoal& g, std::size_t depth) {
    result.events.push_back({kind, g.answer, depth, steps});
    if (kind == SldEvent::Kind::kAnswer) {
      result.answers.push_back(g.answer);
      if (result.answers.size() >= max_solutions) result.stopped = true;
    } else {
      result.depth_exceeded = true;
    }
  };

  std::vector<Frame> stack;
  stack.push_back({SldGoal{{goal}, {}}, 0, 0});
  while (!stack.empty() && !result.stopped) {
    Frame& f = stack.back();
    if (f.next_clause >= p.clauses.size()) {
      stack.pop_back();
      continue;
    }
    const Clause& c = p.clauses[f.next_clause++];
    const Atom& selected = f.goal.atoms.front();
    if (c.head.predicate != selected.predicate ||
        c.head.arity() != selected.arity()) {
      continue;
    }
    const Clause renamed = rename_apart(c, fresh++);
    auto theta = unify(selected, renamed.head);
    if (!theta) continue;
    ++steps;

    SldGoal next;
    next.atoms = coalp::apply(*theta, renamed.body);
    for (std::size_t i = 1; i < f.goal.atoms.size(); ++i) {
      next.atoms.push_back(apply(*theta, f.goal.atoms[i]));
    }
    next.answer = compose(f.goal.answer, *theta).restricted_to(goal_vars);
    const std::size_t depth = f.depth + 1;
    if (next.atoms.empty()) {
      record(SldEvent::Kind::kAnswer, next, depth);
    } else if (depth >= depth_limit) {
      record(SldEvent::Kind::kDepthExceeded, next, depth);
    } else {
      stack.push_back({std::move(next), depth, 0});
    }
  }
  return result;
}

}  // namespace coalp
