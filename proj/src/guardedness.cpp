#include "coalp/guardedness.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <iomanip>
#include <sstream>

#include "coalp/derivation.hpp"

namespace coalp {

namespace {

std::string show(const Signature& f) {
  const std::string name = f.name == kConsFunctor ? "'.'" : f.name;
  return name + "/" + std::to_string(f.arity);
}

bool same_predicate(const Atom& a, const Atom& b) {
  return a.predicate == b.predicate && a.arity() == b.arity();
}

bool guarded_loop_leaf(const AndNode& n,
                       std::span<const AndNode* const> ancestors) {
  return std::any_of(ancestors.begin(), ancestors.end(), [&](const AndNode* a) {
    return same_predicate(a->label, n.label) && gc1_pair(a->label, n.label).pass;
  });
}

HeadCheck loop_failure(Check check, const Clause& c, const LoopEvidence& e,
                       std::string_view prefix) {
  HeadCheck h{check, c.source_index, c.head, false, {}, e};
  h.detail = std::string(prefix) + "unguarded loop " + to_string(e.ancestor) +
             " / " + to_string(e.descendant);
  return h;
}

}  // namespace

std::string_view to_string(Check c) {
  switch (c) {
    case Check::kGC1: return "GC1";
    case Check::kGC2: return "GC2";
    case Check::kGC3: return "GC3";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  return v == Verdict::kGuarded ? "guarded" : "unguarded";
}

CheckOutcome gc1_clause(const Clause& c) {
  std::vector<const Atom*> recursive;
  for (const Atom& b : c.body) {
    if (same_predicate(b, c.head)) recursive.push_back(&b);
  }
  if (recursive.empty()) return {true, "no recursive call"};
  const std::set<Signature> symbols = symbols_of(c.head);
  if (symbols.empty()) return {false, "no function symbol in head arguments"};
  for (const Signature& f : symbols) {
    const std::size_t in_head = count_symbol(c.head, f);
    const bool reduced =
        std::all_of(recursive.begin(), recursive.end(), [&](const Atom* b) {
          return count_symbol(*b, f) < in_head;
        });
    if (reduced) {
      std::size_t most = 0;
      for (const Atom* b : recursive) most = std::max(most, count_symbol(*b, f));
      return {true, show(f) + " reduced " + std::to_string(in_head) + " -> " +
                        std::to_string(most)};
    }
  }
  return {false, "no function symbol reduced from head to " +
                     to_string(*recursive.front())};
}

CheckOutcome gc1_pair(const Atom& ancestor, const Atom& descendant) {
  return gc1_clause(Clause{ancestor, {descendant}, 0});
}

std::optional<LoopEvidence> find_unguarded_loop(const CoTree& t) {
  std::optional<LoopEvidence> found;
  t.visit([&](const AndNode& n, const NodePath&,
              std::span<const AndNode* const> ancestors) {
    if (found) return;
    for (const AndNode* a : ancestors) {
      if (!same_predicate(a->label, n.label)) continue;
      if (!gc1_pair(a->label, n.label).pass) {
        found = LoopEvidence{signature(n.label), a->label, n.label, false};
        return;
      }
    }
  });
  return found;
}

StageResult gc1_program(const Program& p) {
  StageResult r;
  for (const Clause& c : p.clauses) {
    CheckOutcome o = gc1_clause(c);
    r.pass = r.pass && o.pass;
    r.heads.push_back({Check::kGC1, c.source_index, c.head, o.pass,
                       std::move(o.detail), std::nullopt});
  }
  return r;
}

StageResult gc2_program(const Program& p, const Budget& b) {
  StageResult r;
  for (const Clause& c : p.clauses) {
    Expansion e = expand_to_budget(p, CoTree(c.head), b);
    auto loop = find_unguarded_loop(e.tree);
    HeadCheck h{Check::kGC2, c.source_index, c.head, true, {}, std::nullopt};
    if (e.outcome == ExpansionOutcome::kBudgetExceeded) {
      h = loop ? loop_failure(Check::kGC2, c, *loop, "tree exceeds budget; ")
               : HeadCheck{Check::kGC2, c.source_index, c.head, false,
                           "tree exceeds budget", std::nullopt};
    } else if (loop) {
      h = loop_failure(Check::kGC2, c, *loop, "");
    } else {
      h.detail = "tree of " + std::to_string(e.tree.node_count()) + " nodes";
    }
    r.pass = r.pass && h.pass;
    r.heads.push_back(std::move(h));
  }
  return r;
}

namespace {

struct Gc3State {
  Goal goal;
  std::size_t steps = 0;
};

HeadCheck gc3_head(const Program& p, const Clause& c, const Budget& b,
                   const Gc3Options& opts) {
  HeadCheck h{Check::kGC3, c.source_index, c.head, true, {}, std::nullopt};
  ExpansionOutcome outcome = ExpansionOutcome::kComplete;
  std::deque<Gc3State> queue;
  queue.push_back({start_goal(p, c.head, b, &outcome), 0});

  auto fails = [&](const Goal& g, ExpansionOutcome o) {
    auto loop = find_unguarded_loop(g.tree);
    if (o == ExpansionOutcome::kBudgetExceeded) {
      h = loop ? loop_failure(Check::kGC3, c, *loop, "tree exceeds budget; ")
               : HeadCheck{Check::kGC3, c.source_index, c.head, false,
                           "tree exceeds budget at " + to_string(g.atom),
                           std::nullopt};
      return true;
    }
    if (loop) {
      h = loop_failure(Check::kGC3, c, *loop, "");
      return true;
    }
    return false;
  };
  if (fails(queue.front().goal, outcome)) return h;

  const NodeFilter open_leaf = [](const AndNode& n,
                                  std::span<const AndNode* const> ancestors) {
    return n.status != NodeStatus::kExpanded && !guarded_loop_leaf(n, ancestors);
  };

  std::size_t visited = 0;
  std::size_t closed = 0;
  while (!queue.empty()) {
    Gc3State s = std::move(queue.front());
    queue.pop_front();
    if (++visited > opts.max_states) {
      h.pass = false;
      h.detail = "inconclusive after " + std::to_string(opts.max_states) +
                 " derivation states";
      return h;
    }
    auto target = select_node(p, s.goal, open_leaf);
    if (!target) {
      ++closed;
      continue;
    }
    if (s.steps >= opts.step_limit) {
      h.pass = false;
      h.detail = "inconclusive: derivation from " + to_string(s.goal.atom) +
                 " still open after " + std::to_string(opts.step_limit) +
                 " steps";
      return h;
    }
    for (std::size_t k : step_clauses(p, s.goal, *target)) {
      auto step = derive_step(p, s.goal, *target, k, b);
      if (!step) continue;
      if (fails(step->goal, step->expansion)) return h;
      queue.push_back({std::move(step->goal), s.steps + 1});
    }
  }
  h.detail = std::to_string(closed) + " derivation" + (closed == 1 ? "" : "s") +
             " closed or looping guardedly";
  return h;
}

}  // namespace

StageResult gc3_program(const Program& p, const Budget& b,
                        const Gc3Options& opts) {
  StageResult r;
  for (const Clause& c : p.clauses) {
    HeadCheck h = gc3_head(p, c, b, opts);
    r.pass = r.pass && h.pass;
    r.heads.push_back(std::move(h));
  }
  return r;
}

GuardReport check_program(const Program& p, const Budget& b,
                          const Gc3Options& opts) {
  const auto start = std::chrono::steady_clock::now();
  GuardReport report;
  auto take = [&](StageResult stage) {
    for (HeadCheck& h : stage.heads) report.checks.push_back(std::move(h));
    return stage.pass;
  };
  take(gc1_program(p)) && take(gc2_program(p, b)) && take(gc3_program(p, b, opts));

  for (const HeadCheck& h : report.checks) {
    if (!h.pass) report.failures.push_back(h);
  }
  std::stable_sort(report.failures.begin(), report.failures.end(),
                   [](const HeadCheck& a, const HeadCheck& b) {
                     return a.clause_index < b.clause_index;
                   });
  report.verdict =
      report.failures.empty() ? Verdict::kGuarded : Verdict::kUnguarded;
  report.elapsed_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return report;
}

std::string render_report(const GuardReport& r) {
  std::ostringstream os;
  for (const HeadCheck& h : r.checks) {
    os << to_string(h.check) << ' ' << h.head << ": "
       << (h.pass ? "pass" : "fail") << " — " << h.detail << '\n';
  }
  os << "verdict: " << to_string(r.verdict) << '\n';
  os << "gc-time: " << std::fixed << std::setprecision(6) << r.elapsed_seconds
     << '\n';
  return os.str();
}

}  // namespace coalp
