#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "coalp/guardedness.hpp"
#include "coalp/render.hpp"
#include "coalp/unify.hpp"

namespace coalp::testing {

std::string corpus_path(const std::string& file) {
  return std::string(COALP_CORPUS_DIR) + "/" + file;
}

std::string golden_path(const std::string& file) {
  return std::string(COALP_GOLDEN_DIR) + "/" + file;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program program(const std::string& src) {
  ParseResult r = parse_program(src);
  if (!r.ok()) {
    throw std::runtime_error("parse failed: " + to_string(r.errors().front()));
  }
  return std::move(*r.program);
}

Program corpus_program(const std::string& file) {
  return program(read_text(corpus_path(file)));
}

Atom atom(const std::string& src) {
  QueryResult q = parse_query(src);
  if (!q.ok()) throw std::runtime_error("bad atom: " + src);
  return std::move(*q.atom);
}

Term term(const std::string& src) { return atom("t(" + src + ")").args.front(); }

namespace {

const char* const kVarNames[] = {"X", "Y", "Z"};

void subterms(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  if (t.is_variable()) return;
  for (const Term& a : t.args()) subterms(a, out);
}

Term resolve(const Substitution& s, const Term& t, std::size_t rounds,
             bool& cyclic) {
  Term cur = t;
  for (std::size_t i = 0; i < rounds; ++i) cur = apply(s, cur);
  cyclic = !(apply(s, cur) == cur);
  return cur;
}

}  // namespace

Term TermGen::term(int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int r = pick(rng_);
  if (depth <= 0 || r < 5) {
    if (r % 4 == 3) return Term::constant("a");
    return Term::variable(kVarNames[r % 3]);
  }
  if (r < 8) return Term::compound("f", {term(depth - 1), term(depth - 1)});
  return Term::compound("g", {term(depth - 1)});
}

Atom TermGen::atom(int depth) {
  std::uniform_int_distribution<int> arity(1, 2);
  Atom a{"p", {}};
  const int n = arity(rng_);
  for (int i = 0; i < n; ++i) a.args.push_back(term(depth));
  a.predicate = n == 1 ? "p" : "q";
  return a;
}

Substitution TermGen::substitution(int depth) {
  // Binds a random subset of X, Y, Z to terms over the remaining ones.
  std::vector<std::string> names(std::begin(kVarNames), std::end(kVarNames));
  std::shuffle(names.begin(), names.end(), rng_);
  std::uniform_int_distribution<int> count(0, 2);
  const int bound = count(rng_);
  const std::vector<std::string> free(names.begin() + bound, names.end());
  Substitution s;
  for (int i = 0; i < bound; ++i) {
    Term t = term(depth);
    Substitution onto;
    for (const Var& v : vars_of(t)) {
      if (std::find(free.begin(), free.end(), v.name) == free.end()) {
        onto.bind(v, free.empty() ? Term::constant("a")
                                  : Term::variable(free[rng_() % free.size()]));
      }
    }
    s.bind(Var{names[i], 0}, apply(onto, t));
  }
  return s;
}

std::optional<Substitution> brute_force_unify(const Term& a, const Term& b) {
  std::vector<Var> vars = vars_of(a);
  for (const Var& v : vars_of(b)) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  std::vector<Term> cands;
  subterms(a, cands);
  subterms(b, cands);
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  // choice[i] == cands.size() leaves vars[i] unbound.
  std::vector<std::size_t> choice(vars.size(), 0);
  for (;;) {
    Substitution s;
    bool usable = true;
    for (std::size_t i = 0; i < vars.size() && usable; ++i) {
      if (choice[i] == cands.size()) continue;
      const Term& t = cands[choice[i]];
      if (occurs(vars[i], t)) usable = false;
      s.bind(vars[i], t);
    }
    if (usable) {
      bool cyclic_a = false;
      bool cyclic_b = false;
      const Term ra = resolve(s, a, vars.size() + 1, cyclic_a);
      const Term rb = resolve(s, b, vars.size() + 1, cyclic_b);
      if (!cyclic_a && !cyclic_b && ra == rb) {
        Substitution solved;
        for (const Var& v : vars) {
          bool cyclic = false;
          solved.bind(v, resolve(s, Term::variable(v), vars.size() + 1, cyclic));
        }
        return solved;
      }
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] > cands.size()) choice[i++] = 0;
    if (i == choice.size()) return std::nullopt;
  }
}

std::set<std::string> answer_set(const Atom& goal,
                                 const std::vector<Substitution>& answers) {
  std::set<std::string> out;
  for (const Substitution& s : answers) {
    out.insert(to_string(canonical_variant(apply(s, goal))));
  }
  return out;
}

std::set<std::string> answer_set(const Atom& goal, const Enumeration& e) {
  std::vector<Substitution> answers;
  for (const DerivationTrace& t : e.solutions) answers.push_back(t.answer);
  return answer_set(goal, answers);
}

namespace {

Term random_term(std::mt19937& rng, int depth, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int r = pick(rng);
  if (depth <= 0 || r < 5) {
    if (!vars.empty() && r < 3) return Term::variable(vars[rng() % vars.size()]);
    return Term::constant(r % 2 == 0 ? "a" : "b");
  }
  if (r < 8) return Term::compound("s", {random_term(rng, depth - 1, vars)});
  return Term::compound("c", {random_term(rng, depth - 1, vars),
                              random_term(rng, depth - 1, vars)});
}

Atom random_atom(std::mt19937& rng, int depth, const std::vector<std::string>& vars) {
  static const std::pair<const char*, int> kPreds[] = {{"p", 1}, {"q", 1}, {"r", 2}};
  const auto& [name, arity] = kPreds[rng() % 3];
  Atom a{name, {}};
  for (int i = 0; i < arity; ++i) a.args.push_back(random_term(rng, depth, vars));
  return a;
}

}  // namespace

RandomCase random_inductive_case(std::mt19937& rng) {
  for (;;) {
    Program p;
    const std::size_t n = 2 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      Clause c;
      c.head = random_atom(rng, 2, {"X", "Y"});
      std::vector<std::string> body_vars{"W"};
      for (const Var& v : vars_of(c.head)) body_vars.push_back(v.name);
      const std::size_t body = rng() % 2 == 0 ? 0 : 1 + rng() % 2;
      for (std::size_t j = 0; j < body; ++j) {
        Atom b = random_atom(rng, 1, body_vars);
        for (Term& t : b.args) {
          if (rng() % 10 < 7) t = Term::variable(body_vars[rng() % body_vars.size()]);
        }
        c.body.push_back(std::move(b));
      }
      c.source_index = i + 1;
      p.clauses.push_back(std::move(c));
    }
    if (check_program(p, Budget{}).verdict != Verdict::kGuarded) continue;
    std::vector<std::string> qvars{"A"};
    if (rng() % 2 == 0) qvars.push_back("B");
    Atom q = p.clauses[rng() % p.clauses.size()].head;
    for (Term& t : q.args) {
      t = rng() % 5 < 3 ? Term::variable(qvars[rng() % qvars.size()])
                        : random_term(rng, 1, qvars);
    }
    return {std::move(p), std::move(q)};
  }
}

bool valid_dot(const std::string& dot, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  std::istringstream in(dot);
  std::string line;
  if (!std::getline(in, line) || !std::regex_match(line, std::regex(R"(digraph \w+ \{)"))) {
    return fail("bad header: " + line);
  }
  static const std::regex kDefault(R"(\s*node \[(\w+=("([^"\\]|\\.)*"|\w+)(, )?)+\];)");
  static const std::regex kNode(R"(\s*(n\d+) (\[(\w+=("([^"\\]|\\.)*"|\w+)(, )?)+\]);)");
  static const std::regex kEdge(R"(\s*(n\d+) -> (n\d+);)");
  std::set<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  bool closed = false;
  while (std::getline(in, line)) {
    if (closed) return fail("text after closing brace");
    std::smatch m;
    if (line == "}") {
      closed = true;
    } else if (std::regex_match(line, m, kNode)) {
      if (!nodes.insert(m[1]).second) return fail("duplicate node " + m[1].str());
    } else if (std::regex_match(line, m, kEdge)) {
      edges.emplace_back(m[1], m[2]);
    } else if (!std::regex_match(line, kDefault)) {
      return fail("unparsable line: " + line);
    }
  }
  if (!closed) return fail("missing closing brace");
  for (const auto& [from, to] : edges) {
    if (!nodes.contains(from) || !nodes.contains(to)) {
      return fail("edge to undeclared node " + from + " -> " + to);
    }
  }
  return true;
}

std::string text_prefix(const CoTree& t, std::size_t max_depth) {
  std::istringstream in(render_text(t));
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t indent = line.find_first_not_of(' ');
    if (indent <= 4 * max_depth) out << line << '\n';
  }
  return out.str();
}

}  // namespace coalp::testing
