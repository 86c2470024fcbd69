#pragma once

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coalp/derivation.hpp"
#include "coalp/parser.hpp"
#include "coalp/sld.hpp"
#include "coalp/substitution.hpp"
#include "coalp/term.hpp"

namespace coalp::testing {

std::string corpus_path(const std::string& file);
std::string golden_path(const std::string& file);
std::string read_text(const std::string& path);

Program program(const std::string& src);
Program corpus_program(const std::string& file);
Atom atom(const std::string& src);
Term term(const std::string& src);

// Small random syntax over variables X, Y, Z and symbols f/2, g/1, a/0.
class TermGen {
 public:
  explicit TermGen(std::uint32_t seed) : rng_(seed) {}

  Term term(int depth);
  Atom atom(int depth);
  /// Random idempotent substitution over X, Y, Z.
  Substitution substitution(int depth);
  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

/// Independent unifier: tries every assignment of the shared variables to
/// subterms of either side (or nothing) and checks equality.
std::optional<Substitution> brute_force_unify(const Term& a, const Term& b);

/// Answer set as canonical strings of apply(answer, goal).
std::set<std::string> answer_set(const Atom& goal,
                                 const std::vector<Substitution>& answers);
std::set<std::string> answer_set(const Atom& goal, const Enumeration& e);

// Random inductive programs over p/1, q/1, r/2 with symbols s/1, a/0, b/0.
struct RandomCase {
  Program program;
  Atom query;
};
RandomCase random_inductive_case(std::mt19937& rng);

/// Well-formedness check for the DOT subset emitted by render_dot().
bool valid_dot(const std::string& dot, std::string* why = nullptr);

/// render_text() lines of and-nodes at depth <= max_depth and their
/// or-lines.
std::string text_prefix(const CoTree& t, std::size_t max_depth);

}  // namespace coalp::testing
