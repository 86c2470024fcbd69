#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace coalp {

/// A logic variable. Source variables carry index 0; standardized-apart
/// copies carry the index of the renaming that produced them.
struct Var {
  std::string name;
  std::uint32_t index = 0;

  friend bool operator==(const Var&, const Var&) = default;
  friend std::strong_ordering operator<=>(const Var& a, const Var& b) {
    if (auto c = a.name.compare(b.name); c != 0) {
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.index <=> b.index;
  }
};

/// Reserved functor names for list sugar.
inline constexpr const char* kConsFunctor = ".";
inline constexpr const char* kNilFunctor = "[]";

/// Immutable first-order term: a variable or a compound f(t1,...,tn).
/// Constants are compounds with no arguments. Copies share structure.
class Term {
 public:
  static Term variable(std::string name, std::uint32_t index = 0);
  static Term variable(Var v);
  static Term compound(std::string functor, std::vector<Term> args = {});
  static Term constant(std::string name) { return compound(std::move(name)); }
  static Term cons(Term head, Term tail);
  static Term nil();
  /// [e1, ..., en | tail]
  static Term list(std::vector<Term> elems, Term tail = nil());

  bool is_variable() const;
  bool is_compound() const { return !is_variable(); }
  const Var& var() const;
  const std::string& functor() const;
  std::span<const Term> args() const;
  std::size_t arity() const { return args().size(); }
  bool is_cons() const;
  bool is_nil() const;

  bool is_ground() const;
  std::size_t depth() const;
  /// Number of variable and functor occurrences.
  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Q(t1,...,tn). Predicates and functors live in separate namespaces.
struct Atom {
  std::string predicate;
  std::vector<Term> args;

  std::size_t arity() const { return args.size(); }
  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

/// Identity of a predicate or function symbol.
struct Signature {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend std::strong_ordering operator<=>(const Signature& a,
                                          const Signature& b) {
    if (auto c = a.name.compare(b.name); c != 0) {
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.arity <=> b.arity;
  }
};

inline Signature signature(const Atom& a) { return {a.predicate, a.arity()}; }

/// H <- B1, ..., Bn, stored un-renamed. source_index is 1-based.
struct Clause {
  Atom head;
  std::vector<Atom> body;
  std::size_t source_index = 0;

  bool is_fact() const { return body.empty(); }
  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Program {
  std::vector<Clause> clauses;
  std::set<Signature> coinductive;

  bool is_coinductive(const Atom& a) const {
    return coinductive.contains(signature(a));
  }
  /// 1-based lookup.
  const Clause& clause(std::size_t index) const { return clauses.at(index - 1); }
};

// Variable collection, in order of first occurrence, without duplicates.
void collect_vars(const Term& t, std::vector<Var>& out);
void collect_vars(const Atom& a, std::vector<Var>& out);
std::vector<Var> vars_of(const Term& t);
std::vector<Var> vars_of(const Atom& a);
std::vector<Var> vars_of(std::span<const Atom> atoms);
bool occurs(const Var& v, const Term& t);
bool occurs(const Var& v, const Atom& a);

/// Number of occurrences of the function symbol `f` in the arguments of `a`.
std::size_t count_symbol(const Atom& a, const Signature& f);
/// All function symbols occurring in the arguments of `a`.
std::set<Signature> symbols_of(const Atom& a);

std::string to_string(const Var& v);
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Clause& c);
std::string to_string(const Program& p);

std::ostream& operator<<(std::ostream& os, const Var& v);
std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Atom& a);
std::ostream& operator<<(std::ostream& os, const Clause& c);

}  // namespace coalp
