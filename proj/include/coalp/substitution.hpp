#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coalp/term.hpp"

namespace coalp {

/// Finite map from variables to terms. Identity bindings X -> X are never
/// stored. Substitutions returned by unify() and compose() of idempotent
/// inputs are idempotent.
class Substitution {
 public:
  using Map = std::map<Var, Term>;

  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const Var, Term>> init);

  /// Binds v to t, replacing any previous binding. Binding v to itself
  /// removes v from the domain.
  void bind(const Var& v, Term t);
  const Term* find(const Var& v) const;
  bool binds(const Var& v) const { return bindings_.contains(v); }

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Map& bindings() const { return bindings_; }
  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }

  std::vector<Var> domain() const;
  /// Keeps only bindings whose variable is in `keep`.
  Substitution restricted_to(std::span<const Var> keep) const;
  bool is_idempotent() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map bindings_;
};

/// Simultaneous replacement of bound variables.
Term apply(const Substitution& s, const Term& t);
Atom apply(const Substitution& s, const Atom& a);
std::vector<Atom> apply(const Substitution& s, std::span<const Atom> atoms);
Clause apply(const Substitution& s, const Clause& c);

/// The substitution that first applies s1 and then s2:
/// apply(compose(s1, s2), t) == apply(s2, apply(s1, t)).
Substitution compose(const Substitution& s1, const Substitution& s2);

/// Renders as {X/t, Y/u} in variable order.
std::string to_string(const Substitution& s);
std::ostream& operator<<(std::ostream& os, const Substitution& s);

}  // namespace coalp
