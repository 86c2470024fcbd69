#include "coalp/unify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

namespace coalp {

namespace {

// Triangular bindings: values may mention other bound variables.
using Triangular = std::map<Var, Term>;

Term deref(const Triangular& tri, Term t) {
  while (t.is_variable()) {
    auto it = tri.find(t.var());
    if (it == tri.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs_deref(const Triangular& tri, const Var& v, const Term& t) {
  Term d = deref(tri, t);
  if (d.is_variable()) return d.var() == v;
  return std::any_of(d.args().begin(), d.args().end(),
                     [&](const Term& a) { return occurs_deref(tri, v, a); });
}

Term resolve(const Triangular& tri, const Term& t) {
  Term d = deref(tri, t);
  if (d.is_variable() || d.arity() == 0) return d;
  std::vector<Term> args;
  args.reserve(d.arity());
  for (const Term& a : d.args()) args.push_back(resolve(tri, a));
  return Term::compound(d.functor(), std::move(args));
}

bool unify_into(Triangular& tri, const Term& left, const Term& right) {
  std::vector<std::pair<Term, Term>> work{{left, right}};
  while (!work.empty()) {
    auto [a, b] = std::move(work.back());
    work.pop_back();
    a = deref(tri, a);
    b = deref(tri, b);
    if (a.is_variable() && b.is_variable()) {
      if (a.var() != b.var()) tri.emplace(b.var(), a);
      continue;
    }
    if (b.is_variable()) {
      if (occurs_deref(tri, b.var(), a)) return false;
      tri.emplace(b.var(), a);
      continue;
    }
    if (a.is_variable()) {
      if (occurs_deref(tri, a.var(), b)) return false;
      tri.emplace(a.var(), b);
      continue;
    }
    if (a.functor() != b.functor() || a.arity() != b.arity()) return false;
    for (std::size_t i = a.arity(); i-- > 0;) {
      work.emplace_back(a.args()[i], b.args()[i]);
    }
  }
  return true;
}

Substitution solved_form(const Triangular& tri) {
  Substitution out;
  for (const auto& [v, t] : tri) out.bind(v, resolve(tri, t));
  return out;
}

Term rename_term(const Term& t, std::uint32_t index) {
  if (t.is_variable()) return Term::variable(t.var().name, index);
  if (t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(rename_term(a, index));
  return Term::compound(t.functor(), std::move(args));
}

std::uint32_t max_index(const Atom& a) {
  std::uint32_t m = 0;
  for (const Var& v : vars_of(a)) m = std::max(m, v.index);
  return m;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Triangular tri;
  if (!unify_into(tri, a, b)) return std::nullopt;
  return solved_form(tri);
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.arity() != b.arity()) return std::nullopt;
  Triangular tri;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!unify_into(tri, a.args[i], b.args[i])) return std::nullopt;
  }
  return solved_form(tri);
}

std::optional<Substitution> term_match(const Term& goal, const Term& pattern) {
  // Identity matches (a pattern variable that also occurs in the goal) are
  // tracked here even though Substitution never stores X -> X.
  std::map<Var, Term> seen;
  std::vector<std::pair<Term, Term>> work{{goal, pattern}};
  while (!work.empty()) {
    auto [g, p] = std::move(work.back());
    work.pop_back();
    if (p.is_variable()) {
      auto [it, inserted] = seen.emplace(p.var(), g);
      if (!inserted && !(it->second == g)) return std::nullopt;
      continue;
    }
    if (g.is_variable() || g.functor() != p.functor() ||
        g.arity() != p.arity()) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < g.arity(); ++i) {
      work.emplace_back(g.args()[i], p.args()[i]);
    }
  }
  Substitution theta;
  for (const auto& [v, t] : seen) theta.bind(v, t);
  return theta;
}

std::optional<Substitution> term_match(const Atom& goal, const Atom& pattern) {
  if (goal.predicate != pattern.predicate || goal.arity() != pattern.arity()) {
    return std::nullopt;
  }
  std::vector<Term> gs(goal.args.begin(), goal.args.end());
  std::vector<Term> ps(pattern.args.begin(), pattern.args.end());
  return term_match(Term::compound("$args", std::move(gs)),
                    Term::compound("$args", std::move(ps)));
}

Atom rename_apart(const Atom& a, std::uint32_t fresh_index) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(rename_term(t, fresh_index));
  return out;
}

Clause rename_apart(const Clause& c, std::uint32_t fresh_index) {
  Clause out{rename_apart(c.head, fresh_index), {}, c.source_index};
  out.body.reserve(c.body.size());
  for (const Atom& b : c.body) out.body.push_back(rename_apart(b, fresh_index));
  return out;
}

std::vector<Atom> canonical_variant(std::span<const Atom> atoms) {
  Substitution renaming;
  std::size_t next = 0;
  for (const Var& v : vars_of(atoms)) {
    renaming.bind(v, Term::variable("V" + std::to_string(next++), 0));
  }
  return coalp::apply(renaming, atoms);
}

Atom canonical_variant(const Atom& a) {
  return canonical_variant(std::span<const Atom>(&a, 1)).front();
}

bool are_variants(std::span<const Atom> a, std::span<const Atom> b) {
  if (a.size() != b.size()) return false;
  return canonical_variant(a) == canonical_variant(b);
}

bool are_variants(const Atom& a, const Atom& b) {
  return are_variants(std::span<const Atom>(&a, 1),
                      std::span<const Atom>(&b, 1));
}

bool are_variants(const Term& a, const Term& b) {
  return are_variants(Atom{"$t", {a}}, Atom{"$t", {b}});
}

bool is_instance_of(const Atom& instance, const Atom& general) {
  // Rename per variable (not per index) so distinct variables of `general`
  // that share a name stay distinct.
  const std::uint32_t fresh = max_index(instance) + 1;
  Substitution apart;
  for (const Var& v : vars_of(general)) {
    apart.bind(v, Term::variable(v.name + "#" + std::to_string(v.index), fresh));
  }
  return term_match(instance, apply(apart, general)).has_value();
}

bool are_variant_substitutions(const Substitution& a, const Substitution& b) {
  if (a.size() != b.size()) return false;
  auto as_atoms = [](const Substitution& s) {
    std::vector<Atom> out;
    for (const auto& [v, t] : s) {
      out.push_back(Atom{"$bind", {Term::variable(v), t}});
    }
    return out;
  };
  const std::vector<Atom> lhs = as_atoms(a);
  std::vector<Atom> rhs = as_atoms(b);
  std::vector<std::size_t> perm(rhs.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<Atom> permuted;
    for (std::size_t i : perm) permuted.push_back(rhs[i]);
    if (are_variants(lhs, permuted)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace coalp
