#include "coalp/substitution.hpp"

#include <algorithm>
#include <sstream>

namespace coalp {

Substitution::Substitution(
    std::initializer_list<std::pair<const Var, Term>> init) {
  for (const auto& [v, t] : init) bind(v, t);
}

void Substitution::bind(const Var& v, Term t) {
  if (t.is_variable() && t.var() == v) {
    bindings_.erase(v);
    return;
  }
  bindings_.insert_or_assign(v, std::move(t));
}

const Term* Substitution::find(const Var& v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::vector<Var> Substitution::domain() const {
  std::vector<Var> out;
  out.reserve(bindings_.size());
  for (const auto& [v, _] : bindings_) out.push_back(v);
  return out;
}

Substitution Substitution::restricted_to(std::span<const Var> keep) const {
  Substitution out;
  for (const auto& [v, t] : bindings_) {
    if (std::find(keep.begin(), keep.end(), v) != keep.end()) {
      out.bindings_.emplace(v, t);
    }
  }
  return out;
}

bool Substitution::is_idempotent() const {
  for (const auto& [_, t] : bindings_) {
    for (const Var& v : vars_of(t)) {
      if (binds(v)) return false;
    }
  }
  return true;
}

Term apply(const Substitution& s, const Term& t) {
  if (s.empty()) return t;
  if (t.is_variable()) {
    const Term* bound = s.find(t.var());
    return bound ? *bound : t;
  }
  if (t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(s, a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::compound(t.functor(), std::move(args)) : t;
}

Atom apply(const Substitution& s, const Atom& a) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(apply(s, t));
  return out;
}

std::vector<Atom> apply(const Substitution& s, std::span<const Atom> atoms) {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) out.push_back(apply(s, a));
  return out;
}

Clause apply(const Substitution& s, const Clause& c) {
  return Clause{apply(s, c.head), apply(s, std::span<const Atom>(c.body)),
                c.source_index};
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
  Substitution out;
  for (const auto& [v, t] : s1) out.bind(v, apply(s2, t));
  for (const auto& [v, t] : s2) {
    if (!s1.binds(v)) out.bind(v, t);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Substitution& s) {
  os << '{';
  bool first = true;
  for (const auto& [v, t] : s) {
    if (!first) os << ", ";
    first = false;
    os << v << '/' << t;
  }
  return os << '}';
}

std::string to_string(const Substitution& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

}  // namespace coalp
