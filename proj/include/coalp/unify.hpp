#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coalp/substitution.hpp"
#include "coalp/term.hpp"

namespace coalp {

/// Most general unifier with occurs check. The result is idempotent.
/// When two distinct variables meet, the variable from the right-hand side
/// is bound to the one on the left, so unify(goal, renamed_head) keeps the
/// goal's variables in place.
std::optional<Substitution> unify(const Term& a, const Term& b);
std::optional<Substitution> unify(const Atom& a, const Atom& b);

/// One-sided matcher: theta with goal == apply(theta, pattern), binding only
/// variables of `pattern`. Variables of `goal` are treated as constants.
std::optional<Substitution> term_match(const Atom& goal, const Atom& pattern);
std::optional<Substitution> term_match(const Term& goal, const Term& pattern);

/// Gives every variable of `c` the rename index `fresh_index`.
Clause rename_apart(const Clause& c, std::uint32_t fresh_index);
Atom rename_apart(const Atom& a, std::uint32_t fresh_index);

/// Renames variables to V0, V1, ... in order of first occurrence, jointly
/// across all atoms. Two atom lists are variants iff canonical forms agree.
std::vector<Atom> canonical_variant(std::span<const Atom> atoms);
Atom canonical_variant(const Atom& a);
bool are_variants(std::span<const Atom> a, std::span<const Atom> b);
bool are_variants(const Atom& a, const Atom& b);
bool are_variants(const Term& a, const Term& b);

/// True when `instance` = apply(theta, general) for some theta.
bool is_instance_of(const Atom& instance, const Atom& general);

/// Equal up to a bijective variable renaming applied to both domain and
/// range.
bool are_variant_substitutions(const Substitution& a, const Substitution& b);

}  // namespace coalp
