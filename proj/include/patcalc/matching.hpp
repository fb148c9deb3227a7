#pragma once

#include <optional>

#include "patcalc/term.hpp"

namespace patcalc {

/// Matched(θ) when the value is engaged, NoMatch otherwise. NoMatch covers
/// both structural failure and a clash in the disjoint union of a
/// non-linear pattern.
using MatchOutcome = std::optional<Substitution>;

/// Matching of a pattern against a term that shares no variables with it.
/// Throws PreconditionError when fv(p) and fv(m) overlap.
MatchOutcome match_pattern(const Pattern& p, const Term& m);
bool matches(const Pattern& p, const Term& m);

/// The same rules without the variable-disjointness check. Matching is
/// insensitive to the names of the pattern's variables, so callers that
/// match a binder against an argument use this instead of renaming first.
MatchOutcome match_structural(const Pattern& p, const Term& m);
bool matches_structural(const Pattern& p, const Term& m);

/// γ = (νθ)|fv(p), after checking that p matches νM with exactly γ.
/// Requires match_pattern(p, m) == θ and fv(p) disjoint from var(ν).
Substitution match_under_subst(const Pattern& p, const Term& m, const Substitution& theta,
                               const Substitution& nu);

}  // namespace patcalc
