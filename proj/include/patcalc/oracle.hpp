#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "patcalc/reduction.hpp"
#include "patcalc/term.hpp"

namespace patcalc {

/// Sizes count atom occurrences (variables and constants), binder patterns
/// included, so `\x.x` has size 2 and `\(A x).x` size 3.
struct UniverseConfig {
    std::vector<Name> constants{"A", "B"};
    std::vector<Name> variables{"x", "y"};
    std::size_t max_term_size = 6;
    std::size_t max_pattern_size = 3;
    bool allow_non_linear = true;
    std::size_t max_chain_length = 3;
};

/// Throws std::invalid_argument for an empty signature or a zero size bound.
void validate(const UniverseConfig& cfg);

/// Patterns by increasing size; within a size variables, then constants,
/// then applications ordered by head size, head, argument. Patterns that
/// differ only in variable names are kept apart, since they bind differently.
std::vector<Pattern> enumerate_patterns(const UniverseConfig& cfg);

/// Terms by increasing size, one representative per alpha class (the first
/// one generated). Within a size: variables, constants, abstractions
/// (binder order, then body order), then applications (function size,
/// function order, argument order). Binders range over the patterns of at
/// most max_pattern_size atoms that leave room for a body.
std::vector<Term> enumerate_terms(const UniverseConfig& cfg);

/// One-step reducts computed straight from SAppL/SAppR/SBeta/SAbs with a
/// matcher of its own, so it can check the reduction module.
std::vector<Term> rule_successors(const Term& m);

/// Independent matcher used by the oracle: returns the bindings or nothing.
std::optional<Substitution> oracle_match(const Pattern& p, const Term& m);

/// Every Q reachable from m by at most max_head head steps such that
/// Q ⊳int n holds.
std::vector<Term> brute_force_h_split(const Term& m, const Term& n, std::size_t max_head);

/// Every reduction sequence from m with at most `len` steps, as positions;
/// the empty sequence comes first, then depth-first in redex order.
std::vector<std::vector<Position>> enumerate_reduction_chains(const Term& m, std::size_t len);

/// Every sequence of at most max_terms terms starting at m generated by the
/// standard-sequence rules, produced forward from the rules themselves.
std::vector<std::vector<Term>> enumerate_standard_sequences(const Term& m, std::size_t max_terms);

/// Identity key for a term sequence up to alpha.
std::string sequence_key(const std::vector<Term>& terms);

}  // namespace patcalc
