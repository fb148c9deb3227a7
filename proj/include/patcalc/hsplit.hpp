#pragma once

#include <optional>
#include <vector>

#include "patcalc/development.hpp"
#include "patcalc/reduction.hpp"

namespace patcalc {

/// M →h* mid ⊳int N (or M →p* mid ⊳int_p N for the pattern form).
struct HSplit {
    std::vector<StepRecord> head_steps;
    Term mid;
    IntDevProof internal;
};

/// Factors a development into head steps followed by an internal development.
/// Throws std::logic_error if the construction breaks, which would be a bug.
/// When mid is already the target the internal part is IRefl.
HSplit h_split(const DevProof& d);
/// Same relative to p: a chain of p-steps followed by ⊳int_p.
HSplit h_split_pattern(const DevProof& d, const Pattern& p);
/// h_split_pattern for several patterns, sharing the work on common subterms.
std::vector<HSplit> h_split_patterns(const DevProof& d, const std::vector<Pattern>& ps);

/// Validates a split of m ▷ n: the chain replays from m (as head steps, or
/// p-steps when p is given), ends at mid, and the internal proof replays
/// from mid to n with the right index.
bool check_hsplit(const HSplit& s, const Term& m, const Term& n, const std::optional<Pattern>& p = std::nullopt);

}  // namespace patcalc
