#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "patcalc/reduction.hpp"
#include "patcalc/term.hpp"

namespace patcalc {

/// Rules of the head relation (HApp1, HBeta, HPat) and of the
/// pattern-relative relation (PatHead, Pat1, Pat2).
enum class HeadRule { HApp1, HBeta, HPat, PatHead, Pat1, Pat2 };

std::string to_string(HeadRule r);

struct HeadJustification;
using HeadJustificationPtr = std::shared_ptr<const HeadJustification>;

/// Derivation of a head step or of a pattern-relative step.
///
/// HBeta carries the match witness, Pat2 the witness that the left
/// component already matches; every other rule has exactly one premise.
struct HeadJustification {
    HeadRule rule;
    HeadJustificationPtr inner;
    Substitution witness;

    /// Where the contracted redex sits relative to the justified term.
    Position position() const;
    std::string to_sexp() const;
};

using PatJustification = HeadJustification;

struct HeadStep {
    Term result;
    HeadJustificationPtr justification;
    Position position;
};

/// The unique head reduct, if any.
std::optional<HeadStep> head_step(const Term& m);

/// The unique preferred step towards matching p, if any. Never defined for
/// variable patterns or when p already matches m.
std::optional<HeadStep> pattern_head_step(const Pattern& p, const Term& m);

/// Which of HApp1/HBeta/HPat have their premises satisfied at the root of m,
/// each checked on its own. Used to confirm the rules never overlap.
std::vector<HeadRule> applicable_head_rules(const Term& m);
/// Same for PatHead/Pat1/Pat2 relative to p.
std::vector<HeadRule> applicable_pattern_rules(const Pattern& p, const Term& m);

struct HeadRun {
    std::vector<StepRecord> steps;
    Term final_term;
    bool exhausted = false;
};

HeadRun head_reduce_star(const Term& m, std::size_t fuel);
HeadRun pattern_head_reduce_star(const Pattern& p, const Term& m, std::size_t fuel);

/// Checks that `steps` is a chain of head steps (or p-steps when `p` is
/// given) starting at `from`, comparing terms up to alpha. Returns the
/// endpoint, or nothing when some link is not the unique preferred step.
std::optional<Term> replay_head_chain(const Term& from, const std::vector<StepRecord>& steps,
                                      const std::optional<Pattern>& p = std::nullopt);

}  // namespace patcalc
