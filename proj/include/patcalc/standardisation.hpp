#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "patcalc/development.hpp"
#include "patcalc/hsplit.hpp"
#include "patcalc/reduction.hpp"

namespace patcalc {

// ---------------------------------------------------------------------------
// Postponement and bifurcation

struct Postponed {
    StepRecord step;  // M →h N' (or M →p N')
    DevProof dev;     // N' ▷ R
};

/// From M ⊳int N and a head step N →h R, a head step M →h N' with N' ▷ R.
/// Throws std::invalid_argument when the inputs do not compose.
Postponed postpone(const IntDevProof& internal, const StepRecord& head);
/// Same for M ⊳int_p N and N →p R.
Postponed postpone_pattern(const Pattern& p, const IntDevProof& internal, const StepRecord& step);

struct Commuted {
    std::vector<StepRecord> head_steps;  // M →h* N'
    IntDevProof internal;                // N' ⊳int R
};

/// M ⊳int N →h R becomes M →h* N' ⊳int R.
Commuted commute_head(const IntDevProof& internal, const StepRecord& head);

struct Bifurcation {
    std::vector<StepRecord> head_steps;   // M →h* R
    std::vector<IntDevProof> internal;    // R ⊳int ... ⊳int N
};

/// Splits M ▷ ... ▷ N into head steps and internal developments.
Bifurcation bifurcate(const Term& m, const std::vector<DevProof>& chain);

// ---------------------------------------------------------------------------
// Standard sequences

enum class StdRule { StdHead, StdAbs, StdApp, StdVar, StdConst };
std::string to_string(StdRule r);

struct StdNode;
using StdProof = std::shared_ptr<const StdNode>;

/// StdHead: first (the sequence without its first term).
/// StdAbs: binder, first (the body sequence).
/// StdApp: first (function side, j terms), second (argument side).
/// StdVar/StdConst: term.
struct StdNode {
    StdRule rule;
    std::vector<Term> terms;
    std::optional<Pattern> binder;
    StdProof first;
    StdProof second;
};

struct StdSequence {
    std::vector<Term> terms;
    StdProof proof;
};

/// Rebuilds the term list from a derivation, checking every premise
/// (head steps, binder uniformity, shared junction terms). Returns nothing
/// when some rule is misapplied.
std::optional<std::vector<Term>> replay_standard(const StdProof& proof);

/// A derivation for the sequence, or nothing when it is not standard.
std::optional<StdProof> check_standard(const std::vector<Term>& terms);

/// A standard sequence from m to the end of the development chain.
StdSequence standardise(const Term& m, const std::vector<DevProof>& chain);

/// One contraction at pos as a development: DBeta there, DRefl elsewhere.
DevProof step_to_development(const Term& m, const Position& pos);
/// Standardises the reduction that contracts the given positions in order.
StdSequence standardise_reduction(const Term& m, const std::vector<Position>& positions);

}  // namespace patcalc
