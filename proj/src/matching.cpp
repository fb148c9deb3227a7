#include "patcalc/matching.hpp"

#include <algorithm>

#include "patcalc/syntax.hpp"

namespace patcalc {

namespace {

bool match_into(const Pattern& p, const Term& m, Substitution& acc) {
    switch (p.kind()) {
        case PatternKind::Var:
            if (acc.contains(p.name())) return false;
            acc.bind(p.name(), m);
            return true;
        case PatternKind::Const:
            return m.is_const() && m.name() == p.name();
        case PatternKind::App:
            // The head sub-match binds a set disjoint from the argument's only
            // when the pattern is linear; a repeat shows up as a rebinding.
            return m.is_app() && match_into(p.head(), m.fun(), acc) && match_into(p.arg(), m.arg(), acc);
    }
    return false;
}

void require_disjoint(const Pattern& p, const Term& m) {
    for (const auto& x : p.vars()) {
        if (m.has_free(x)) {
            throw PreconditionError("pattern " + to_string(p) + " shares variable " + x + " with " +
                                    to_string(m));
        }
    }
}

}  // namespace

MatchOutcome match_structural(const Pattern& p, const Term& m) {
    Substitution acc;
    if (!match_into(p, m, acc)) return std::nullopt;
    return acc;
}

bool matches_structural(const Pattern& p, const Term& m) {
    switch (p.kind()) {
        case PatternKind::Var:
            return true;
        case PatternKind::Const:
            return m.is_const() && m.name() == p.name();
        case PatternKind::App:
            if (!is_linear(p)) return false;
            return m.is_app() && matches_structural(p.head(), m.fun()) &&
                   matches_structural(p.arg(), m.arg());
    }
    return false;
}

MatchOutcome match_pattern(const Pattern& p, const Term& m) {
    require_disjoint(p, m);
    return match_structural(p, m);
}

bool matches(const Pattern& p, const Term& m) {
    require_disjoint(p, m);
    return matches_structural(p, m);
}

Substitution match_under_subst(const Pattern& p, const Term& m, const Substitution& theta,
                               const Substitution& nu) {
    auto direct = match_pattern(p, m);
    if (!direct || !alpha_eq(*direct, theta)) {
        throw PreconditionError("substitution is not the match of " + to_string(p) + " against " +
                                to_string(m));
    }
    const NameSet nu_vars = nu.vars();
    for (const auto& x : p.vars()) {
        if (nu_vars.count(x)) throw PreconditionError("pattern variable " + x + " occurs in var(nu)");
    }
    Substitution gamma = subst_restrict(subst_compose(nu, theta), pattern_vars(p));
    auto after = match_structural(p, apply_subst(nu, m));
    if (!after || !alpha_eq(*after, gamma)) {
        throw std::logic_error("matching is not compatible with substitution on " + to_string(p));
    }
    return gamma;
}

}  // namespace patcalc
