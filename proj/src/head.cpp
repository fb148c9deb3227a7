#include "patcalc/head.hpp"

#include "patcalc/matching.hpp"
#include "patcalc/syntax.hpp"

namespace patcalc {

std::string to_string(HeadRule r) {
    switch (r) {
        case HeadRule::HApp1: return "HApp1";
        case HeadRule::HBeta: return "HBeta";
        case HeadRule::HPat: return "HPat";
        case HeadRule::PatHead: return "PatHead";
        case HeadRule::Pat1: return "Pat1";
        case HeadRule::Pat2: return "Pat2";
    }
    return "?";
}

Position HeadJustification::position() const {
    switch (rule) {
        case HeadRule::HBeta:
            return {};
        case HeadRule::HApp1:
        case HeadRule::Pat1:
            return inner->position().under(Dir::Fun);
        case HeadRule::HPat:
        case HeadRule::Pat2:
            return inner->position().under(Dir::Arg);
        case HeadRule::PatHead:
            return inner->position();
    }
    return {};
}

std::string HeadJustification::to_sexp() const {
    std::string out = "(" + to_string(rule);
    if (rule == HeadRule::HBeta || rule == HeadRule::Pat2) out += " \"" + to_string(witness) + "\"";
    if (inner) out += " " + inner->to_sexp();
    return out + ")";
}

namespace {

HeadJustificationPtr make(HeadRule r, HeadJustificationPtr inner, Substitution w = {}) {
    return std::make_shared<const HeadJustification>(HeadJustification{r, std::move(inner), std::move(w)});
}

}  // namespace

std::optional<HeadStep> head_step(const Term& m) {
    if (!m.is_app()) return std::nullopt;
    const Term& f = m.fun();
    if (f.is_abs()) {
        if (auto theta = match_structural(f.binder(), m.arg())) {
            return HeadStep{apply_subst(*theta, f.body()), make(HeadRule::HBeta, nullptr, *theta), {}};
        }
        if (auto inner = pattern_head_step(f.binder(), m.arg())) {
            return HeadStep{Term::app(f, inner->result), make(HeadRule::HPat, inner->justification),
                            inner->position.under(Dir::Arg)};
        }
        return std::nullopt;
    }
    if (auto inner = head_step(f)) {
        return HeadStep{Term::app(inner->result, m.arg()), make(HeadRule::HApp1, inner->justification),
                        inner->position.under(Dir::Fun)};
    }
    return std::nullopt;
}

std::optional<HeadStep> pattern_head_step(const Pattern& p, const Term& m) {
    if (p.is_var()) return std::nullopt;
    if (auto h = head_step(m)) {
        return HeadStep{h->result, make(HeadRule::PatHead, h->justification), h->position};
    }
    // Pat1/Pat2 decompose a data term D M against d q.
    if (!p.is_app() || !m.is_app() || !is_data_term(m.fun())) return std::nullopt;
    const Pattern& d = p.head();
    const Term& left = m.fun();
    if (auto w = match_structural(d, left)) {
        if (auto inner = pattern_head_step(p.arg(), m.arg())) {
            return HeadStep{Term::app(left, inner->result), make(HeadRule::Pat2, inner->justification, *w),
                            inner->position.under(Dir::Arg)};
        }
        return std::nullopt;
    }
    if (auto inner = pattern_head_step(d, left)) {
        return HeadStep{Term::app(inner->result, m.arg()), make(HeadRule::Pat1, inner->justification),
                        inner->position.under(Dir::Fun)};
    }
    return std::nullopt;
}

std::vector<HeadRule> applicable_head_rules(const Term& m) {
    std::vector<HeadRule> out;
    if (!m.is_app()) return out;
    const Term& f = m.fun();
    if (head_step(f)) out.push_back(HeadRule::HApp1);
    if (f.is_abs() && matches_structural(f.binder(), m.arg())) out.push_back(HeadRule::HBeta);
    if (f.is_abs() && pattern_head_step(f.binder(), m.arg())) out.push_back(HeadRule::HPat);
    return out;
}

std::vector<HeadRule> applicable_pattern_rules(const Pattern& p, const Term& m) {
    std::vector<HeadRule> out;
    if (p.is_var()) return out;
    if (head_step(m)) out.push_back(HeadRule::PatHead);
    if (p.is_app() && m.is_app() && is_data_term(m.fun())) {
        if (pattern_head_step(p.head(), m.fun())) out.push_back(HeadRule::Pat1);
        if (matches_structural(p.head(), m.fun()) && pattern_head_step(p.arg(), m.arg())) {
            out.push_back(HeadRule::Pat2);
        }
    }
    return out;
}

namespace {

template <typename StepFn>
HeadRun iterate(const Term& m, std::size_t fuel, StepFn&& next) {
    HeadRun run{{}, m, false};
    while (auto s = next(run.final_term)) {
        if (run.steps.size() == fuel) {
            run.exhausted = true;
            break;
        }
        run.steps.push_back(StepRecord{run.final_term, s->position, s->result});
        run.final_term = s->result;
    }
    return run;
}

}  // namespace

HeadRun head_reduce_star(const Term& m, std::size_t fuel) {
    return iterate(m, fuel, [](const Term& t) { return head_step(t); });
}

HeadRun pattern_head_reduce_star(const Pattern& p, const Term& m, std::size_t fuel) {
    return iterate(m, fuel, [&p](const Term& t) { return pattern_head_step(p, t); });
}

std::optional<Term> replay_head_chain(const Term& from, const std::vector<StepRecord>& steps,
                                      const std::optional<Pattern>& p) {
    Term cur = from;
    for (const auto& s : steps) {
        if (!alpha_eq(cur, s.source)) return std::nullopt;
        auto h = p ? pattern_head_step(*p, cur) : head_step(cur);
        if (!h || h->position != s.position || !alpha_eq(h->result, s.result)) return std::nullopt;
        cur = s.result;
    }
    return cur;
}

}  // namespace patcalc
