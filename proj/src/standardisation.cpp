#include "patcalc/standardisation.hpp"

#include <stdexcept>
#include <unordered_map>

#include "patcalc/head.hpp"
#include "patcalc/matching.hpp"
#include "patcalc/syntax.hpp"

namespace patcalc {

namespace {

StepRecord inner_step(const StepRecord& s, Dir side) {
    if (s.position.is_root() || s.position.path.front() != side || !s.source.is_app() || !s.result.is_app()) {
        throw std::invalid_argument("step at " + to_string(s.position) + " is not on the expected side");
    }
    const Term& src = side == Dir::Fun ? s.source.fun() : s.source.arg();
    const Term& res = side == Dir::Fun ? s.result.fun() : s.result.arg();
    return StepRecord{src, s.position.tail(), res};
}

[[noreturn]] void not_composable(const IntDevProof& i, const StepRecord& s) {
    throw std::invalid_argument("no step from " + to_string(s.source) + " can follow " + to_string(i->rule));
}

Postponed postpone_p_rec(const Pattern& p, const IntDevProof& i, const StepRecord& s);

Postponed postpone_rec(const IntDevProof& i, const StepRecord& s) {
    const Term& m = i->source;
    switch (i->rule) {
        case IntRule::IRefl:
            return Postponed{StepRecord{m, s.position, s.result}, dev_refl(s.result)};
        case IntRule::IApp1: {
            Postponed r = postpone_rec(i->int_left, inner_step(s, Dir::Fun));
            StepRecord step{m, r.step.position.under(Dir::Fun), Term::app(r.step.result, m.arg())};
            return Postponed{std::move(step), dev_app(r.dev, i->dev_right)};
        }
        case IntRule::IApp2: {
            const Pattern& p = *i->binder;
            if (auto nu = match_structural(p, m.arg())) {
                // The argument already matches: the head step is the beta at the root.
                auto h = head_step(m);
                if (!h || !h->position.is_root()) throw std::logic_error("expected a root head step");
                MatchAfterDev after = match_after_dev(erase(i->int_right), p, *nu);
                return Postponed{StepRecord{m, Position{}, h->result}, subst_apply_dev(after.subst, i->dev_left)};
            }
            Postponed r = postpone_p_rec(p, i->int_right, inner_step(s, Dir::Arg));
            StepRecord step{m, r.step.position.under(Dir::Arg), Term::app(m.fun(), r.step.result)};
            return Postponed{std::move(step), dev_app(dev_abs(p, i->dev_left), r.dev)};
        }
        default:
            not_composable(i, s);
    }
}

Postponed postpone_p_rec(const Pattern& p, const IntDevProof& i, const StepRecord& s) {
    const Term& m = i->source;
    switch (i->rule) {
        case IntRule::PConst:
        case IntRule::PNoCData:
            return postpone_rec(i->int_left, s);
        case IntRule::PCDataNo1: {
            Postponed r = postpone_p_rec(p.head(), i->int_left, inner_step(s, Dir::Fun));
            StepRecord step{m, r.step.position.under(Dir::Fun), Term::app(r.step.result, m.arg())};
            return Postponed{std::move(step), dev_app(r.dev, i->dev_right)};
        }
        case IntRule::PCDataNo2: {
            Postponed r = postpone_p_rec(p.arg(), i->int_right, inner_step(s, Dir::Arg));
            StepRecord step{m, r.step.position.under(Dir::Arg), Term::app(m.fun(), r.step.result)};
            return Postponed{std::move(step), dev_app(i->dev_left, r.dev)};
        }
        default:
            not_composable(i, s);
    }
}

}  // namespace

Postponed postpone(const IntDevProof& internal, const StepRecord& head) {
    if (!internal || internal->index || !check_internal(internal)) {
        throw std::invalid_argument("not a valid internal development");
    }
    if (!alpha_eq(internal->target, head.source)) {
        throw std::invalid_argument("head step does not start where the internal development ends");
    }
    if (!replay_head_chain(head.source, {head})) throw std::invalid_argument("not a head step");
    return postpone_rec(internal, head);
}

Postponed postpone_pattern(const Pattern& p, const IntDevProof& internal, const StepRecord& step) {
    if (!internal || !internal->index || !(*internal->index == p) || !check_internal(internal)) {
        throw std::invalid_argument("not a valid internal development for " + to_string(p));
    }
    if (!alpha_eq(internal->target, step.source)) {
        throw std::invalid_argument("step does not start where the internal development ends");
    }
    if (!replay_head_chain(step.source, {step}, p)) throw std::invalid_argument("not a step towards " + to_string(p));
    return postpone_p_rec(p, internal, step);
}

Commuted commute_head(const IntDevProof& internal, const StepRecord& head) {
    Postponed r = postpone(internal, head);
    HSplit s = h_split(r.dev);
    Commuted out{{r.step}, s.internal};
    out.head_steps.insert(out.head_steps.end(), s.head_steps.begin(), s.head_steps.end());
    return out;
}

Bifurcation bifurcate(const Term& m, const std::vector<DevProof>& chain) {
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const Term& expected = i == 0 ? m : chain[i - 1]->target;
        if (!alpha_eq(chain[i]->source, expected)) {
            throw std::invalid_argument("development " + std::to_string(i) + " does not start at " + to_string(expected));
        }
    }
    Bifurcation out;
    // Built from the back: out always describes chain[i..].
    for (std::size_t i = chain.size(); i-- > 0;) {
        HSplit s = h_split(chain[i]);
        IntDevProof cur = s.internal;
        std::vector<StepRecord> heads = std::move(s.head_steps);
        for (const auto& t : out.head_steps) {
            Commuted c = commute_head(cur, t);
            heads.insert(heads.end(), c.head_steps.begin(), c.head_steps.end());
            cur = c.internal;
        }
        out.head_steps = std::move(heads);
        out.internal.insert(out.internal.begin(), cur);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Standard sequences

std::string to_string(StdRule r) {
    switch (r) {
        case StdRule::StdHead: return "StdHead";
        case StdRule::StdAbs: return "StdAbs";
        case StdRule::StdApp: return "StdApp";
        case StdRule::StdVar: return "StdVar";
        case StdRule::StdConst: return "StdConst";
    }
    return "?";
}

namespace {

StdProof make_std(StdRule r, std::vector<Term> terms, std::optional<Pattern> binder = std::nullopt, StdProof first = {},
                  StdProof second = {}) {
    return std::make_shared<const StdNode>(
        StdNode{r, std::move(terms), std::move(binder), std::move(first), std::move(second)});
}

std::vector<Term> join_app(const std::vector<Term>& left, const std::vector<Term>& right) {
    std::vector<Term> out;
    out.reserve(left.size() + right.size() - 1);
    for (const auto& l : left) out.push_back(Term::app(l, right.front()));
    for (std::size_t i = 1; i < right.size(); ++i) out.push_back(Term::app(left.back(), right[i]));
    return out;
}

StdProof std_leaf(const Term& m) {
    if (m.is_var()) return make_std(StdRule::StdVar, {m});
    if (m.is_const()) return make_std(StdRule::StdConst, {m});
    throw std::logic_error("leaf sequence at a compound term");
}

StdProof std_abs(const Pattern& p, const StdProof& body) {
    std::vector<Term> terms;
    for (const auto& t : body->terms) terms.push_back(Term::abs(p, t));
    return make_std(StdRule::StdAbs, std::move(terms), p, body);
}

StdProof std_app(const StdProof& left, const StdProof& right) {
    return make_std(StdRule::StdApp, join_app(left->terms, right->terms), std::nullopt, left, right);
}

StdProof std_head(const Term& m, const StdProof& rest) {
    std::vector<Term> terms{m};
    terms.insert(terms.end(), rest->terms.begin(), rest->terms.end());
    return make_std(StdRule::StdHead, std::move(terms), std::nullopt, rest);
}

// The Theorem's induction on N for R ⊳int* N.
StdProof standardise_internal(const Term& r, const std::vector<IntDevProof>& chain) {
    switch (r.kind()) {
        case TermKind::Var:
        case TermKind::Const:
            for (const auto& i : chain) {
                if (i->rule != IntRule::IRefl) throw std::logic_error("internal development of an atom is not IRefl");
            }
            return std_leaf(r);
        case TermKind::Abs: {
            const Pattern& p = r.binder();
            std::vector<DevProof> bodies;
            Term cur = r.body();
            for (const auto& i : chain) {
                DevProof d = body_development(erase(i), Term::abs(p, cur));
                cur = d->target;
                bodies.push_back(std::move(d));
            }
            return std_abs(p, standardise(r.body(), bodies).proof);
        }
        case TermKind::App: {
            std::vector<DevProof> funs;
            std::vector<DevProof> args;
            for (const auto& i : chain) {
                switch (i->rule) {
                    case IntRule::IRefl:
                        funs.push_back(dev_refl(i->source.fun()));
                        args.push_back(dev_refl(i->source.arg()));
                        break;
                    case IntRule::IApp1:
                        funs.push_back(erase(i->int_left));
                        args.push_back(i->dev_right);
                        break;
                    case IntRule::IApp2:
                        funs.push_back(dev_abs(*i->binder, i->dev_left));
                        args.push_back(erase(i->int_right));
                        break;
                    default:
                        throw std::logic_error("internal development of an application uses " + to_string(i->rule));
                }
            }
            StdProof left = standardise(r.fun(), funs).proof;
            StdProof right = standardise(r.arg(), args).proof;
            return std_app(left, right);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

StdSequence standardise(const Term& m, const std::vector<DevProof>& chain) {
    Bifurcation b = bifurcate(m, chain);
    Term r = b.head_steps.empty() ? m : b.head_steps.back().result;
    StdProof proof = standardise_internal(r, b.internal);
    for (std::size_t i = b.head_steps.size(); i-- > 0;) proof = std_head(b.head_steps[i].source, proof);
    return StdSequence{proof->terms, proof};
}

std::optional<std::vector<Term>> replay_standard(const StdProof& proof) {
    if (!proof) return std::nullopt;
    std::vector<Term> out;
    switch (proof->rule) {
        case StdRule::StdVar:
        case StdRule::StdConst: {
            if (proof->terms.size() != 1) return std::nullopt;
            const Term& t = proof->terms.front();
            if (proof->rule == StdRule::StdVar ? !t.is_var() : !t.is_const()) return std::nullopt;
            out = proof->terms;
            break;
        }
        case StdRule::StdHead: {
            if (proof->terms.empty()) return std::nullopt;
            auto rest = replay_standard(proof->first);
            if (!rest) return std::nullopt;
            const Term& m = proof->terms.front();
            auto h = head_step(m);
            if (!h || !alpha_eq(h->result, rest->front())) return std::nullopt;
            out.push_back(m);
            out.insert(out.end(), rest->begin(), rest->end());
            break;
        }
        case StdRule::StdAbs: {
            auto body = replay_standard(proof->first);
            if (!body || !proof->binder) return std::nullopt;
            for (const auto& t : *body) out.push_back(Term::abs(*proof->binder, t));
            break;
        }
        case StdRule::StdApp: {
            auto left = replay_standard(proof->first);
            auto right = replay_standard(proof->second);
            if (!left || !right) return std::nullopt;
            out = join_app(*left, *right);
            break;
        }
    }
    if (out.size() != proof->terms.size()) return std::nullopt;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!alpha_eq(out[i], proof->terms[i])) return std::nullopt;
    }
    return out;
}

namespace {

class StdChecker {
public:
    std::optional<StdProof> check(const std::vector<Term>& terms) {
        std::string key = sequence_key(terms);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        auto r = check_uncached(terms);
        memo_.emplace(std::move(key), r);
        return r;
    }

private:
    static std::string sequence_key(const std::vector<Term>& terms) {
        std::string out;
        for (const auto& t : terms) {
            out += canonical_key(t);
            out += ';';
        }
        return out;
    }

    std::optional<StdProof> check_uncached(const std::vector<Term>& terms) {
        const Term& first = terms.front();
        if (terms.size() >= 2) {
            auto h = head_step(first);
            if (h && alpha_eq(h->result, terms[1])) {
                if (auto rest = check(std::vector<Term>(terms.begin() + 1, terms.end()))) return std_head(first, *rest);
            }
        }
        switch (first.kind()) {
            case TermKind::Var:
            case TermKind::Const:
                if (terms.size() == 1) return std_leaf(first);
                return std::nullopt;
            case TermKind::Abs:
                return check_abs(terms);
            case TermKind::App:
                return check_app(terms);
        }
        return std::nullopt;
    }

    std::optional<StdProof> check_abs(const std::vector<Term>& terms) {
        NameSet avoid;
        for (const auto& t : terms) {
            if (!t.is_abs()) return std::nullopt;
            avoid.insert(t.fv().begin(), t.fv().end());
        }
        Term lead = rebind_apart(terms.front(), avoid);
        const Pattern& p = lead.binder();
        std::vector<Term> bodies;
        for (const auto& t : terms) {
            auto b = body_under(t, p);
            if (!b) return std::nullopt;
            bodies.push_back(std::move(*b));
        }
        if (auto body = check(bodies)) return std_abs(p, *body);
        return std::nullopt;
    }

    std::optional<StdProof> check_app(const std::vector<Term>& terms) {
        for (const auto& t : terms) {
            if (!t.is_app()) return std::nullopt;
        }
        const std::size_t n = terms.size();
        // j is the number of terms on the function side; the argument stays
        // put up to the junction and the function stays put after it.
        for (std::size_t j = 1; j <= n; ++j) {
            if (!alpha_eq(terms[j - 1].arg(), terms[0].arg())) break;
            bool fun_fixed = true;
            for (std::size_t i = j; i < n && fun_fixed; ++i) fun_fixed = alpha_eq(terms[i].fun(), terms[j - 1].fun());
            if (!fun_fixed) continue;
            std::vector<Term> left;
            std::vector<Term> right;
            for (std::size_t i = 0; i < j; ++i) left.push_back(terms[i].fun());
            for (std::size_t i = j - 1; i < n; ++i) right.push_back(terms[i].arg());
            auto l = check(left);
            if (!l) continue;
            auto r = check(right);
            if (!r) continue;
            return std_app(*l, *r);
        }
        return std::nullopt;
    }

    std::unordered_map<std::string, std::optional<StdProof>> memo_;
};

}  // namespace

std::optional<StdProof> check_standard(const std::vector<Term>& terms) {
    if (terms.empty()) return std::nullopt;
    StdChecker c;
    return c.check(terms);
}

namespace {

DevProof step_dev_rec(const Term& m, const std::vector<Dir>& path, std::size_t i, const Position& pos) {
    if (i == path.size()) {
        if (!m.is_app() || !m.fun().is_abs()) {
            throw std::invalid_argument("no redex at position " + to_string(pos));
        }
        const Pattern& p = m.fun().binder();
        auto tau = match_structural(p, m.arg());
        if (!tau) throw std::invalid_argument("no redex at position " + to_string(pos));
        SubstDevProof sd;
        for (const auto& [x, t] : *tau) sd.per_variable.emplace(x, dev_refl(t));
        return dev_beta(p, m.arg(), dev_refl(m.fun().body()), std::move(sd));
    }
    switch (path[i]) {
        case Dir::Fun:
            if (!m.is_app()) break;
            return dev_app(step_dev_rec(m.fun(), path, i + 1, pos), dev_refl(m.arg()));
        case Dir::Arg:
            if (!m.is_app()) break;
            return dev_app(dev_refl(m.fun()), step_dev_rec(m.arg(), path, i + 1, pos));
        case Dir::Body:
            if (!m.is_abs()) break;
            return dev_abs(m.binder(), step_dev_rec(m.body(), path, i + 1, pos));
    }
    throw std::invalid_argument("position " + to_string(pos) + " is not valid in the term");
}

}  // namespace

DevProof step_to_development(const Term& m, const Position& pos) { return step_dev_rec(m, pos.path, 0, pos); }

StdSequence standardise_reduction(const Term& m, const std::vector<Position>& positions) {
    std::vector<DevProof> chain;
    Term cur = m;
    for (const auto& pos : positions) {
        chain.push_back(step_to_development(cur, pos));
        cur = chain.back()->target;
    }
    return standardise(m, chain);
}

}  // namespace patcalc
