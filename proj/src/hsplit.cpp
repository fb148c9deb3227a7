#include "patcalc/hsplit.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>

#include "patcalc/head.hpp"
#include "patcalc/matching.hpp"
#include "patcalc/syntax.hpp"

namespace patcalc {

namespace {

// An HDev stands for νM ▷h θN, given a development M ▷ N and an environment
// mapping each x in dom(ν) to the HDev for νx ▷h θx. Everything is computed
// on demand and cached, so shared environment entries are split only once.
struct HDev;
using HDevPtr = std::shared_ptr<HDev>;
using Env = std::map<Name, HDevPtr>;

struct Parts {
    enum Kind { Trivial, Delegate, Abs, App, Beta } kind;
    HDevPtr a;
    HDevPtr b;
    std::optional<Pattern> binder;
};

std::size_t pattern_hash(const Pattern& p) {
    switch (p.kind()) {
        case PatternKind::Var: return std::hash<std::string>{}(p.name()) * 3 + 1;
        case PatternKind::Const: return std::hash<std::string>{}(p.name()) * 3 + 2;
        case PatternKind::App: return pattern_hash(p.head()) * 1000003u ^ pattern_hash(p.arg());
    }
    return 0;
}

struct PatternHash {
    std::size_t operator()(const Pattern& p) const { return pattern_hash(p); }
};

struct HDev {
    DevProof dev;
    Env env;

    std::optional<Parts> parts;

    std::optional<Term> src;
    std::optional<Term> tgt;
    DevProof plain;
    std::optional<HSplit> head;
    std::unordered_map<Pattern, HSplit, PatternHash> per_pattern;
};

HDevPtr make_hdev(DevProof d, Env env) {
    auto h = std::make_shared<HDev>();
    h->dev = std::move(d);
    h->env = std::move(env);
    return h;
}

const Term& source(const HDevPtr& h);
const Term& target(const HDevPtr& h);
const DevProof& clause_i(const HDevPtr& h);
const HSplit& clause_ii(const HDevPtr& h);
const HSplit& clause_iii(const HDevPtr& h, const Pattern& p);

Substitution env_side(const Env& env, bool want_source) {
    Substitution out;
    for (const auto& [x, h] : env) out.bind(x, want_source ? source(h) : target(h));
    return out;
}

const Term& source(const HDevPtr& h) {
    if (!h->src) h->src = h->env.empty() ? h->dev->source : apply_subst(env_side(h->env, true), h->dev->source);
    return *h->src;
}

const Term& target(const HDevPtr& h) {
    if (!h->tgt) h->tgt = h->env.empty() ? h->dev->target : apply_subst(env_side(h->env, false), h->dev->target);
    return *h->tgt;
}

const DevProof& clause_i(const HDevPtr& h) {
    if (!h->plain) {
        if (h->env.empty()) {
            h->plain = h->dev;
        } else {
            SubstDevProof sd;
            for (const auto& [x, e] : h->env) sd.per_variable.emplace(x, clause_i(e));
            h->plain = subst_apply_dev(sd, h->dev);
        }
    }
    return h->plain;
}

// Variables an environment may mention on either side.
NameSet env_names(const Env& env) {
    NameSet out;
    for (const auto& [x, h] : env) {
        out.insert(x);
        const auto& s = source(h).fv();
        const auto& t = target(h).fv();
        out.insert(s.begin(), s.end());
        out.insert(t.begin(), t.end());
    }
    return out;
}

// Enters binder q with body development `body`: shadowed entries are dropped
// and binder variables that could be captured by the environment are renamed
// through refl entries.
std::pair<Pattern, Env> enter_binder(const Pattern& q, const DevProof& body, const Env& env) {
    Env inner = env;
    for (const auto& x : q.vars()) inner.erase(x);
    if (inner.empty()) return {q, inner};
    NameSet names = env_names(inner);
    std::map<Name, Name> renaming;
    NameSet blocked = names;
    blocked.insert(q.vars().begin(), q.vars().end());
    blocked.insert(body->source.fv().begin(), body->source.fv().end());
    blocked.insert(body->target.fv().begin(), body->target.fv().end());
    for (const auto& x : q.vars()) {
        if (!names.count(x)) continue;
        Name fresh = fresh_name(x, blocked);
        blocked.insert(fresh);
        renaming.emplace(x, fresh);
        inner[x] = make_hdev(dev_refl(Term::var(fresh)), {});
    }
    return {renaming.empty() ? q : rename_pattern(q, renaming), inner};
}

std::vector<StepRecord> lift(const std::vector<StepRecord>& steps, Dir side, const Term& other) {
    std::vector<StepRecord> out;
    out.reserve(steps.size());
    for (const auto& s : steps) {
        if (side == Dir::Fun) {
            out.push_back(StepRecord{Term::app(s.source, other), s.position.under(Dir::Fun), Term::app(s.result, other)});
        } else {
            out.push_back(StepRecord{Term::app(other, s.source), s.position.under(Dir::Arg), Term::app(other, s.result)});
        }
    }
    return out;
}

void append(std::vector<StepRecord>& to, const std::vector<StepRecord>& more) {
    to.insert(to.end(), more.begin(), more.end());
}

// Given an internal proof whose source is the abstraction `abs` (IRefl or
// IAbs, possibly under PConst/PNoCData), the body development stated under
// the binder of `abs` itself.
DevProof body_dev_under(const IntDevProof& i, const Term& abs) { return body_development(erase(i), abs); }

// ---------------------------------------------------------------------------
// Compatibility with abstraction

HSplit abs_ii(const Pattern& q, const HDevPtr& body) {
    DevProof b = clause_i(body);
    return HSplit{{}, Term::abs(q, source(body)), int_abs(q, b)};
}

HSplit abs_iii(const Pattern& q, const HDevPtr& body, const Pattern& p) {
    IntDevProof inner = int_abs(q, clause_i(body));
    Term m = Term::abs(q, source(body));
    switch (p.kind()) {
        case PatternKind::Var: return HSplit{{}, m, p_match(p, erase(inner))};
        case PatternKind::Const: return HSplit{{}, m, p_const(p, inner)};
        case PatternKind::App: return HSplit{{}, m, p_no_cdata(p, inner)};
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Compatibility with application

HSplit app_ii(const HDevPtr& h1, const HDevPtr& h2) {
    const HSplit& s1 = clause_ii(h1);
    const Term& m2 = source(h2);
    std::vector<StepRecord> steps = lift(s1.head_steps, Dir::Fun, m2);
    const Term& q1 = s1.mid;
    if (!q1.is_abs()) return HSplit{std::move(steps), Term::app(q1, m2), int_app1(s1.internal, clause_i(h2))};
    const Pattern& q = q1.binder();
    const HSplit& s2 = clause_iii(h2, q);
    append(steps, lift(s2.head_steps, Dir::Arg, q1));
    return HSplit{std::move(steps), Term::app(q1, s2.mid),
                  int_app2(q, body_dev_under(s1.internal, q1), s2.internal)};
}

HSplit app_iii(const HDevPtr& h1, const HDevPtr& h2, const Pattern& p) {
    const Term& m2 = source(h2);
    if (p.is_var()) {
        return HSplit{{}, Term::app(source(h1), m2), p_match(p, dev_app(clause_i(h1), clause_i(h2)))};
    }
    const Pattern& p1 = p.head();
    const Pattern& p2 = p.arg();
    const HSplit& s1 = clause_iii(h1, p1);
    const Term& q1 = s1.mid;
    std::vector<StepRecord> steps = lift(s1.head_steps, Dir::Fun, m2);

    if (q1.is_abs()) {
        const Pattern& q = q1.binder();
        const HSplit& s2 = clause_iii(h2, q);
        append(steps, lift(s2.head_steps, Dir::Arg, q1));
        return HSplit{std::move(steps), Term::app(q1, s2.mid),
                      p_no_cdata(p, int_app2(q, body_dev_under(s1.internal, q1), s2.internal))};
    }
    if (!is_data_term(q1)) {
        // Only PConst or PNoCData can index a non-data term by p1.
        if (s1.internal->rule != IntRule::PConst && s1.internal->rule != IntRule::PNoCData) {
            throw std::logic_error("unexpected rule " + to_string(s1.internal->rule) + " on a non-data term");
        }
        return HSplit{std::move(steps), Term::app(q1, m2),
                      p_no_cdata(p, int_app1(s1.internal->int_left, clause_i(h2)))};
    }
    if (!matches_structural(p1, q1)) {
        return HSplit{std::move(steps), Term::app(q1, m2), p_cdata_no1(p, s1.internal, clause_i(h2))};
    }
    DevProof d1 = erase(s1.internal);
    if (!matches_structural(p2, m2)) {
        const HSplit& s2 = clause_iii(h2, p2);
        append(steps, lift(s2.head_steps, Dir::Arg, q1));
        Term mid = Term::app(q1, s2.mid);
        IntDevProof internal;
        if (!matches_structural(p2, s2.mid)) {
            internal = p_cdata_no2(p, d1, s2.internal);
        } else if (matches_structural(p, mid)) {
            internal = p_match(p, dev_app(d1, erase(s2.internal)));
        } else {
            internal = p_cdata_no3(p, d1, erase(s2.internal));
        }
        return HSplit{std::move(steps), std::move(mid), std::move(internal)};
    }
    Term mid = Term::app(q1, m2);
    IntDevProof internal = matches_structural(p, mid) ? p_match(p, dev_app(d1, clause_i(h2)))
                                                      : p_cdata_no3(p, d1, clause_i(h2));
    return HSplit{std::move(steps), std::move(mid), std::move(internal)};
}

// ---------------------------------------------------------------------------
// The generalized lemma, by cases on the development

// Decomposes an HDev into the case of the lemma that applies.
Parts compute_parts(const HDevPtr& h) {
    const DevProof& d = h->dev;
    switch (d->rule) {
        case DevRule::DRefl: {
            const Term& m = d->source;
            switch (m.kind()) {
                case TermKind::Var: {
                    auto it = h->env.find(m.name());
                    if (it != h->env.end()) return Parts{Parts::Delegate, it->second, nullptr, std::nullopt};
                    return Parts{Parts::Trivial, nullptr, nullptr, std::nullopt};
                }
                case TermKind::Const:
                    return Parts{Parts::Trivial, nullptr, nullptr, std::nullopt};
                case TermKind::App:
                    return Parts{Parts::App, make_hdev(dev_refl(m.fun()), h->env), make_hdev(dev_refl(m.arg()), h->env),
                                 std::nullopt};
                case TermKind::Abs: {
                    DevProof body = dev_refl(m.body());
                    auto [q, inner] = enter_binder(m.binder(), body, h->env);
                    return Parts{Parts::Abs, make_hdev(body, std::move(inner)), nullptr, q};
                }
            }
            break;
        }
        case DevRule::DAbs: {
            auto [q, inner] = enter_binder(*d->binder, d->body, h->env);
            return Parts{Parts::Abs, make_hdev(d->body, std::move(inner)), nullptr, q};
        }
        case DevRule::DApp:
            return Parts{Parts::App, make_hdev(d->fun, h->env), make_hdev(d->arg, h->env), std::nullopt};
        case DevRule::DBeta: {
            // The body is split under ντ ▶h θτ'.
            Env inner = h->env;
            for (const auto& [x, sx] : d->subst.per_variable) inner[x] = make_hdev(sx, h->env);
            return Parts{Parts::Beta, make_hdev(d->body, std::move(inner)), nullptr, std::nullopt};
        }
    }
    throw std::logic_error("unreachable");
}

const Parts& decompose(const HDevPtr& h) {
    if (!h->parts) h->parts = compute_parts(h);
    return *h->parts;
}

StepRecord root_head_step(const HDevPtr& h, const HDevPtr& body) {
    const Term& m = source(h);
    auto step = head_step(m);
    if (!step || step->justification->rule != HeadRule::HBeta) {
        throw std::logic_error("expected a head beta step at " + to_string(m));
    }
    if (!alpha_eq(step->result, source(body))) {
        throw std::logic_error("head contractum " + to_string(step->result) + " differs from " +
                               to_string(source(body)));
    }
    return StepRecord{m, Position{}, source(body)};
}

HSplit prepend(StepRecord first, const HSplit& rest) {
    std::vector<StepRecord> steps{std::move(first)};
    append(steps, rest.head_steps);
    return HSplit{std::move(steps), rest.mid, rest.internal};
}

HSplit compute_ii(const HDevPtr& h) {
    const Parts& parts = decompose(h);
    switch (parts.kind) {
        case Parts::Trivial: return HSplit{{}, source(h), int_refl(source(h))};
        case Parts::Delegate: return clause_ii(parts.a);
        case Parts::Abs: return abs_ii(*parts.binder, parts.a);
        case Parts::App: return app_ii(parts.a, parts.b);
        case Parts::Beta: return prepend(root_head_step(h, parts.a), clause_ii(parts.a));
    }
    throw std::logic_error("unreachable");
}

HSplit compute_iii(const HDevPtr& h, const Pattern& p) {
    const Parts& parts = decompose(h);
    switch (parts.kind) {
        case Parts::Trivial: return HSplit{{}, source(h), int_refl_p(p, source(h))};
        case Parts::Delegate: return clause_iii(parts.a, p);
        case Parts::Abs: return abs_iii(*parts.binder, parts.a, p);
        case Parts::App:
            if (p.is_const()) {
                HSplit out = clause_ii(h);
                out.internal = p_const(p, out.internal);
                return out;
            }
            return app_iii(parts.a, parts.b, p);
        case Parts::Beta:
            if (p.is_var()) return HSplit{{}, source(h), p_match(p, clause_i(h))};
            // The root head step is also the preferred step for any data pattern.
            return prepend(root_head_step(h, parts.a), clause_iii(parts.a, p));
    }
    throw std::logic_error("unreachable");
}

const HSplit& clause_ii(const HDevPtr& h) {
    if (!h->head) h->head = compute_ii(h);
    return *h->head;
}

const HSplit& clause_iii(const HDevPtr& h, const Pattern& p) {
    if (auto it = h->per_pattern.find(p); it != h->per_pattern.end()) return it->second;
    HSplit out = compute_iii(h, p);
    return h->per_pattern.emplace(p, std::move(out)).first->second;
}

}  // namespace

HSplit h_split(const DevProof& d) {
    HSplit out = clause_ii(make_hdev(d, {}));
    if (out.internal->rule != IntRule::IRefl && alpha_eq(out.mid, d->target)) out.internal = int_refl(out.mid);
    return out;
}

HSplit h_split_pattern(const DevProof& d, const Pattern& p) { return clause_iii(make_hdev(d, {}), p); }

std::vector<HSplit> h_split_patterns(const DevProof& d, const std::vector<Pattern>& ps) {
    HDevPtr root = make_hdev(d, {});
    std::vector<HSplit> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(clause_iii(root, p));
    return out;
}

bool check_hsplit(const HSplit& s, const Term& m, const Term& n, const std::optional<Pattern>& p) {
    auto end = replay_head_chain(m, s.head_steps, p);
    if (!end || !alpha_eq(*end, s.mid)) return false;
    if (!s.internal || !check_internal(s.internal)) return false;
    if (p) {
        if (!s.internal->index || !(*s.internal->index == *p)) return false;
    } else if (s.internal->index) {
        return false;
    }
    return alpha_eq(s.internal->source, s.mid) && alpha_eq(s.internal->target, n);
}

}  // namespace patcalc
