#include "patcalc/development.hpp"

#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "patcalc/matching.hpp"
#include "patcalc/syntax.hpp"

namespace patcalc {

std::string to_string(DevRule r) {
    switch (r) {
        case DevRule::DRefl: return "DRefl";
        case DevRule::DAbs: return "DAbs";
        case DevRule::DApp: return "DApp";
        case DevRule::DBeta: return "DBeta";
    }
    return "?";
}

std::string to_string(IntRule r) {
    switch (r) {
        case IntRule::IRefl: return "IRefl";
        case IntRule::IAbs: return "IAbs";
        case IntRule::IApp1: return "IApp1";
        case IntRule::IApp2: return "IApp2";
        case IntRule::PMatch: return "PMatch";
        case IntRule::PConst: return "PConst";
        case IntRule::PNoCData: return "PNoCData";
        case IntRule::PCDataNo1: return "PCDataNo1";
        case IntRule::PCDataNo2: return "PCDataNo2";
        case IntRule::PCDataNo3: return "PCDataNo3";
        case IntRule::PConstShort: return "PConstShort";
    }
    return "?";
}

bool is_pattern_rule(IntRule r) {
    switch (r) {
        case IntRule::IRefl:
        case IntRule::IAbs:
        case IntRule::IApp1:
        case IntRule::IApp2:
            return false;
        default:
            return true;
    }
}

NameSet SubstDevProof::domain() const {
    NameSet out;
    for (const auto& [x, _] : per_variable) out.insert(x);
    return out;
}

Substitution SubstDevProof::source() const {
    Substitution out;
    for (const auto& [x, d] : per_variable) out.bind(x, d->source);
    return out;
}

Substitution SubstDevProof::target() const {
    Substitution out;
    for (const auto& [x, d] : per_variable) out.bind(x, d->target);
    return out;
}

// ---------------------------------------------------------------------------
// Constructors

DevProof dev_refl(const Term& m) {
    return std::make_shared<const DevNode>(DevNode{DevRule::DRefl, m, m, std::nullopt, {}, {}, {}, {}, {}});
}

DevProof dev_abs(const Pattern& binder, DevProof body) {
    Term s = Term::abs(binder, body->source);
    Term t = Term::abs(binder, body->target);
    return std::make_shared<const DevNode>(
        DevNode{DevRule::DAbs, std::move(s), std::move(t), binder, std::move(body), {}, {}, {}, {}});
}

DevProof dev_app(DevProof fun, DevProof arg) {
    Term s = Term::app(fun->source, arg->source);
    Term t = Term::app(fun->target, arg->target);
    return std::make_shared<const DevNode>(
        DevNode{DevRule::DApp, std::move(s), std::move(t), std::nullopt, {}, std::move(fun), std::move(arg), {}, {}});
}

DevProof dev_beta(const Pattern& binder, const Term& argument, DevProof body, SubstDevProof subst,
                  const std::optional<Term>& target) {
    auto tau = match_structural(binder, argument);
    if (!tau) {
        throw std::logic_error("DBeta: " + to_string(binder) + " does not match " + to_string(argument));
    }
    if (!alpha_eq(*tau, subst.source())) {
        throw std::logic_error("DBeta: substitution development does not start at the match");
    }
    Term computed = apply_subst(subst.target(), body->target);
    if (target && !alpha_eq(*target, computed)) {
        throw std::logic_error("DBeta: stated target " + to_string(*target) + " differs from " +
                               to_string(computed));
    }
    Term s = Term::app(Term::abs(binder, body->source), argument);
    return std::make_shared<const DevNode>(DevNode{DevRule::DBeta, std::move(s), target ? *target : computed, binder,
                                                   std::move(body), {}, {}, std::move(*tau), std::move(subst)});
}

// ---------------------------------------------------------------------------
// Replay

namespace {

// s ≡ f a, without building the application.
bool is_app_of(const Term& s, const Term& f, const Term& a) {
    return s.is_app() && alpha_eq(s.fun(), f) && alpha_eq(s.arg(), a);
}

// s ≡ \p.body; the common case of an identical binder avoids a rebuild.
bool is_abs_of(const Term& s, const Pattern& p, const Term& body) {
    if (!s.is_abs()) return false;
    if (s.binder() == p) return alpha_eq(s.body(), body);
    return alpha_eq(s, Term::abs(p, body));
}

// s ≡ (\p.body) a.
bool is_redex_of(const Term& s, const Pattern& p, const Term& body, const Term& a) {
    return s.is_app() && is_abs_of(s.fun(), p, body) && alpha_eq(s.arg(), a);
}

}  // namespace

bool check_subst_development(const SubstDevProof& sd) {
    for (const auto& [x, d] : sd.per_variable) {
        if (!d || !check_development(d)) return false;
    }
    return true;
}

bool check_development(const DevProof& d) {
    if (!d) return false;
    switch (d->rule) {
        case DevRule::DRefl:
            return alpha_eq(d->source, d->target);
        case DevRule::DAbs:
            return d->binder && d->body && check_development(d->body) &&
                   is_abs_of(d->source, *d->binder, d->body->source) &&
                   is_abs_of(d->target, *d->binder, d->body->target);
        case DevRule::DApp:
            return d->fun && d->arg && check_development(d->fun) && check_development(d->arg) &&
                   is_app_of(d->source, d->fun->source, d->arg->source) &&
                   is_app_of(d->target, d->fun->target, d->arg->target);
        case DevRule::DBeta: {
            if (!d->binder || !d->body || !d->source.is_app()) return false;
            const Term& argument = d->source.arg();
            if (!is_redex_of(d->source, *d->binder, d->body->source, argument)) return false;
            if (!check_development(d->body) || !check_subst_development(d->subst)) return false;
            auto tau = match_structural(*d->binder, argument);
            if (!tau || !alpha_eq(*tau, d->subst.source())) return false;
            return alpha_eq(d->target, apply_subst(d->subst.target(), d->body->target));
        }
    }
    return false;
}

std::size_t beta_count(const DevProof& d) {
    switch (d->rule) {
        case DevRule::DRefl: return 0;
        case DevRule::DAbs: return beta_count(d->body);
        case DevRule::DApp: return beta_count(d->fun) + beta_count(d->arg);
        case DevRule::DBeta: {
            std::size_t n = 1 + beta_count(d->body);
            for (const auto& [_, s] : d->subst.per_variable) n += beta_count(s);
            return n;
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Search

namespace {

// Calls `f` once for every way of picking one element from each list.
template <typename T, typename F>
void for_each_choice(const std::vector<const std::vector<T>*>& lists, F&& f) {
    std::vector<std::size_t> idx(lists.size(), 0);
    for (const auto* l : lists) {
        if (l->empty()) return;
    }
    while (true) {
        f(idx);
        std::size_t i = 0;
        for (; i < lists.size(); ++i) {
            if (++idx[i] < lists[i]->size()) break;
            idx[i] = 0;
        }
        if (i == lists.size()) return;
    }
}

struct TargetEntry {
    std::string key;
    DevProof proof;
};

class DevSearch {
public:
    // All reachable targets with one derivation each, deduplicated up to alpha.
    const std::vector<TargetEntry>& targets(const Term& m) {
        std::string k = to_string(m);
        if (auto it = target_cache_.find(k); it != target_cache_.end()) return it->second;
        std::vector<TargetEntry> out;
        std::unordered_set<std::string> seen;
        auto add = [&](DevProof d) {
            std::string key = canonical_key(d->target);
            if (seen.insert(key).second) out.push_back(TargetEntry{std::move(key), std::move(d)});
        };
        add(dev_refl(m));
        switch (m.kind()) {
            case TermKind::Var:
            case TermKind::Const:
                break;
            case TermKind::Abs: {
                const auto& inner = targets(m.body());
                for (std::size_t i = 1; i < inner.size(); ++i) add(dev_abs(m.binder(), inner[i].proof));
                break;
            }
            case TermKind::App: {
                for (auto& d : beta_developments(m, /*canonical=*/false)) add(std::move(d));
                const auto fs = targets(m.fun());
                const auto& as = targets(m.arg());
                for (std::size_t i = 0; i < fs.size(); ++i) {
                    for (std::size_t j = 0; j < as.size(); ++j) {
                        if (i == 0 && j == 0) continue;
                        add(dev_app(fs[i].proof, as[j].proof));
                    }
                }
                break;
            }
        }
        return target_cache_.emplace(std::move(k), std::move(out)).first->second;
    }

    // DBeta derivations at the root of m, if m is a redex.
    std::vector<DevProof> beta_developments(const Term& m, bool canonical) {
        std::vector<DevProof> out;
        if (!m.is_app() || !m.fun().is_abs()) return out;
        const Pattern& p = m.fun().binder();
        auto tau = match_structural(p, m.arg());
        if (!tau) return out;

        std::vector<Name> names;
        std::vector<std::vector<DevProof>> per_var;
        for (const auto& [x, t] : *tau) {
            names.push_back(x);
            per_var.push_back(canonical ? all(t) : proofs_of(targets(t)));
        }
        std::vector<DevProof> bodies = canonical ? all(m.fun().body()) : proofs_of(targets(m.fun().body()));
        std::vector<const std::vector<DevProof>*> lists;
        lists.push_back(&bodies);
        for (const auto& l : per_var) lists.push_back(&l);
        for_each_choice(lists, [&](const std::vector<std::size_t>& idx) {
            SubstDevProof sd;
            for (std::size_t i = 0; i < names.size(); ++i) sd.per_variable.emplace(names[i], per_var[i][idx[i + 1]]);
            out.push_back(dev_beta(p, m.arg(), bodies[idx[0]], std::move(sd)));
        });
        return out;
    }

    const std::vector<DevProof>& all(const Term& m) {
        std::string k = to_string(m);
        if (auto it = all_cache_.find(k); it != all_cache_.end()) return it->second;
        std::vector<DevProof> out;
        out.push_back(dev_refl(m));
        switch (m.kind()) {
            case TermKind::Var:
            case TermKind::Const:
                break;
            case TermKind::Abs: {
                const auto inner = all(m.body());
                for (std::size_t i = 1; i < inner.size(); ++i) out.push_back(dev_abs(m.binder(), inner[i]));
                break;
            }
            case TermKind::App: {
                const auto fs = all(m.fun());
                const auto as = all(m.arg());
                for (std::size_t i = 0; i < fs.size(); ++i) {
                    for (std::size_t j = 0; j < as.size(); ++j) {
                        if (i == 0 && j == 0) continue;
                        out.push_back(dev_app(fs[i], as[j]));
                    }
                }
                for (auto& d : beta_developments(m, /*canonical=*/true)) out.push_back(std::move(d));
                break;
            }
        }
        return all_cache_.emplace(std::move(k), std::move(out)).first->second;
    }

    std::optional<DevProof> develop(const Term& m, const Term& n) {
        std::string k = to_string(m) + '\x01' + to_string(n);
        if (auto it = pair_cache_.find(k); it != pair_cache_.end()) return it->second;
        auto r = develop_uncached(m, n);
        pair_cache_.emplace(std::move(k), r);
        return r;
    }

    std::optional<IntDevProof> internal(const Term& m, const Term& n, IntRuleSet rules) {
        if (alpha_eq(m, n)) return int_refl(m);
        if (m.is_abs() && n.is_abs()) {
            auto cb = common_binder(m, n);
            if (!cb) return std::nullopt;
            if (auto b = develop(cb->left_body, cb->right_body)) return int_abs(cb->binder, *b);
            return std::nullopt;
        }
        if (!m.is_app() || !n.is_app()) return std::nullopt;
        if (!m.fun().is_abs()) {
            auto f = internal(m.fun(), n.fun(), rules);
            if (!f) return std::nullopt;
            auto a = develop(m.arg(), n.arg());
            if (!a) return std::nullopt;
            return int_app1(*f, *a);
        }
        if (!n.fun().is_abs()) return std::nullopt;
        NameSet avoid(m.arg().fv().begin(), m.arg().fv().end());
        avoid.insert(n.arg().fv().begin(), n.arg().fv().end());
        auto cb = common_binder(m.fun(), n.fun(), avoid);
        if (!cb) return std::nullopt;
        auto b = develop(cb->left_body, cb->right_body);
        if (!b) return std::nullopt;
        auto a = internal_p(cb->binder, m.arg(), n.arg(), rules);
        if (!a) return std::nullopt;
        return int_app2(cb->binder, *b, *a);
    }

    std::optional<IntDevProof> internal_p(const Pattern& p, const Term& m, const Term& n, IntRuleSet rules) {
        if (matches_structural(p, m)) {
            if (auto d = develop(m, n)) return p_match(p, *d);
            return std::nullopt;
        }
        if (p.is_var()) return std::nullopt;
        if (p.is_const()) {
            if (auto i = internal(m, n, rules)) return p_const(p, *i);
            return std::nullopt;
        }
        if (!is_data_term(m)) {
            if (auto i = internal(m, n, rules)) return p_no_cdata(p, *i);
            return std::nullopt;
        }
        if (m.is_const()) {
            if (rules == IntRuleSet::Extended && alpha_eq(m, n)) return p_const_short(p, m);
            return std::nullopt;
        }
        if (!n.is_app()) return std::nullopt;
        const Pattern& d = p.head();
        const Pattern& q = p.arg();
        if (!matches_structural(d, m.fun())) {
            auto h = internal_p(d, m.fun(), n.fun(), rules);
            if (!h) return std::nullopt;
            auto a = develop(m.arg(), n.arg());
            if (!a) return std::nullopt;
            return p_cdata_no1(p, *h, *a);
        }
        auto h = develop(m.fun(), n.fun());
        if (!h) return std::nullopt;
        if (!matches_structural(q, m.arg())) {
            auto a = internal_p(q, m.arg(), n.arg(), rules);
            if (!a) return std::nullopt;
            return p_cdata_no2(p, *h, *a);
        }
        // Both halves match but the whole does not: a non-linear clash.
        auto a = develop(m.arg(), n.arg());
        if (!a) return std::nullopt;
        return p_cdata_no3(p, *h, *a);
    }

private:
    static std::vector<DevProof> proofs_of(const std::vector<TargetEntry>& entries) {
        std::vector<DevProof> out;
        out.reserve(entries.size());
        for (const auto& e : entries) out.push_back(e.proof);
        return out;
    }

    std::optional<DevProof> develop_uncached(const Term& m, const Term& n) {
        if (alpha_eq(m, n)) return dev_refl(m);
        switch (m.kind()) {
            case TermKind::Var:
            case TermKind::Const:
                return std::nullopt;
            case TermKind::Abs: {
                if (!n.is_abs()) return std::nullopt;
                auto cb = common_binder(m, n);
                if (!cb) return std::nullopt;
                if (auto b = develop(cb->left_body, cb->right_body)) return dev_abs(cb->binder, *b);
                return std::nullopt;
            }
            case TermKind::App: {
                // DBeta first: it consumes the root redex.
                if (m.fun().is_abs()) {
                    if (auto hit = beta_towards(m, n)) return hit;
                }
                if (!n.is_app()) return std::nullopt;
                auto f = develop(m.fun(), n.fun());
                if (!f) return std::nullopt;
                auto a = develop(m.arg(), n.arg());
                if (!a) return std::nullopt;
                return dev_app(*f, *a);
            }
        }
        return std::nullopt;
    }

    std::optional<DevProof> beta_towards(const Term& m, const Term& n) {
        const Pattern& p = m.fun().binder();
        auto tau = match_structural(p, m.arg());
        if (!tau) return std::nullopt;
        std::vector<Name> names;
        std::vector<const std::vector<TargetEntry>*> lists;
        const auto& bodies = targets(m.fun().body());
        lists.push_back(&bodies);
        for (const auto& [x, t] : *tau) {
            names.push_back(x);
            lists.push_back(&targets(t));
        }
        std::optional<DevProof> found;
        for_each_choice(lists, [&](const std::vector<std::size_t>& idx) {
            if (found) return;
            Substitution image;
            for (std::size_t i = 0; i < names.size(); ++i) image.bind(names[i], (*lists[i + 1])[idx[i + 1]].proof->target);
            const DevProof& body = bodies[idx[0]].proof;
            if (alpha_eq(apply_subst(image, body->target), n)) {
                SubstDevProof sd;
                for (std::size_t i = 0; i < names.size(); ++i) {
                    sd.per_variable.emplace(names[i], (*lists[i + 1])[idx[i + 1]].proof);
                }
                found = dev_beta(p, m.arg(), body, std::move(sd));
            }
        });
        return found;
    }

    std::unordered_map<std::string, std::vector<TargetEntry>> target_cache_;
    std::unordered_map<std::string, std::vector<DevProof>> all_cache_;
    std::unordered_map<std::string, std::optional<DevProof>> pair_cache_;
};

}  // namespace

std::optional<DevProof> is_development(const Term& m, const Term& n) {
    DevSearch s;
    return s.develop(m, n);
}

std::optional<SubstDevProof> is_subst_development(const Substitution& nu, const Substitution& theta) {
    if (nu.domain() != theta.domain()) return std::nullopt;
    DevSearch s;
    SubstDevProof out;
    for (const auto& [x, t] : nu) {
        auto d = s.develop(t, theta(x));
        if (!d) return std::nullopt;
        out.per_variable.emplace(x, *d);
    }
    return out;
}

std::vector<DevProof> all_developments(const Term& m) {
    DevSearch s;
    return s.all(m);
}

// ---------------------------------------------------------------------------
// Internal developments

namespace {

IntDevProof make_int(IntNode n) { return std::make_shared<const IntNode>(std::move(n)); }

}  // namespace

IntDevProof int_refl(const Term& m) {
    return make_int(IntNode{IntRule::IRefl, m, m, std::nullopt, std::nullopt, {}, {}, {}, {}});
}

IntDevProof int_abs(const Pattern& binder, DevProof body) {
    Term s = Term::abs(binder, body->source);
    Term t = Term::abs(binder, body->target);
    return make_int(IntNode{IntRule::IAbs, s, t, std::nullopt, binder, {}, {}, std::move(body), {}});
}

IntDevProof int_app1(IntDevProof fun, DevProof arg) {
    Term s = Term::app(fun->source, arg->source);
    Term t = Term::app(fun->target, arg->target);
    return make_int(IntNode{IntRule::IApp1, s, t, std::nullopt, std::nullopt, std::move(fun), {}, {}, std::move(arg)});
}

IntDevProof int_app2(const Pattern& binder, DevProof body, IntDevProof arg) {
    Term s = Term::app(Term::abs(binder, body->source), arg->source);
    Term t = Term::app(Term::abs(binder, body->target), arg->target);
    return make_int(IntNode{IntRule::IApp2, s, t, std::nullopt, binder, {}, std::move(arg), std::move(body), {}});
}

IntDevProof p_match(const Pattern& p, DevProof d) {
    Term s = d->source;
    Term t = d->target;
    return make_int(IntNode{IntRule::PMatch, s, t, p, std::nullopt, {}, {}, std::move(d), {}});
}

IntDevProof p_const(const Pattern& p, IntDevProof inner) {
    Term s = inner->source;
    Term t = inner->target;
    return make_int(IntNode{IntRule::PConst, s, t, p, std::nullopt, std::move(inner), {}, {}, {}});
}

IntDevProof p_no_cdata(const Pattern& p, IntDevProof inner) {
    Term s = inner->source;
    Term t = inner->target;
    return make_int(IntNode{IntRule::PNoCData, s, t, p, std::nullopt, std::move(inner), {}, {}, {}});
}

IntDevProof p_cdata_no1(const Pattern& p, IntDevProof head, DevProof arg) {
    Term s = Term::app(head->source, arg->source);
    Term t = Term::app(head->target, arg->target);
    return make_int(IntNode{IntRule::PCDataNo1, s, t, p, std::nullopt, std::move(head), {}, {}, std::move(arg)});
}

IntDevProof p_cdata_no2(const Pattern& p, DevProof head, IntDevProof arg) {
    Term s = Term::app(head->source, arg->source);
    Term t = Term::app(head->target, arg->target);
    return make_int(IntNode{IntRule::PCDataNo2, s, t, p, std::nullopt, {}, std::move(arg), std::move(head), {}});
}

IntDevProof p_cdata_no3(const Pattern& p, DevProof head, DevProof arg) {
    Term s = Term::app(head->source, arg->source);
    Term t = Term::app(head->target, arg->target);
    return make_int(IntNode{IntRule::PCDataNo3, s, t, p, std::nullopt, {}, {}, std::move(head), std::move(arg)});
}

IntDevProof p_const_short(const Pattern& p, const Term& constant) {
    return make_int(IntNode{IntRule::PConstShort, constant, constant, p, std::nullopt, {}, {}, {}, {}});
}

IntDevProof int_refl_p(const Pattern& p, const Term& m) {
    if (matches_structural(p, m)) return p_match(p, dev_refl(m));
    if (p.is_const()) return p_const(p, int_refl(m));
    if (!is_data_term(m)) return p_no_cdata(p, int_refl(m));
    if (m.is_const()) return p_const_short(p, m);
    const Pattern& d = p.head();
    if (!matches_structural(d, m.fun())) return p_cdata_no1(p, int_refl_p(d, m.fun()), dev_refl(m.arg()));
    if (!matches_structural(p.arg(), m.arg())) return p_cdata_no2(p, dev_refl(m.fun()), int_refl_p(p.arg(), m.arg()));
    return p_cdata_no3(p, dev_refl(m.fun()), dev_refl(m.arg()));
}

bool check_internal(const IntDevProof& d) {
    if (!d) return false;
    const bool indexed = d->index.has_value();
    if (indexed != is_pattern_rule(d->rule)) return false;
    switch (d->rule) {
        case IntRule::IRefl:
            return alpha_eq(d->source, d->target);
        case IntRule::IAbs:
            return d->binder && check_development(d->dev_left) &&
                   is_abs_of(d->source, *d->binder, d->dev_left->source) &&
                   is_abs_of(d->target, *d->binder, d->dev_left->target);
        case IntRule::IApp1:
            return check_internal(d->int_left) && !d->int_left->index && !d->int_left->source.is_abs() &&
                   check_development(d->dev_right) &&
                   is_app_of(d->source, d->int_left->source, d->dev_right->source) &&
                   is_app_of(d->target, d->int_left->target, d->dev_right->target);
        case IntRule::IApp2:
            return d->binder && check_development(d->dev_left) && check_internal(d->int_right) &&
                   d->int_right->index && *d->int_right->index == *d->binder &&
                   is_redex_of(d->source, *d->binder, d->dev_left->source, d->int_right->source) &&
                   is_redex_of(d->target, *d->binder, d->dev_left->target, d->int_right->target);
        case IntRule::PMatch:
            return check_development(d->dev_left) && matches_structural(*d->index, d->source) &&
                   alpha_eq(d->source, d->dev_left->source) && alpha_eq(d->target, d->dev_left->target);
        case IntRule::PConst:
            return d->index->is_const() && check_internal(d->int_left) && !d->int_left->index &&
                   alpha_eq(d->source, d->int_left->source) && alpha_eq(d->target, d->int_left->target);
        case IntRule::PNoCData:
            return d->index->is_app() && !is_data_term(d->source) && check_internal(d->int_left) &&
                   !d->int_left->index && alpha_eq(d->source, d->int_left->source) &&
                   alpha_eq(d->target, d->int_left->target);
        case IntRule::PConstShort:
            return d->index->is_app() && d->source.is_const() && alpha_eq(d->source, d->target);
        case IntRule::PCDataNo1:
        case IntRule::PCDataNo2:
        case IntRule::PCDataNo3: {
            const Pattern& p = *d->index;
            if (!p.is_app() || !d->source.is_app() || !is_data_term(d->source.fun())) return false;
            const Pattern& dp = p.head();
            const Pattern& q = p.arg();
            const Term& left = d->source.fun();
            const Term& right = d->source.arg();
            if (d->rule == IntRule::PCDataNo1) {
                if (!check_internal(d->int_left) || !d->int_left->index || !(*d->int_left->index == dp)) return false;
                if (!check_development(d->dev_right)) return false;
                if (matches_structural(dp, left)) return false;
                return is_app_of(d->source, d->int_left->source, d->dev_right->source) &&
                       is_app_of(d->target, d->int_left->target, d->dev_right->target);
            }
            if (d->rule == IntRule::PCDataNo2) {
                if (!check_development(d->dev_left) || !check_internal(d->int_right) || !d->int_right->index ||
                    !(*d->int_right->index == q)) {
                    return false;
                }
                if (!matches_structural(dp, left) || matches_structural(q, right)) return false;
                return is_app_of(d->source, d->dev_left->source, d->int_right->source) &&
                       is_app_of(d->target, d->dev_left->target, d->int_right->target);
            }
            if (!check_development(d->dev_left) || !check_development(d->dev_right)) return false;
            if (!matches_structural(dp, left) || !matches_structural(q, right) || matches_structural(p, d->source)) {
                return false;
            }
            return is_app_of(d->source, d->dev_left->source, d->dev_right->source) &&
                   is_app_of(d->target, d->dev_left->target, d->dev_right->target);
        }
    }
    return false;
}

DevProof erase(const IntDevProof& d) {
    switch (d->rule) {
        case IntRule::IRefl:
        case IntRule::PConstShort:
            return dev_refl(d->source);
        case IntRule::IAbs:
            return dev_abs(*d->binder, d->dev_left);
        case IntRule::IApp1:
            return dev_app(erase(d->int_left), d->dev_right);
        case IntRule::IApp2:
            return dev_app(dev_abs(*d->binder, d->dev_left), erase(d->int_right));
        case IntRule::PMatch:
            return d->dev_left;
        case IntRule::PConst:
        case IntRule::PNoCData:
            return erase(d->int_left);
        case IntRule::PCDataNo1:
            return dev_app(erase(d->int_left), d->dev_right);
        case IntRule::PCDataNo2:
            return dev_app(d->dev_left, erase(d->int_right));
        case IntRule::PCDataNo3:
            return dev_app(d->dev_left, d->dev_right);
    }
    throw std::logic_error("unreachable");
}

std::optional<IntDevProof> is_internal_development(const Term& m, const Term& n, IntRuleSet rules) {
    DevSearch s;
    return s.internal(m, n, rules);
}

std::optional<IntDevProof> is_internal_development_p(const Pattern& p, const Term& m, const Term& n,
                                                     IntRuleSet rules) {
    for (const auto& x : p.vars()) {
        if (m.has_free(x)) throw PreconditionError("pattern variable " + x + " is free in " + to_string(m));
    }
    DevSearch s;
    return s.internal_p(p, m, n, rules);
}

namespace {

class IntEnumerator {
public:
    explicit IntEnumerator(IntRuleSet rules) : rules_(rules) {}

    std::vector<IntDevProof> plain(const Term& m) {
        std::vector<IntDevProof> out{int_refl(m)};
        switch (m.kind()) {
            case TermKind::Var:
            case TermKind::Const:
                break;
            case TermKind::Abs: {
                auto bodies = devs_.all(m.body());
                for (std::size_t i = 1; i < bodies.size(); ++i) out.push_back(int_abs(m.binder(), bodies[i]));
                break;
            }
            case TermKind::App: {
                auto args = devs_.all(m.arg());
                if (m.fun().is_abs()) {
                    const Pattern& p = m.fun().binder();
                    auto bodies = devs_.all(m.fun().body());
                    auto inner = pattern(p, m.arg());
                    for (const auto& b : bodies) {
                        for (const auto& a : inner) out.push_back(int_app2(p, b, a));
                    }
                } else {
                    for (const auto& f : plain(m.fun())) {
                        for (const auto& a : args) out.push_back(int_app1(f, a));
                    }
                }
                break;
            }
        }
        return out;
    }

    std::vector<IntDevProof> pattern(const Pattern& p, const Term& m) {
        std::vector<IntDevProof> out;
        if (matches_structural(p, m)) {
            for (const auto& d : devs_.all(m)) out.push_back(p_match(p, d));
        }
        if (p.is_const()) {
            for (const auto& i : plain(m)) out.push_back(p_const(p, i));
            return out;
        }
        if (p.is_var()) return out;
        if (!is_data_term(m)) {
            for (const auto& i : plain(m)) out.push_back(p_no_cdata(p, i));
            return out;
        }
        if (m.is_const()) {
            if (rules_ == IntRuleSet::Extended) out.push_back(p_const_short(p, m));
            return out;
        }
        const Pattern& d = p.head();
        const Pattern& q = p.arg();
        if (!matches_structural(d, m.fun())) {
            auto args = devs_.all(m.arg());
            for (const auto& f : pattern(d, m.fun())) {
                for (const auto& a : args) out.push_back(p_cdata_no1(p, f, a));
            }
        } else if (!matches_structural(q, m.arg())) {
            auto funs = devs_.all(m.fun());
            auto args = pattern(q, m.arg());
            for (const auto& f : funs) {
                for (const auto& a : args) out.push_back(p_cdata_no2(p, f, a));
            }
        } else if (!matches_structural(p, m)) {
            auto funs = devs_.all(m.fun());
            auto args = devs_.all(m.arg());
            for (const auto& f : funs) {
                for (const auto& a : args) out.push_back(p_cdata_no3(p, f, a));
            }
        }
        return out;
    }

private:
    IntRuleSet rules_;
    DevSearch devs_;
};

}  // namespace

std::vector<IntDevProof> all_internal_developments(const Term& m, IntRuleSet rules) {
    IntEnumerator e(rules);
    return e.plain(m);
}

std::vector<IntDevProof> all_internal_developments_p(const Pattern& p, const Term& m, IntRuleSet rules) {
    IntEnumerator e(rules);
    return e.pattern(p, m);
}

// ---------------------------------------------------------------------------
// match_after_dev

namespace {

void match_after_rec(const DevProof& d, const Pattern& p, MatchAfterDev& acc) {
    switch (p.kind()) {
        case PatternKind::Var:
            acc.theta.bind(p.name(), d->target);
            acc.subst.per_variable.emplace(p.name(), d);
            return;
        case PatternKind::Const:
            return;
        case PatternKind::App:
            if (d->rule == DevRule::DRefl) {
                auto nu = match_structural(p, d->source);
                if (!nu) throw PreconditionError("pattern does not match the development source");
                for (const auto& [x, t] : *nu) {
                    acc.theta.bind(x, t);
                    acc.subst.per_variable.emplace(x, dev_refl(t));
                }
                return;
            }
            // The head of a matching term is data, so DBeta cannot occur here.
            if (d->rule != DevRule::DApp) throw PreconditionError("development of a data term must be DRefl or DApp");
            match_after_rec(d->fun, p.head(), acc);
            match_after_rec(d->arg, p.arg(), acc);
            return;
    }
}

}  // namespace

MatchAfterDev match_after_dev(const DevProof& d, const Pattern& p, const Substitution& nu) {
    auto direct = match_structural(p, d->source);
    if (!direct || !alpha_eq(*direct, nu)) {
        throw PreconditionError(to_string(p) + " does not match " + to_string(d->source) + " with " + to_string(nu));
    }
    MatchAfterDev out;
    match_after_rec(d, p, out);
    auto check = match_structural(p, d->target);
    if (!check || !alpha_eq(*check, out.theta)) {
        throw std::logic_error("development lost the match of " + to_string(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// subst_apply_dev

namespace {

class SubstDev {
public:
    explicit SubstDev(const SubstDevProof& sd) : sd_(sd), nu_(sd.source()), theta_(sd.target()) {
        vars_ = nu_.vars();
        NameSet tv = theta_.vars();
        vars_.insert(tv.begin(), tv.end());
    }

    DevProof run(const DevProof& d) {
        if (!touches(d->source) && !touches(d->target)) return d;
        switch (d->rule) {
            case DevRule::DRefl:
                return refl(d->source);
            case DevRule::DAbs: {
                auto [p, body] = apart(*d->binder, d->body);
                return dev_abs(p, run(body));
            }
            case DevRule::DApp:
                return dev_app(run(d->fun), run(d->arg));
            case DevRule::DBeta: {
                auto [p, body] = apart(*d->binder, d->body);
                std::map<Name, Name> renaming = renaming_between(*d->binder, p);
                SubstDevProof inner;
                for (const auto& [x, px] : d->subst.per_variable) {
                    auto it = renaming.find(x);
                    inner.per_variable.emplace(it == renaming.end() ? x : it->second, run(px));
                }
                DevProof out = dev_beta(p, apply_subst(nu_, d->source.arg()), run(body), std::move(inner));
                if (!alpha_eq(out->target, apply_subst(theta_, d->target))) {
                    throw std::logic_error("substitution development broke on " + to_string(d->source));
                }
                return out;
            }
        }
        throw std::logic_error("unreachable");
    }

private:
    bool touches(const Term& m) const {
        for (const auto& x : m.fv()) {
            if (sd_.per_variable.count(x)) return true;
        }
        return false;
    }

    DevProof refl(const Term& m) {
        if (!touches(m)) return dev_refl(m);
        switch (m.kind()) {
            case TermKind::Var:
                return sd_.per_variable.at(m.name());
            case TermKind::Const:
                return dev_refl(m);
            case TermKind::App:
                return dev_app(refl(m.fun()), refl(m.arg()));
            case TermKind::Abs: {
                NameSet avoid = vars_;
                avoid.insert(m.fv().begin(), m.fv().end());
                Term r = rebind_apart(m, avoid);
                return dev_abs(r.binder(), refl(r.body()));
            }
        }
        throw std::logic_error("unreachable");
    }

    static std::map<Name, Name> renaming_between(const Pattern& from, const Pattern& to) {
        std::map<Name, Name> out;
        const auto& a = from.var_occurrences();
        const auto& b = to.var_occurrences();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) out.emplace(a[i], b[i]);
        }
        return out;
    }

    // Renames the binder away from var(ν) ∪ var(θ), carrying the body proof along.
    std::pair<Pattern, DevProof> apart(const Pattern& p, const DevProof& body) {
        std::map<Name, Name> renaming;
        for (const auto& x : p.vars()) {
            if (vars_.count(x)) renaming.emplace(x, Name{});
        }
        if (renaming.empty()) return {p, body};
        NameSet blocked = vars_;
        blocked.insert(p.vars().begin(), p.vars().end());
        blocked.insert(body->source.fv().begin(), body->source.fv().end());
        blocked.insert(body->target.fv().begin(), body->target.fv().end());
        for (auto& [x, fresh] : renaming) {
            fresh = fresh_name(x, blocked);
            blocked.insert(fresh);
        }
        return {rename_pattern(p, renaming), rename_dev(body, renaming)};
    }

    const SubstDevProof& sd_;
    Substitution nu_;
    Substitution theta_;
    NameSet vars_;
};

}  // namespace

DevProof subst_apply_dev(const SubstDevProof& sd, const DevProof& d) {
    if (!check_subst_development(sd)) throw PreconditionError("substitution development does not replay");
    SubstDev run(sd);
    return run.run(d);
}

DevProof body_development(const DevProof& d, const Term& abs) {
    if (!abs.is_abs()) throw std::invalid_argument(to_string(abs) + " is not an abstraction");
    if (d->rule == DevRule::DRefl) return dev_refl(abs.body());
    if (d->rule != DevRule::DAbs) throw std::invalid_argument("development of an abstraction must be DRefl or DAbs");
    const Pattern& have = *d->binder;
    const Pattern& want = abs.binder();
    if (have == want) return d->body;
    std::map<Name, Name> renaming;
    const auto& a = have.var_occurrences();
    const auto& b = want.var_occurrences();
    if (a.size() != b.size()) throw std::invalid_argument("binders of different shapes");
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != b[k]) renaming.emplace(a[k], b[k]);
    }
    return rename_dev(d->body, renaming);
}

DevProof rename_dev(const DevProof& d, const std::map<Name, Name>& renaming) {
    SubstDevProof sd;
    for (const auto& [x, y] : renaming) sd.per_variable.emplace(x, dev_refl(Term::var(y)));
    SubstDev run(sd);
    return run.run(d);
}

}  // namespace patcalc
