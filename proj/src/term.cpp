#include "patcalc/term.hpp"

#include <algorithm>
#include <iterator>
#include <utility>

namespace patcalc {

namespace {

std::vector<Name> merge_sorted(const std::vector<Name>& a, const std::vector<Name>& b) {
    std::vector<Name> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Name> subtract_sorted(const std::vector<Name>& a, const std::vector<Name>& b) {
    std::vector<Name> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Pattern

Pattern Pattern::var(Name name) {
    auto n = std::make_shared<Node>();
    n->kind = PatternKind::Var;
    n->occurrences = {name};
    n->vars = {name};
    n->name = std::move(name);
    return Pattern(std::move(n));
}

Pattern Pattern::constant(Name name) {
    auto n = std::make_shared<Node>();
    n->kind = PatternKind::Const;
    n->name = std::move(name);
    return Pattern(std::move(n));
}

Pattern Pattern::app(Pattern head, Pattern arg) {
    if (!head.is_data()) {
        throw std::invalid_argument("pattern application needs a data pattern in head position");
    }
    auto n = std::make_shared<Node>();
    n->kind = PatternKind::App;
    n->occurrences = head.var_occurrences();
    n->occurrences.insert(n->occurrences.end(), arg.var_occurrences().begin(),
                          arg.var_occurrences().end());
    n->vars = merge_sorted(head.vars(), arg.vars());
    n->size = head.size() + arg.size();
    n->head = std::make_shared<const Pattern>(std::move(head));
    n->arg = std::make_shared<const Pattern>(std::move(arg));
    return Pattern(std::move(n));
}

const Name& Pattern::name() const {
    if (is_app()) throw std::logic_error("applied pattern has no name");
    return node_->name;
}

const Pattern& Pattern::head() const {
    if (!is_app()) throw std::logic_error("pattern is not an application");
    return *node_->head;
}

const Pattern& Pattern::arg() const {
    if (!is_app()) throw std::logic_error("pattern is not an application");
    return *node_->arg;
}

bool operator==(const Pattern& a, const Pattern& b) {
    if (a.same_node(b)) return true;
    if (a.kind() != b.kind()) return false;
    if (a.is_app()) return a.head() == b.head() && a.arg() == b.arg();
    return a.name() == b.name();
}

bool operator<(const Pattern& a, const Pattern& b) {
    if (a.same_node(b)) return false;
    if (a.kind() != b.kind()) return a.kind() < b.kind();
    if (!a.is_app()) return a.name() < b.name();
    if (a.head() == b.head()) return a.arg() < b.arg();
    return a.head() < b.head();
}

// ---------------------------------------------------------------------------
// Term

Term Term::var(Name name) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Var;
    n->fv = {name};
    n->name = std::move(name);
    return Term(std::move(n));
}

Term Term::constant(Name name) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Const;
    n->name = std::move(name);
    return Term(std::move(n));
}

Term Term::abs(Pattern binder, Term body) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::Abs;
    n->fv = subtract_sorted(body.fv(), binder.vars());
    n->size = binder.size() + body.size();
    n->binder = std::move(binder);
    n->left = std::make_shared<const Term>(std::move(body));
    return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
    auto n = std::make_shared<Node>();
    n->kind = TermKind::App;
    n->fv = merge_sorted(fun.fv(), arg.fv());
    n->size = fun.size() + arg.size();
    n->left = std::make_shared<const Term>(std::move(fun));
    n->right = std::make_shared<const Term>(std::move(arg));
    return Term(std::move(n));
}

const Name& Term::name() const {
    if (!is_var() && !is_const()) throw std::logic_error("term is not an atom");
    return node_->name;
}

const Pattern& Term::binder() const {
    if (!is_abs()) throw std::logic_error("term is not an abstraction");
    return *node_->binder;
}

const Term& Term::body() const {
    if (!is_abs()) throw std::logic_error("term is not an abstraction");
    return *node_->left;
}

const Term& Term::fun() const {
    if (!is_app()) throw std::logic_error("term is not an application");
    return *node_->left;
}

const Term& Term::arg() const {
    if (!is_app()) throw std::logic_error("term is not an application");
    return *node_->right;
}

bool Term::has_free(const Name& x) const {
    return std::binary_search(node_->fv.begin(), node_->fv.end(), x);
}

// ---------------------------------------------------------------------------
// Substitution

Term Substitution::operator()(const Name& x) const {
    if (auto it = map_.find(x); it != map_.end()) return it->second;
    return Term::var(x);
}

const Term* Substitution::find(const Name& x) const {
    auto it = map_.find(x);
    return it == map_.end() ? nullptr : &it->second;
}

NameSet Substitution::domain() const {
    NameSet out;
    for (const auto& [x, _] : map_) out.insert(x);
    return out;
}

NameSet Substitution::vars() const {
    NameSet out;
    for (const auto& [x, t] : map_) {
        out.insert(x);
        out.insert(t.fv().begin(), t.fv().end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Free variables and alpha-equivalence

NameSet free_vars(const Term& m) { return NameSet(m.fv().begin(), m.fv().end()); }

bool is_free_in(const Name& x, const Term& m) { return m.has_free(x); }

NameSet pattern_vars(const Pattern& p) { return NameSet(p.vars().begin(), p.vars().end()); }

namespace {

using Frame = std::vector<std::pair<Name, int>>;

int lookup(const Frame& env, const Name& x) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == x) return it->second;
    }
    return -1;
}

// Walks two binders in lockstep. Variables at the same position get the same
// fresh id; a repeated variable must pair with the same partner each time.
bool align_patterns(const Pattern& a, const Pattern& b, Frame& left, Frame& right,
                    std::size_t left_base, std::size_t right_base, int& next_id) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case PatternKind::Const:
            return a.name() == b.name();
        case PatternKind::App:
            return align_patterns(a.head(), b.head(), left, right, left_base, right_base, next_id) &&
                   align_patterns(a.arg(), b.arg(), left, right, left_base, right_base, next_id);
        case PatternKind::Var: {
            int la = -1;
            int rb = -1;
            for (std::size_t i = left_base; i < left.size(); ++i)
                if (left[i].first == a.name()) la = left[i].second;
            for (std::size_t i = right_base; i < right.size(); ++i)
                if (right[i].first == b.name()) rb = right[i].second;
            if (la < 0 && rb < 0) {
                int id = next_id++;
                left.emplace_back(a.name(), id);
                right.emplace_back(b.name(), id);
                return true;
            }
            return la == rb;
        }
    }
    return false;
}

bool alpha_rec(const Term& m, const Term& n, Frame& left, Frame& right, int& next_id) {
    if (m.kind() != n.kind()) return false;
    switch (m.kind()) {
        case TermKind::Const:
            return m.name() == n.name();
        case TermKind::Var: {
            int a = lookup(left, m.name());
            int b = lookup(right, n.name());
            if (a < 0 && b < 0) return m.name() == n.name();
            return a == b;
        }
        case TermKind::App:
            if (left.empty() && right.empty() && m.same_node(n)) return true;
            return alpha_rec(m.fun(), n.fun(), left, right, next_id) &&
                   alpha_rec(m.arg(), n.arg(), left, right, next_id);
        case TermKind::Abs: {
            if (left.empty() && right.empty() && m.same_node(n)) return true;
            std::size_t lsz = left.size();
            std::size_t rsz = right.size();
            bool ok = align_patterns(m.binder(), n.binder(), left, right, lsz, rsz, next_id) &&
                      alpha_rec(m.body(), n.body(), left, right, next_id);
            left.resize(lsz);
            right.resize(rsz);
            return ok;
        }
    }
    return false;
}

void key_pattern(const Pattern& p, Frame& env, std::size_t base, int& next_id, std::string& out) {
    switch (p.kind()) {
        case PatternKind::Const:
            out += p.name();
            return;
        case PatternKind::App:
            out += '(';
            key_pattern(p.head(), env, base, next_id, out);
            out += ' ';
            key_pattern(p.arg(), env, base, next_id, out);
            out += ')';
            return;
        case PatternKind::Var: {
            int id = -1;
            for (std::size_t i = base; i < env.size(); ++i)
                if (env[i].first == p.name()) id = env[i].second;
            if (id < 0) {
                id = next_id++;
                env.emplace_back(p.name(), id);
            }
            out += '#';
            out += std::to_string(id);
            return;
        }
    }
}

void key_rec(const Term& m, Frame& env, int& next_id, std::string& out) {
    switch (m.kind()) {
        case TermKind::Const:
            out += m.name();
            return;
        case TermKind::Var: {
            int id = lookup(env, m.name());
            if (id < 0) {
                out += m.name();
            } else {
                out += '#';
                out += std::to_string(id);
            }
            return;
        }
        case TermKind::App:
            out += '(';
            key_rec(m.fun(), env, next_id, out);
            out += ' ';
            key_rec(m.arg(), env, next_id, out);
            out += ')';
            return;
        case TermKind::Abs: {
            std::size_t sz = env.size();
            out += "(\\";
            key_pattern(m.binder(), env, sz, next_id, out);
            out += '.';
            key_rec(m.body(), env, next_id, out);
            out += ')';
            env.resize(sz);
            return;
        }
    }
}

}  // namespace

bool alpha_eq(const Term& m, const Term& n) {
    if (m.same_node(n)) return true;
    if (m.size() != n.size() || m.fv() != n.fv()) return false;
    Frame left;
    Frame right;
    int next_id = 0;
    return alpha_rec(m, n, left, right, next_id);
}

bool alpha_eq(const Substitution& a, const Substitution& b) {
    if (a.size() != b.size()) return false;
    auto it = b.begin();
    for (const auto& [x, t] : a) {
        if (it->first != x || !alpha_eq(t, it->second)) return false;
        ++it;
    }
    return true;
}

std::string canonical_key(const Term& m) {
    std::string out;
    out.reserve(m.size() * 4);
    Frame env;
    int next_id = 0;
    key_rec(m, env, next_id, out);
    return out;
}

// ---------------------------------------------------------------------------
// Fresh names and renaming

Name fresh_name(const Name& base, const NameSet& avoid) {
    std::size_t end = base.size();
    while (end > 1 && base[end - 1] >= '0' && base[end - 1] <= '9') --end;
    const Name stem = base.substr(0, end);
    for (unsigned i = 1;; ++i) {
        Name candidate = stem + std::to_string(i);
        if (!avoid.count(candidate)) return candidate;
    }
}

Pattern rename_pattern(const Pattern& p, const std::map<Name, Name>& renaming) {
    switch (p.kind()) {
        case PatternKind::Var: {
            auto it = renaming.find(p.name());
            return it == renaming.end() ? p : Pattern::var(it->second);
        }
        case PatternKind::Const:
            return p;
        case PatternKind::App:
            return Pattern::app(rename_pattern(p.head(), renaming), rename_pattern(p.arg(), renaming));
    }
    return p;
}

Term pattern_to_term(const Pattern& p) {
    switch (p.kind()) {
        case PatternKind::Var:
            return Term::var(p.name());
        case PatternKind::Const:
            return Term::constant(p.name());
        case PatternKind::App:
            return Term::app(pattern_to_term(p.head()), pattern_to_term(p.arg()));
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Substitution application

Term apply_subst(const Substitution& theta, const Term& m) {
    if (theta.empty()) return m;
    bool touches = false;
    for (const auto& x : m.fv()) {
        if (theta.contains(x)) {
            touches = true;
            break;
        }
    }
    if (!touches) return m;

    switch (m.kind()) {
        case TermKind::Var:
            return theta(m.name());
        case TermKind::Const:
            return m;
        case TermKind::App:
            return Term::app(apply_subst(theta, m.fun()), apply_subst(theta, m.arg()));
        case TermKind::Abs: {
            const Pattern& p = m.binder();
            const auto& bound = p.vars();
            Substitution inner;
            NameSet ranges;
            for (const auto& x : m.body().fv()) {
                if (std::binary_search(bound.begin(), bound.end(), x)) continue;
                if (const Term* t = theta.find(x)) {
                    inner.bind(x, *t);
                    ranges.insert(t->fv().begin(), t->fv().end());
                }
            }
            std::map<Name, Name> renaming;
            for (const auto& x : bound) {
                if (ranges.count(x)) renaming.emplace(x, Name{});
            }
            if (renaming.empty()) return Term::abs(p, apply_subst(inner, m.body()));

            NameSet avoid = ranges;
            avoid.insert(m.body().fv().begin(), m.body().fv().end());
            avoid.insert(bound.begin(), bound.end());
            for (const auto& [x, _] : inner) avoid.insert(x);
            for (auto& [x, fresh] : renaming) {
                fresh = fresh_name(x, avoid);
                avoid.insert(fresh);
                inner.bind(x, Term::var(fresh));
            }
            return Term::abs(rename_pattern(p, renaming), apply_subst(inner, m.body()));
        }
    }
    throw std::logic_error("unreachable");
}

Substitution subst_compose(const Substitution& nu, const Substitution& theta) {
    Substitution out;
    for (const auto& [x, t] : theta) out.bind(x, apply_subst(nu, t));
    for (const auto& [x, t] : nu) {
        if (!theta.contains(x)) out.bind(x, t);
    }
    return out;
}

Substitution subst_restrict(const Substitution& theta, const NameSet& xs) {
    Substitution out;
    for (const auto& [x, t] : theta) {
        if (xs.count(x)) out.bind(x, t);
    }
    return out;
}

std::optional<Substitution> subst_disjoint_union(const Substitution& a, const Substitution& b) {
    Substitution out = a;
    for (const auto& [x, t] : b) {
        if (a.contains(x)) return std::nullopt;
        out.bind(x, t);
    }
    return out;
}

bool is_data_term(const Term& m) {
    const Term* cur = &m;
    while (cur->is_app()) cur = &cur->fun();
    return cur->is_const();
}

bool is_linear(const Pattern& p) { return p.var_occurrences().size() == p.vars().size(); }

// ---------------------------------------------------------------------------
// Binder alignment

namespace {

// Positional variable correspondence between two binders of the same shape,
// required to be a bijection.
bool binder_renaming(const Pattern& from, const Pattern& to, std::map<Name, Name>& fwd,
                     std::map<Name, Name>& bwd) {
    if (from.kind() != to.kind()) return false;
    switch (from.kind()) {
        case PatternKind::Const:
            return from.name() == to.name();
        case PatternKind::App:
            return binder_renaming(from.head(), to.head(), fwd, bwd) &&
                   binder_renaming(from.arg(), to.arg(), fwd, bwd);
        case PatternKind::Var: {
            auto f = fwd.find(from.name());
            auto b = bwd.find(to.name());
            if (f == fwd.end() && b == bwd.end()) {
                fwd.emplace(from.name(), to.name());
                bwd.emplace(to.name(), from.name());
                return true;
            }
            return f != fwd.end() && b != bwd.end() && f->second == to.name() &&
                   b->second == from.name();
        }
    }
    return false;
}

}  // namespace

std::optional<Term> body_under(const Term& abs, const Pattern& binder) {
    if (!abs.is_abs()) return std::nullopt;
    if (abs.binder().same_node(binder) || abs.binder() == binder) return abs.body();
    std::map<Name, Name> fwd;
    std::map<Name, Name> bwd;
    if (!binder_renaming(abs.binder(), binder, fwd, bwd)) return std::nullopt;
    Substitution rho;
    for (const auto& [x, y] : fwd) {
        if (x == y) continue;
        if (abs.has_free(y)) return std::nullopt;
        rho.bind(x, Term::var(y));
    }
    return apply_subst(rho, abs.body());
}

std::optional<CommonBinder> common_binder(const Term& a, const Term& b, const NameSet& avoid) {
    if (!a.is_abs() || !b.is_abs()) return std::nullopt;
    {
        std::map<Name, Name> fwd;
        std::map<Name, Name> bwd;
        if (!binder_renaming(a.binder(), b.binder(), fwd, bwd)) return std::nullopt;
    }
    Pattern chosen = a.binder();
    std::map<Name, Name> renaming;
    NameSet blocked = avoid;
    blocked.insert(a.fv().begin(), a.fv().end());
    blocked.insert(b.fv().begin(), b.fv().end());
    for (const auto& x : chosen.vars()) {
        if (avoid.count(x) || b.has_free(x)) renaming.emplace(x, Name{});
    }
    if (!renaming.empty()) {
        blocked.insert(chosen.vars().begin(), chosen.vars().end());
        for (auto& [x, fresh] : renaming) {
            fresh = fresh_name(x, blocked);
            blocked.insert(fresh);
        }
        chosen = rename_pattern(chosen, renaming);
    }
    auto lb = body_under(a, chosen);
    auto rb = body_under(b, chosen);
    if (!lb || !rb) return std::nullopt;
    return CommonBinder{chosen, *lb, *rb};
}

Term rebind_apart(const Term& abs, const NameSet& avoid) {
    if (!abs.is_abs()) return abs;
    std::map<Name, Name> renaming;
    for (const auto& x : abs.binder().vars()) {
        if (avoid.count(x)) renaming.emplace(x, Name{});
    }
    if (renaming.empty()) return abs;
    NameSet blocked = avoid;
    blocked.insert(abs.fv().begin(), abs.fv().end());
    blocked.insert(abs.binder().vars().begin(), abs.binder().vars().end());
    for (auto& [x, fresh] : renaming) {
        fresh = fresh_name(x, blocked);
        blocked.insert(fresh);
    }
    Pattern p = rename_pattern(abs.binder(), renaming);
    return Term::abs(p, *body_under(abs, p));
}

}  // namespace patcalc
