#include "patcalc/oracle.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_set>

#include "patcalc/development.hpp"
#include "patcalc/head.hpp"

namespace patcalc {

void validate(const UniverseConfig& cfg) {
    if (cfg.max_term_size == 0) throw std::invalid_argument("max term size must be at least 1");
    if (cfg.constants.empty() && cfg.variables.empty()) throw std::invalid_argument("empty signature");
    for (const auto& c : cfg.constants) {
        if (c.empty() || !std::isupper(static_cast<unsigned char>(c[0]))) {
            throw std::invalid_argument("constant '" + c + "' must start with an uppercase letter");
        }
    }
    for (const auto& v : cfg.variables) {
        if (v.empty() || !std::islower(static_cast<unsigned char>(v[0]))) {
            throw std::invalid_argument("variable '" + v + "' must start with a lowercase letter");
        }
    }
}

namespace {

// by_size[n] holds the patterns of size n; data[n] the data patterns among them.
struct PatternTable {
    std::vector<std::vector<Pattern>> by_size;
    std::vector<std::vector<Pattern>> data;
};

PatternTable pattern_table(const UniverseConfig& cfg, std::size_t max_size) {
    PatternTable t;
    t.by_size.resize(max_size + 1);
    t.data.resize(max_size + 1);
    if (max_size == 0) return t;
    for (const auto& v : cfg.variables) t.by_size[1].push_back(Pattern::var(v));
    for (const auto& c : cfg.constants) {
        t.by_size[1].push_back(Pattern::constant(c));
        t.data[1].push_back(Pattern::constant(c));
    }
    for (std::size_t n = 2; n <= max_size; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            for (const auto& d : t.data[k]) {
                for (const auto& q : t.by_size[n - k]) {
                    Pattern p = Pattern::app(d, q);
                    if (!cfg.allow_non_linear && !is_linear(p)) continue;
                    t.data[n].push_back(p);
                }
            }
        }
        t.by_size[n] = t.data[n];
    }
    return t;
}

}  // namespace

std::vector<Pattern> enumerate_patterns(const UniverseConfig& cfg) {
    validate(cfg);
    PatternTable t = pattern_table(cfg, cfg.max_pattern_size);
    std::vector<Pattern> out;
    for (const auto& level : t.by_size) out.insert(out.end(), level.begin(), level.end());
    return out;
}

std::vector<Term> enumerate_terms(const UniverseConfig& cfg) {
    validate(cfg);
    const std::size_t n_max = cfg.max_term_size;
    PatternTable pats = pattern_table(cfg, std::min(cfg.max_pattern_size, n_max > 1 ? n_max - 1 : 0));
    std::vector<std::vector<Term>> by_size(n_max + 1);
    for (const auto& v : cfg.variables) by_size[1].push_back(Term::var(v));
    for (const auto& c : cfg.constants) by_size[1].push_back(Term::constant(c));
    for (std::size_t n = 2; n <= n_max; ++n) {
        std::unordered_set<std::string> seen;
        auto& level = by_size[n];
        auto keep = [&](Term t) {
            if (seen.insert(canonical_key(t)).second) level.push_back(std::move(t));
        };
        for (std::size_t k = 1; k < n && k < pats.by_size.size(); ++k) {
            for (const auto& p : pats.by_size[k]) {
                for (const auto& body : by_size[n - k]) keep(Term::abs(p, body));
            }
        }
        for (std::size_t k = 1; k < n; ++k) {
            for (const auto& f : by_size[k]) {
                for (const auto& a : by_size[n - k]) keep(Term::app(f, a));
            }
        }
    }
    std::vector<Term> out;
    for (auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
    return out;
}

// ---------------------------------------------------------------------------

namespace {

bool oracle_match_into(const Pattern& p, const Term& m, Substitution& acc) {
    switch (p.kind()) {
        case PatternKind::Var:
            if (acc.contains(p.name())) return false;
            acc.bind(p.name(), m);
            return true;
        case PatternKind::Const:
            return m.is_const() && m.name() == p.name();
        case PatternKind::App:
            return m.is_app() && oracle_match_into(p.head(), m.fun(), acc) && oracle_match_into(p.arg(), m.arg(), acc);
    }
    return false;
}

}  // namespace

std::optional<Substitution> oracle_match(const Pattern& p, const Term& m) {
    Substitution acc;
    if (!oracle_match_into(p, m, acc)) return std::nullopt;
    return acc;
}

std::vector<Term> rule_successors(const Term& m) {
    std::vector<Term> out;
    switch (m.kind()) {
        case TermKind::Var:
        case TermKind::Const:
            break;
        case TermKind::Abs:
            for (auto& b : rule_successors(m.body())) out.push_back(Term::abs(m.binder(), b));
            break;
        case TermKind::App:
            if (m.fun().is_abs()) {
                if (auto theta = oracle_match(m.fun().binder(), m.arg())) {
                    out.push_back(apply_subst(*theta, m.fun().body()));
                }
            }
            for (auto& f : rule_successors(m.fun())) out.push_back(Term::app(f, m.arg()));
            for (auto& a : rule_successors(m.arg())) out.push_back(Term::app(m.fun(), a));
            break;
    }
    return out;
}

std::vector<Term> brute_force_h_split(const Term& m, const Term& n, std::size_t max_head) {
    std::vector<Term> out;
    Term cur = m;
    for (std::size_t i = 0;; ++i) {
        if (is_internal_development(cur, n)) out.push_back(cur);
        if (i == max_head) break;
        auto h = head_step(cur);
        if (!h) break;
        cur = h->result;
    }
    return out;
}

namespace {

void chains_rec(const Term& m, std::size_t left, std::vector<Position>& prefix,
                std::vector<std::vector<Position>>& out) {
    out.push_back(prefix);
    if (left == 0) return;
    for (const auto& pos : redex_positions(m)) {
        prefix.push_back(pos);
        chains_rec(step_at(m, pos), left - 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<std::vector<Position>> enumerate_reduction_chains(const Term& m, std::size_t len) {
    std::vector<std::vector<Position>> out;
    std::vector<Position> prefix;
    chains_rec(m, len, prefix, out);
    return out;
}

std::string sequence_key(const std::vector<Term>& terms) {
    std::string out;
    for (const auto& t : terms) {
        out += canonical_key(t);
        out += ';';
    }
    return out;
}

std::vector<std::vector<Term>> enumerate_standard_sequences(const Term& m, std::size_t max_terms) {
    std::vector<std::vector<Term>> out;
    if (max_terms == 0) return out;
    std::unordered_set<std::string> seen;
    auto add = [&](std::vector<Term> s) {
        if (seen.insert(sequence_key(s)).second) out.push_back(std::move(s));
    };
    // StdVar / StdConst and the compositional rules.
    switch (m.kind()) {
        case TermKind::Var:
        case TermKind::Const:
            add({m});
            break;
        case TermKind::Abs:
            for (const auto& s : enumerate_standard_sequences(m.body(), max_terms)) {
                std::vector<Term> lifted;
                for (const auto& t : s) lifted.push_back(Term::abs(m.binder(), t));
                add(std::move(lifted));
            }
            break;
        case TermKind::App:
            for (const auto& left : enumerate_standard_sequences(m.fun(), max_terms)) {
                for (const auto& right : enumerate_standard_sequences(m.arg(), max_terms + 1 - left.size())) {
                    std::vector<Term> joined;
                    for (const auto& l : left) joined.push_back(Term::app(l, right.front()));
                    for (std::size_t i = 1; i < right.size(); ++i) joined.push_back(Term::app(left.back(), right[i]));
                    add(std::move(joined));
                }
            }
            break;
    }
    // StdHead.
    if (max_terms >= 2) {
        if (auto h = head_step(m)) {
            for (const auto& rest : enumerate_standard_sequences(h->result, max_terms - 1)) {
                std::vector<Term> s{m};
                s.insert(s.end(), rest.begin(), rest.end());
                add(std::move(s));
            }
        }
    }
    return out;
}

}  // namespace patcalc
