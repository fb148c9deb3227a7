#include "patcalc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "patcalc/development.hpp"
#include "patcalc/head.hpp"
#include "patcalc/hsplit.hpp"
#include "patcalc/matching.hpp"
#include "patcalc/reduction.hpp"
#include "patcalc/standardisation.hpp"
#include "patcalc/syntax.hpp"

namespace patcalc {

Universe build_universe(const UniverseConfig& cfg) {
    Universe u{cfg, enumerate_terms(cfg), enumerate_patterns(cfg), {}};
    u.size_end.assign(cfg.max_term_size + 1, 0);
    for (const auto& t : u.terms) ++u.size_end[t.size()];
    for (std::size_t s = 1; s < u.size_end.size(); ++s) u.size_end[s] += u.size_end[s - 1];
    return u;
}

namespace {

// Collects the outcome of a property across workers. The reported
// counterexample is the one with the smallest index.
class Tally {
public:
    void count(std::size_t n = 1) { checked_.fetch_add(n, std::memory_order_relaxed); }

    void fail(std::size_t index, std::string what) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!first_ || index < first_->first) first_ = {index, std::move(what)};
    }

    bool failed_before(std::size_t index) {
        std::lock_guard<std::mutex> lock(mu_);
        return first_ && first_->first < index;
    }

    void finish(PropertyResult& r) const {
        r.checked = checked_.load();
        r.passed = !first_;
        if (first_) r.detail = first_->second;
    }

private:
    std::atomic<std::size_t> checked_{0};
    std::mutex mu_;
    std::optional<std::pair<std::size_t, std::string>> first_;
};

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Calls body(i) for i in [0, n) spread over the workers. Exceptions become
// failures at their index.
template <typename Body>
void parallel_for(std::size_t n, unsigned workers, Tally& tally, Body&& body) {
    auto run = [&](std::size_t start, std::size_t stride) {
        for (std::size_t i = start; i < n; i += stride) {
            if (tally.failed_before(i)) return;
            try {
                body(i);
            } catch (const std::exception& e) {
                tally.fail(i, std::string("exception: ") + e.what());
            }
        }
    };
    workers = worker_count(workers);
    if (workers == 1 || n < 2) {
        run(0, 1);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
    for (auto& t : pool) t.join();
}

std::string show(const Term& m) { return to_string(m); }
std::string show(const Pattern& p) { return to_string(p); }

// Pattern variables renamed to names outside the term signature, so the
// disjointness precondition of match_pattern holds against any universe term.
Pattern apart(const Pattern& p) {
    std::map<Name, Name> ren;
    for (const auto& x : pattern_vars(p)) ren.emplace(x, "p_" + x);
    return rename_pattern(p, ren);
}

// Every nonempty ν with domain within fv(m) whose values, together with m,
// fit the size bound.
template <typename Fn>
void for_each_subst(const Universe& u, const Term& m, Fn&& fn) {
    if (m.size() >= u.cfg.max_term_size) return;
    const auto& xs = m.fv();
    Substitution nu;
    auto rec = [&](auto& self, std::size_t k, std::size_t budget) -> void {
        if (k == xs.size()) {
            if (!nu.empty()) fn(nu);
            return;
        }
        self(self, k + 1, budget);
        for (std::size_t i = 0; i < u.size_end[budget]; ++i) {
            nu.bind(xs[k], u.terms[i]);
            self(self, k + 1, budget - u.terms[i].size());
        }
        nu.erase(xs[k]);
    };
    rec(rec, 0, u.cfg.max_term_size - m.size());
}

bool same_subst(const std::optional<Substitution>& a, const std::optional<Substitution>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || alpha_eq(*a, *b);
}

// ---------------------------------------------------------------------------
// Independent derivation counters for the head relations, read straight
// off the rules with no exclusivity assumed.

std::size_t count_pattern_derivations(const Pattern& p, const Term& m);

std::size_t count_head_derivations(const Term& m) {
    if (!m.is_app()) return 0;
    const Term& f = m.fun();
    std::size_t n = count_head_derivations(f);  // HApp1
    if (f.is_abs()) {
        if (oracle_match(f.binder(), m.arg())) ++n;           // HBeta
        n += count_pattern_derivations(f.binder(), m.arg());  // HPat
    }
    return n;
}

std::size_t count_pattern_derivations(const Pattern& p, const Term& m) {
    if (p.is_var()) return 0;
    std::size_t n = count_head_derivations(m);  // PatHead
    if (p.is_app() && m.is_app() && is_data_term(m.fun())) {
        n += count_pattern_derivations(p.head(), m.fun());                                      // Pat1
        if (oracle_match(p.head(), m.fun())) n += count_pattern_derivations(p.arg(), m.arg());  // Pat2
    }
    return n;
}

// ---------------------------------------------------------------------------

// The message is only built for a failure.
template <typename Msg>
void check(Tally& t, std::size_t i, bool ok, Msg&& what) {
    t.count();
    if (!ok) t.fail(i, what());
}

void criterion_1(const Universe&, unsigned, Tally& t) {
    Pattern p = parse_pattern("(A x) x");
    Term m = parse_term("A B ((\\y.y) C)");
    Term n = parse_term("A B C");
    auto proof = is_internal_development_p(p, m, n);
    check(t, 0, proof && (*proof)->rule == IntRule::PCDataNo3 && check_internal(*proof),
          [&] { return std::string("A B ((\\y.y) C) is not accepted via PCDataNo3"); });
    check(t, 1, !matches(p, m), [&] { return std::string("(A x) x matches A B ((\\y.y) C)"); });
}

void criterion_2(const Universe&, unsigned, Tally& t) {
    const std::string r1 = "((\\z.z) B)";
    const std::string r2 = "((\\z.z) (B C))";
    const std::string n = "((A " + r1 + ") " + r2 + ")";
    struct Case {
        std::string pattern;
        std::string expected;  // position of the step, relative to (\p.x) N
        bool root_match;
    };
    const std::vector<Case> cases{
        {"(A x) (B y)", "Arg.Arg", false},
        {"(A (B x)) y", "Arg.Fun.Arg", false},
        {"(A (B x)) (C y)", "Arg.Fun.Arg", false},
        {"(A x) y", "root", true},
    };
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto& c = cases[k];
        Term m = parse_term("(\\" + c.pattern + ".x) " + n);
        auto h = head_step(m);
        bool ok = h && to_string(h->position) == c.expected && alpha_eq(step_at(m, h->position), h->result);
        if (ok && c.root_match) ok = h->justification->rule == HeadRule::HBeta && alpha_eq(h->result, parse_term(r1));
        if (ok && !c.root_match) {
            auto ph = pattern_head_step(parse_pattern(c.pattern), parse_term(n));
            ok = ph && alpha_eq(Term::app(m.fun(), ph->result), h->result);
        }
        check(t, k, ok, [&] { return std::string("pattern " + c.pattern + " does not select " + c.expected); });
    }
}

void criterion_3(const Universe& u, unsigned w, Tally& t) {
    parallel_for(u.terms.size(), w, t, [&](std::size_t i) {
        const Term& m = u.terms[i];
        std::size_t n = count_head_derivations(m);
        auto h = head_step(m);
        auto rules = applicable_head_rules(m);
        check(t, i, n <= 1 && (n == 1) == h.has_value() && rules.size() <= 1,
              [&] { return std::string("head step of " + show(m) + " has " + std::to_string(n) + " derivations"); });
        for (const auto& p : u.patterns) {
            std::size_t np = count_pattern_derivations(p, m);
            auto ph = pattern_head_step(p, m);
            auto prules = applicable_pattern_rules(p, m);
            check(t, i, np <= 1 && (np == 1) == ph.has_value() && prules.size() <= 1, [&] {
                return std::string(show(p) + "-step of " + show(m) + " has " + std::to_string(np) + " derivations");
            });
        }
    });
}

void criterion_4(const Universe& u, unsigned w, Tally& t) {
    std::vector<Pattern> renamed;
    for (const auto& p : u.patterns) renamed.push_back(apart(p));
    parallel_for(u.terms.size(), w, t, [&](std::size_t i) {
        const Term& m = u.terms[i];
        for (std::size_t k = 0; k < renamed.size(); ++k) {
            const Pattern& p = renamed[k];
            auto theta = match_pattern(p, m);
            auto at = [&] { return show(u.patterns[k]) + " against " + show(m); };
            check(t, i, same_subst(theta, oracle_match(p, m)),
                  [&] { return std::string("match is not unique for " + at()); });
            if (!theta) continue;
            check(t, i, theta->domain() == pattern_vars(p),
                  [&] { return std::string("domain differs from fv(p) for " + at()); });
            if (!p.is_var())
                check(t, i, is_data_term(m), [&] { return std::string("data pattern matches non-data for " + at()); });
            if (is_linear(p)) {
                check(t, i, alpha_eq(apply_subst(*theta, pattern_to_term(p)), m),
                      [&] { return std::string("reconstruction fails for " + at()); });
            }
            for_each_subst(u, m, [&](const Substitution& nu) {
                Substitution gamma = match_under_subst(p, m, *theta, nu);
                auto direct = oracle_match(p, apply_subst(nu, m));
                check(t, i, direct && alpha_eq(*direct, gamma), [&] {
                    return std::string("substitution compatibility fails for " + at() + " under " + to_string(nu));
                });
            });
        }
    });
}

void criterion_5(const Universe& u, unsigned w, Tally& t) {
    const std::size_t max_head = 3 * u.cfg.max_chain_length;
    parallel_for(u.terms.size(), w, t, [&](std::size_t i) {
        const Term& m = u.terms[i];
        for (const auto& d : all_developments(m)) {
            auto at = [&] { return show(m) + " to " + show(d->target); };
            HSplit s = h_split(d);
            check(t, i, check_hsplit(s, m, d->target), [&] { return std::string("h_split fails for " + at()); });
            auto mids = brute_force_h_split(m, d->target, max_head);
            bool found = std::any_of(mids.begin(), mids.end(), [&](const Term& q) { return alpha_eq(q, s.mid); });
            check(t, i, found, [&] { return std::string("oracle does not find mid " + show(s.mid) + " for " + at()); });
            auto per = h_split_patterns(d, u.patterns);
            for (std::size_t k = 0; k < u.patterns.size(); ++k) {
                check(t, i, check_hsplit(per[k], m, d->target, u.patterns[k]),
                      [&] { return std::string("h_split_pattern " + show(u.patterns[k]) + " fails for " + at()); });
            }
        }
    });
}

void criterion_6(const Universe& u, unsigned w, Tally& t) {
    parallel_for(u.terms.size(), w, t, [&](std::size_t i) {
        const Term& m = u.terms[i];
        for (const auto& in : all_internal_developments(m)) {
            auto h = head_step(in->target);
            if (!h) continue;
            StepRecord step{in->target, h->position, h->result};
            Postponed r = postpone(in, step);
            bool ok = replay_head_chain(m, {r.step}).has_value() && check_development(r.dev) &&
                      alpha_eq(r.dev->source, r.step.result) && alpha_eq(r.dev->target, h->result);
            check(t, i, ok,
                  [&] { return std::string("postponement fails for " + show(m) + " to " + show(in->target)); });
        }
    });
}

bool one_step(const Term& a, const Term& b) {
    auto next = rule_successors(a);
    return std::any_of(next.begin(), next.end(), [&](const Term& s) { return alpha_eq(s, b); });
}

void criterion_7(const Universe& u, unsigned w, Tally& t) {
    parallel_for(u.terms.size(), w, t, [&](std::size_t i) {
        const Term& m = u.terms[i];
        for (const auto& chain : enumerate_reduction_chains(m, u.cfg.max_chain_length)) {
            Term end = m;
            for (const auto& pos : chain) end = step_at(end, pos);
            StdSequence s = standardise_reduction(m, chain);
            bool ok = alpha_eq(s.terms.front(), m) && alpha_eq(s.terms.back(), end);
            for (std::size_t k = 0; ok && k + 1 < s.terms.size(); ++k) ok = one_step(s.terms[k], s.terms[k + 1]);
            ok = ok && check_standard(s.terms).has_value();
            check(t, i, ok, [&] {
                return std::string("standardisation fails for " + show(m) + " with " + std::to_string(chain.size()) +
                                   " steps");
            });
        }
    });
}

void criterion_8(const Universe&, unsigned, Tally& t) {
    Term m = parse_term("(\\x.C) ((\\y.y) A)");
    Term mid = parse_term("(\\x.C) A");
    Term c = parse_term("C");
    check(t, 0, !check_standard({m, mid, c}), [&] { return std::string("inside-out sequence accepted as standard"); });
    check(t, 1, check_standard({m, c}).has_value(), [&] { return std::string("head sequence rejected"); });
    StdSequence s = standardise_reduction(m, {parse_position("Arg"), Position{}});
    check(t, 2, s.terms.size() == 2 && alpha_eq(s.terms[0], m) && alpha_eq(s.terms[1], c),
          [&] { return std::string("standardisation of the inside-out reduction is not [M; C]"); });
}

void criterion_9(const Universe& u, unsigned w, Tally& t) {
    std::vector<Pattern> renamed;
    for (const auto& p : u.patterns) renamed.push_back(apart(p));
    parallel_for(u.terms.size(), w, t, [&](std::size_t i) {
        const Term& m = u.terms[i];
        const bool m_data = is_data_term(m);
        for (const auto& d : all_developments(m)) {
            const Term& n = d->target;
            const bool n_data = is_data_term(n);
            auto at = [&] { return show(m) + " to " + show(n); };
            // Development and data.
            if (m_data) {
                check(t, i, n_data, [&] { return std::string("development from data yields non-data: " + at()); });
            }
            if (!m_data && n_data) {
                check(t, i, !is_internal_development(m, n),
                      [&] { return std::string("internal development creates data: " + at()); });
            }
            for (const auto& p : renamed) {
                auto nu = match_pattern(p, m);
                if (nu) {
                    // Development cannot lose matches.
                    MatchAfterDev r = match_after_dev(d, p, *nu);
                    auto theta = match_pattern(p, n);
                    bool ok = theta && alpha_eq(*theta, r.theta) && check_subst_development(r.subst) &&
                              alpha_eq(r.subst.source(), *nu) && alpha_eq(r.subst.target(), *theta);
                    check(t, i, ok, [&] { return std::string("match lost for " + show(p) + ": " + at()); });
                } else if (matches(p, n)) {
                    // ⊳int_p cannot create a match.
                    check(t, i, !is_internal_development_p(p, m, n), [&] {
                        return std::string("internal development creates match for " + show(p) + ": " + at());
                    });
                }
            }
        }
        // Left pattern head implies whole pattern head.
        if (m.is_app()) {
            for (const auto& p : u.patterns) {
                if (!p.is_app()) continue;
                auto left = pattern_head_step(p.head(), m.fun());
                if (!left) continue;
                auto whole = pattern_head_step(p, m);
                check(t, i, whole && alpha_eq(whole->result, Term::app(left->result, m.arg())), [&] {
                    return std::string("left " + show(p.head()) + "-step does not lift to " + show(p) + " on " +
                                       show(m));
                });
            }
        }
        // Head reduction is compatible with substitution.
        auto h = head_step(m);
        std::vector<std::pair<const Pattern*, Term>> psteps;
        for (const auto& p : u.patterns) {
            if (auto ph = pattern_head_step(p, m)) psteps.emplace_back(&p, ph->result);
        }
        if (!h && psteps.empty()) return;
        for_each_subst(u, m, [&](const Substitution& nu) {
            Term nm = apply_subst(nu, m);
            if (h) {
                auto nh = head_step(nm);
                check(t, i, nh && alpha_eq(nh->result, apply_subst(nu, h->result)),
                      [&] { return std::string("head step of " + show(m) + " not preserved by " + to_string(nu)); });
            }
            for (const auto& [p, r] : psteps) {
                auto np = pattern_head_step(*p, nm);
                check(t, i, np && alpha_eq(np->result, apply_subst(nu, r)), [&] {
                    return std::string(show(*p) + "-step of " + show(m) + " not preserved by " + to_string(nu));
                });
            }
        });
    });
}

using Runner = void (*)(const Universe&, unsigned, Tally&);

struct Entry {
    const char* name;
    Runner run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table{
        {"internal development example", criterion_1},
        {"head selection example", criterion_2},
        {"determinism of head steps", criterion_3},
        {"matching metatheory", criterion_4},
        {"h-development property", criterion_5},
        {"postponement", criterion_6},
        {"end-to-end standardisation", criterion_7},
        {"non-standard sequence rejected", criterion_8},
        {"lemma suite", criterion_9},
    };
    return table;
}

}  // namespace

int property_count() { return static_cast<int>(entries().size()); }

std::string property_name(int criterion) {
    if (criterion < 1 || criterion > property_count())
        throw std::out_of_range("no property " + std::to_string(criterion));
    return entries()[criterion - 1].name;
}

PropertyResult run_property(int criterion, const Universe& u, unsigned workers) {
    PropertyResult r;
    r.criterion = criterion;
    r.name = property_name(criterion);
    auto t0 = std::chrono::steady_clock::now();
    Tally tally;
    try {
        entries()[criterion - 1].run(u, workers, tally);
    } catch (const std::exception& e) {
        tally.fail(0, std::string("exception: ") + e.what());
    }
    tally.finish(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<PropertyResult> run_verify(const Universe& u, unsigned workers,
                                       const std::function<void(const PropertyResult&)>& on_result) {
    std::vector<PropertyResult> out;
    for (int k = 1; k <= property_count(); ++k) {
        out.push_back(run_property(k, u, workers));
        if (on_result) on_result(out.back());
    }
    return out;
}

}  // namespace patcalc
