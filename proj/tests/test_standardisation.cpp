#include <doctest.h>

#include <set>

#include "patcalc/head.hpp"
#include "patcalc/oracle.hpp"
#include "patcalc/standardisation.hpp"
#include "support.hpp"

using namespace patcalc;
using namespace patcalc::testing;

namespace {

StepRecord head_record(const Term& m) {
    auto h = head_step(m);
    REQUIRE(h);
    return StepRecord{m, h->position, h->result};
}

std::vector<Term> seq(std::initializer_list<const char*> ts) {
    std::vector<Term> out;
    for (const auto* t : ts) out.push_back(T(t));
    return out;
}

bool seq_alpha_eq(const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!ref_alpha(a[i], b[i])) return false;
    }
    return true;
}

void check_steps(const std::vector<Term>& ts) {
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        auto succ = rule_successors(ts[i]);
        bool ok = std::any_of(succ.begin(), succ.end(), [&](const Term& s) { return ref_alpha(s, ts[i + 1]); });
        CHECK(ok);
    }
}

}  // namespace

TEST_CASE("postponement examples") {
    Term m = T("(\\x.x) A");
    auto step = head_record(m);
    auto a = postpone(int_refl(m), step);
    CHECK(alpha_eq(a.step.result, T("A")));
    CHECK(a.dev->rule == DevRule::DRefl);

    Term m2 = T("(\\x.x) ((\\y.y) A)");
    auto i2 = *is_internal_development(m2, T("(\\x.x) A"));
    auto b = postpone(i2, head_record(T("(\\x.x) A")));
    CHECK(alpha_eq(b.step.source, m2));
    CHECK(alpha_eq(b.step.result, T("(\\y.y) A")));
    CHECK(check_development(b.dev));
    CHECK(alpha_eq(b.dev->target, T("A")));

    Term m3 = T("(\\z.z) (A B)");
    auto i3 = *is_internal_development_p(P("A x"), m3, m3);
    auto ps = pattern_head_step(P("A x"), m3);
    REQUIRE(ps);
    auto c = postpone_pattern(P("A x"), i3, StepRecord{m3, ps->position, ps->result});
    CHECK(alpha_eq(c.step.result, T("A B")));
    CHECK(alpha_eq(c.dev->target, T("A B")));

    CHECK_THROWS_AS(postpone(int_refl(T("A")), step), std::invalid_argument);
}

TEST_CASE("commuting a head step") {
    Term m = T("(\\x.x) A");
    auto a = commute_head(int_refl(m), head_record(m));
    CHECK(a.head_steps.size() == 1);
    CHECK(a.internal->rule == IntRule::IRefl);

    Term m2 = T("(\\x.x) ((\\y.y) A)");
    auto i2 = *is_internal_development(m2, T("(\\x.x) A"));
    auto b = commute_head(i2, head_record(T("(\\x.x) A")));
    REQUIRE(b.head_steps.size() == 2);
    CHECK(alpha_eq(b.head_steps[0].result, T("(\\y.y) A")));
    CHECK(alpha_eq(b.head_steps[1].result, T("A")));
    CHECK(b.internal->rule == IntRule::IRefl);
}

TEST_CASE("bifurcation examples") {
    Term m = T("(\\x.x) ((\\y.y) A)");
    auto a = bifurcate(m, {});
    CHECK(a.head_steps.empty());
    CHECK(a.internal.empty());

    auto d1 = *is_development(m, T("(\\x.x) A"));
    auto d2 = *is_development(T("(\\x.x) A"), T("A"));
    auto b = bifurcate(m, {d1, d2});
    REQUIRE(b.head_steps.size() == 2);
    CHECK(alpha_eq(b.head_steps.back().result, T("A")));
    for (const auto& i : b.internal) CHECK(alpha_eq(i->target, T("A")));

    auto c = bifurcate(m, {d1});
    auto s = h_split(d1);
    CHECK(c.head_steps.size() == s.head_steps.size());
}

TEST_CASE("standardisation examples") {
    auto a = standardise(T("x"), {});
    CHECK(seq_alpha_eq(a.terms, seq({"x"})));

    auto b = standardise(T("(\\x.x) A"), {*is_development(T("(\\x.x) A"), T("A"))});
    CHECK(seq_alpha_eq(b.terms, seq({"(\\x.x) A", "A"})));
    CHECK(b.proof->rule == StdRule::StdHead);

    Term m = T("(\\x.C) ((\\y.y) A)");
    auto c = standardise_reduction(m, {parse_position("Arg"), Position{}});
    CHECK(seq_alpha_eq(c.terms, seq({"(\\x.C) ((\\y.y) A)", "C"})));

    auto d = step_to_development(T("A ((\\x.x) B)"), parse_position("Arg"));
    CHECK(d->rule == DevRule::DApp);
    CHECK(d->fun->rule == DevRule::DRefl);
    CHECK(d->arg->rule == DevRule::DBeta);
    CHECK(step_to_development(T("(\\x.x) A"), Position{})->rule == DevRule::DBeta);
    CHECK_THROWS(step_to_development(T("A B"), Position{}));
}

TEST_CASE("standard sequence examples") {
    auto a = check_standard(seq({"x"}));
    REQUIRE(a);
    CHECK((*a)->rule == StdRule::StdVar);

    auto b = check_standard(seq({"(\\x.x) A", "A"}));
    REQUIRE(b);
    CHECK((*b)->rule == StdRule::StdHead);
    CHECK(replay_standard(*b));

    CHECK_FALSE(check_standard(seq({"(\\x.C) ((\\y.y) A)", "(\\x.C) A", "C"})));
    CHECK(check_standard(seq({"A"})));
}

TEST_CASE("standardisation over every reduction chain") {
    for (const auto& m : terms_up_to(4)) {
        REQUIRE(check_standard({m}));
        for (const auto& chain : enumerate_reduction_chains(m, 3)) {
            auto s = standardise_reduction(m, chain);
            REQUIRE_FALSE(s.terms.empty());
            CHECK(ref_alpha(s.terms.front(), m));
            Term end = m;
            for (const auto& p : chain) end = step_at(end, p);
            CHECK(ref_alpha(s.terms.back(), end));
            check_steps(s.terms);
            auto replay = replay_standard(s.proof);
            REQUIRE(replay);
            CHECK(seq_alpha_eq(*replay, s.terms));
            CHECK(check_standard(s.terms));
        }
    }
}

TEST_CASE("the checker is exact against grammar enumeration") {
    for (const auto& m : terms_up_to(4)) {
        auto gen = enumerate_standard_sequences(m, 3);
        std::set<std::string> standard;
        for (const auto& s : gen) standard.insert(sequence_key(s));
        // every generated sequence is accepted
        for (const auto& s : gen) CHECK(check_standard(s));
        // every reduction sequence is accepted exactly when generated
        std::vector<std::vector<Term>> frontier{{m}};
        for (std::size_t len = 1; len <= 3 && !frontier.empty(); ++len) {
            std::vector<std::vector<Term>> next;
            for (const auto& s : frontier) {
                bool accepted = check_standard(s).has_value();
                CHECK(accepted == (standard.count(sequence_key(s)) != 0));
                if (len == 3) continue;
                for (const auto& r : rule_successors(s.back())) {
                    auto ext = s;
                    ext.push_back(r);
                    next.push_back(ext);
                }
            }
            frontier = std::move(next);
        }
    }
}

TEST_CASE("postponement over enumerated internal developments") {
    auto pats = patterns_up_to(3);
    for (const auto& m : terms_up_to(4)) {
        for (const auto& d : all_internal_developments(m)) {
            auto h = head_step(d->target);
            if (!h) continue;
            auto r = postpone(d, StepRecord{d->target, h->position, h->result});
            auto h2 = head_step(m);
            REQUIRE(h2);
            CHECK(alpha_eq(h2->result, r.step.result));
            CHECK(check_development(r.dev));
            CHECK(alpha_eq(r.dev->source, r.step.result));
            CHECK(alpha_eq(r.dev->target, h->result));
        }
        for (const auto& p : pats) {
            bool overlap = false;
            for (const auto& x : pattern_vars(p)) overlap = overlap || m.has_free(x);
            if (overlap) continue;
            for (const auto& d : all_internal_developments_p(p, m)) {
                auto s = pattern_head_step(p, d->target);
                if (!s) continue;
                auto r = postpone_pattern(p, d, StepRecord{d->target, s->position, s->result});
                auto s2 = pattern_head_step(p, m);
                REQUIRE(s2);
                CHECK(alpha_eq(s2->result, r.step.result));
                CHECK(check_development(r.dev));
                CHECK(alpha_eq(r.dev->target, s->result));
            }
        }
    }
}
