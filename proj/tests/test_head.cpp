#include <doctest.h>

#include "patcalc/head.hpp"
#include "patcalc/matching.hpp"
#include "patcalc/reduction.hpp"
#include "support.hpp"

using namespace patcalc;
using namespace patcalc::testing;

namespace {

const std::string r1 = "((\\z.z) B)";
const std::string r2 = "((\\z.z) (B C))";

}  // namespace

TEST_CASE("head step examples") {
    auto a = head_step(T("(\\x.x) A"));
    REQUIRE(a);
    CHECK(alpha_eq(a->result, T("A")));
    CHECK(a->justification->rule == HeadRule::HBeta);

    auto b = head_step(T("((\\x.x) A) B"));
    REQUIRE(b);
    CHECK(alpha_eq(b->result, T("A B")));
    CHECK(b->justification->rule == HeadRule::HApp1);

    CHECK_FALSE(head_step(T("x A")));
    CHECK_FALSE(head_step(T("A")));
}

TEST_CASE("head selection depends on the binder") {
    Term m1 = T("(\\((A x) (B y)).x) ((A " + r1 + ") " + r2 + ")");
    auto s1 = head_step(m1);
    REQUIRE(s1);
    CHECK(s1->justification->rule == HeadRule::HPat);
    CHECK(s1->position == parse_position("Arg.Arg"));
    CHECK(alpha_eq(s1->result, T("(\\((A x) (B y)).x) ((A " + r1 + ") (B C))")));

    Term m2 = T("(\\((A (B x)) y).x) ((A " + r1 + ") " + r2 + ")");
    auto s2 = head_step(m2);
    REQUIRE(s2);
    CHECK(s2->position == parse_position("Arg.Fun.Arg"));

    Term m3 = T("(\\((A (B x)) (C y)).x) ((A " + r1 + ") " + r2 + ")");
    auto s3 = head_step(m3);
    REQUIRE(s3);
    CHECK(s3->position == parse_position("Arg.Fun.Arg"));

    Term m4 = T("(\\((A x) y).x) ((A " + r1 + ") " + r2 + ")");
    auto s4 = head_step(m4);
    REQUIRE(s4);
    CHECK(s4->justification->rule == HeadRule::HBeta);
    CHECK(s4->position == Position{});
    CHECK(alpha_eq(s4->result, T(r1)));
}

TEST_CASE("pattern head step examples") {
    auto a = pattern_head_step(P("A x"), T("(\\z.z) C"));
    REQUIRE(a);
    CHECK(alpha_eq(a->result, T("C")));
    CHECK(a->justification->rule == HeadRule::PatHead);

    auto b = pattern_head_step(P("(A x) (B y)"), T("(A " + r1 + ") " + r2));
    REQUIRE(b);
    CHECK(b->justification->rule == HeadRule::Pat2);
    CHECK(alpha_eq(b->result, T("(A " + r1 + ") (B C)")));

    for (const auto& m : terms_up_to(3)) CHECK_FALSE(pattern_head_step(P("z"), m));
}

TEST_CASE("fuelled head reduction") {
    auto a = head_reduce_star(T("(\\x.x) ((\\y.y) A)"), 10);
    CHECK(a.steps.size() == 2);
    CHECK(alpha_eq(a.final_term, T("A")));
    CHECK_FALSE(a.exhausted);

    auto b = head_reduce_star(T("A"), 10);
    CHECK(b.steps.empty());

    auto c = head_reduce_star(T("(\\x.x x)(\\x.x x)"), 3);
    CHECK(c.steps.size() == 3);
    CHECK(c.exhausted);

    CHECK(replay_head_chain(T("(\\x.x) ((\\y.y) A)"), a.steps));
    CHECK_FALSE(replay_head_chain(T("(\\x.x) ((\\y.y) A)"), {a.steps[1]}));
}

TEST_CASE("head step invariants on the universe") {
    auto terms = terms_up_to(5);
    auto pats = patterns_up_to(3);
    for (const auto& m : terms) {
        CHECK(applicable_head_rules(m).size() <= 1);
        auto h = head_step(m);
        if (h) {
            // head shape: an abstraction at the head of an application spine
            const Term* f = &m;
            std::size_t args = 0;
            while (f->kind() == TermKind::App) {
                f = &f->fun();
                ++args;
            }
            CHECK(f->kind() == TermKind::Abs);
            CHECK(args >= 1);
            CHECK(alpha_eq(step_at(m, h->position), h->result));
            for (const auto& p : pats) {
                if (p.kind() != PatternKind::Var) CHECK_FALSE(matches_structural(p, m));
            }
        }
        for (const auto& p : pats) {
            CHECK(applicable_pattern_rules(p, m).size() <= 1);
            auto s = pattern_head_step(p, m);
            if (!s) continue;
            CHECK_FALSE(matches_structural(p, m));
            CHECK(alpha_eq(step_at(m, s->position), s->result));
            if (!is_data_term(m)) {
                REQUIRE(h);
                CHECK(alpha_eq(h->result, s->result));
            }
        }
    }
}

TEST_CASE("left lift") {
    auto terms = terms_up_to(4);
    auto pats = patterns_up_to(3);
    for (const auto& p1 : pats) {
        if (p1.kind() == PatternKind::Var) continue;
        for (const auto& m1 : terms) {
            auto s = pattern_head_step(p1, m1);
            if (!s) continue;
            for (const auto& p2 : std::vector<Pattern>{P("z"), P("B")}) {
                Term m = Term::app(m1, T("A"));
                auto lifted = pattern_head_step(Pattern::app(p1, p2), m);
                REQUIRE(lifted);
                CHECK(alpha_eq(lifted->result, Term::app(s->result, T("A"))));
            }
        }
    }
}
