#include <doctest.h>

#include "patcalc/matching.hpp"
#include "patcalc/oracle.hpp"
#include "support.hpp"

using namespace patcalc;
using namespace patcalc::testing;

TEST_CASE("matching examples") {
    auto a = match_pattern(P("x"), T("(\\y.y) A"));
    REQUIRE(a);
    CHECK(alpha_eq(*a, Substitution{{"x", T("(\\y.y) A")}}));

    auto b = match_pattern(P("C"), T("C"));
    REQUIRE(b);
    CHECK(b->empty());

    auto c = match_pattern(P("(A x) y"), T("(A B) C"));
    REQUIRE(c);
    CHECK(alpha_eq(*c, Substitution{{"x", T("B")}, {"y", T("C")}}));

    CHECK_FALSE(match_pattern(P("(A x) x"), T("(A B) C")));
    CHECK_FALSE(match_pattern(P("(A x) x"), T("(A B) B")));
    CHECK(matches(P("x"), T("A B")));
    CHECK_FALSE(matches(P("A"), T("B")));
    CHECK_FALSE(matches(P("A x"), T("(\\y.y) (A B)")));
}

TEST_CASE("matching rejects shared variables") {
    CHECK_THROWS_AS(match_pattern(P("A x"), T("A x")), PreconditionError);
    CHECK(match_structural(P("A x"), T("A x")));
}

TEST_CASE("match_under_subst examples") {
    Substitution g1 = match_under_subst(P("x"), T("y"), {{"x", T("y")}}, {{"y", T("A")}});
    CHECK(alpha_eq(g1, Substitution{{"x", T("A")}}));

    Substitution theta{{"x", T("B")}};
    CHECK(alpha_eq(match_under_subst(P("A x"), T("A B"), theta, {}), theta));

    Substitution g3 = match_under_subst(P("A x"), T("A y"), {{"x", T("y")}}, {{"y", T("B C")}});
    CHECK(alpha_eq(g3, Substitution{{"x", T("B C")}}));
}

TEST_CASE("matching metatheory on the universe") {
    auto terms = terms_up_to(4);
    auto pats = patterns_up_to(3);
    for (const auto& p : pats) {
        for (const auto& m : terms) {
            auto theta = match_structural(p, m);
            auto ref = oracle_match(p, m);
            REQUIRE(theta.has_value() == ref.has_value());
            if (!theta) continue;
            CHECK(alpha_eq(*theta, *ref));
            CHECK(theta->domain() == pattern_vars(p));
            if (p.is_data()) CHECK(is_data_term(m));
            CHECK(is_linear(p));
            CHECK(ref_alpha(apply_subst(*theta, pattern_to_term(p)), m));
        }
    }
}
