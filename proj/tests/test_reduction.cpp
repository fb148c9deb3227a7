#include <doctest.h>

#include "patcalc/oracle.hpp"
#include "patcalc/reduction.hpp"
#include "support.hpp"

using namespace patcalc;
using namespace patcalc::testing;

TEST_CASE("redex positions") {
    CHECK(redex_positions(T("(\\x.x) A")) == std::vector<Position>{Position{}});
    CHECK(redex_positions(T("(\\(A x).x) B")).empty());
    CHECK(redex_positions(T("A ((\\x.x) B)")) == std::vector<Position>{parse_position("Arg")});
}

TEST_CASE("single steps") {
    CHECK(alpha_eq(step_at(T("(\\x.x) A"), Position{}), T("A")));
    CHECK(alpha_eq(step_at(T("(\\(A x).x) (A B)"), Position{}), T("B")));
    CHECK(alpha_eq(step_at(T("\\y.((\\x.x) y)"), parse_position("Body")), T("\\y.y")));
    CHECK_THROWS_AS(step_at(T("A B"), Position{}), std::invalid_argument);
    CHECK_THROWS_AS(step_at(T("A B"), parse_position("Body")), std::invalid_argument);
}

TEST_CASE("positions print and parse") {
    CHECK(to_string(Position{}) == "root");
    CHECK(to_string(parse_position("Fun.Body.Arg")) == "Fun.Body.Arg");
    CHECK_THROWS(parse_position("Left"));
}

TEST_CASE("fuelled reduction") {
    auto a = reduce_fuelled(T("(\\x.x) A"), Strategy::Leftmost, 10);
    CHECK(alpha_eq(a.final_term, T("A")));
    CHECK(a.steps.size() == 1);
    CHECK_FALSE(a.exhausted);

    Term omega = T("(\\x.x x)(\\x.x x)");
    auto b = reduce_fuelled(omega, Strategy::Leftmost, 5);
    CHECK(alpha_eq(b.final_term, omega));
    CHECK(b.steps.size() == 5);
    CHECK(b.exhausted);

    auto c = reduce_fuelled(T("A"), Strategy::Head, 0);
    CHECK(c.steps.empty());
    CHECK_FALSE(c.exhausted);
}

TEST_CASE("steps agree with the rule-by-rule successor oracle") {
    for (const auto& m : terms_up_to(5)) {
        auto ps = redex_positions(m);
        auto succ = rule_successors(m);
        REQUIRE(ps.size() == succ.size());
        std::vector<std::string> mine;
        std::vector<std::string> ref;
        for (const auto& p : ps) mine.push_back(Nameless::of(step_at(m, p)));
        for (const auto& s : succ) ref.push_back(Nameless::of(s));
        std::sort(mine.begin(), mine.end());
        std::sort(ref.begin(), ref.end());
        CHECK(mine == ref);
        CHECK(std::is_sorted(ps.begin(), ps.end()));
        CHECK(std::adjacent_find(ps.begin(), ps.end()) == ps.end());
    }
}
