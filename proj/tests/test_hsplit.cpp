#include <doctest.h>

#include <algorithm>

#include "patcalc/hsplit.hpp"
#include "patcalc/oracle.hpp"
#include "support.hpp"

using namespace patcalc;
using namespace patcalc::testing;

TEST_CASE("h_split examples") {
    auto a = h_split(dev_refl(T("x")));
    CHECK(a.head_steps.empty());
    CHECK(alpha_eq(a.mid, T("x")));

    auto d = *is_development(T("(\\x.x) A"), T("A"));
    auto b = h_split(d);
    REQUIRE(b.head_steps.size() == 1);
    CHECK(alpha_eq(b.mid, T("A")));
    CHECK(b.internal->rule == IntRule::IRefl);
    CHECK(check_hsplit(b, d->source, d->target));

    auto d2 = *is_development(T("(\\(A x).x) ((\\z.z) (A B))"), T("(\\(A x).x) (A B)"));
    auto c = h_split(d2);
    REQUIRE(c.head_steps.size() == 1);
    CHECK(c.head_steps[0].position == parse_position("Arg"));
    CHECK(alpha_eq(c.mid, d2->target));
    CHECK(c.internal->rule == IntRule::IRefl);
}

TEST_CASE("h_split validates and agrees with brute force") {
    auto pats = patterns_up_to(3);
    for (const auto& m : terms_up_to(4)) {
        for (const auto& d : all_developments(m)) {
            auto s = h_split(d);
            REQUIRE(check_hsplit(s, d->source, d->target));
            auto qs = brute_force_h_split(d->source, d->target, 9);
            CHECK(std::any_of(qs.begin(), qs.end(), [&](const Term& q) { return ref_alpha(q, s.mid); }));
            auto per = h_split_patterns(d, pats);
            REQUIRE(per.size() == pats.size());
            for (std::size_t i = 0; i < pats.size(); ++i) {
                CHECK(check_hsplit(per[i], d->source, d->target, pats[i]));
            }
        }
    }
}

TEST_CASE("pattern split of a single pattern matches the batch form") {
    auto d = *is_development(T("A ((\\y.y) B)"), T("A B"));
    auto s = h_split_pattern(d, P("A (B x)"));
    CHECK(check_hsplit(s, d->source, d->target, P("A (B x)")));
    CHECK(s.head_steps.size() == 1);
}
