#include <doctest.h>

#include <set>

#include "patcalc/development.hpp"
#include "patcalc/matching.hpp"
#include "patcalc/reduction.hpp"
#include "support.hpp"

using namespace patcalc;
using namespace patcalc::testing;

namespace {

// Every N with M ▷ N, read straight off the four rules.
std::vector<Term> ref_dev_targets(const Term& m) {
    std::vector<Term> out;
    switch (m.kind()) {
        case TermKind::Var:
        case TermKind::Const:
            out.push_back(m);
            break;
        case TermKind::Abs:
            for (const auto& b : ref_dev_targets(m.body())) out.push_back(Term::abs(m.binder(), b));
            break;
        case TermKind::App: {
            auto fs = ref_dev_targets(m.fun());
            auto as = ref_dev_targets(m.arg());
            for (const auto& f : fs) {
                for (const auto& a : as) out.push_back(Term::app(f, a));
            }
            if (m.fun().is_abs()) {
                auto tau = oracle_match(m.fun().binder(), m.arg());
                if (tau) {
                    // τ ▶ τ': every combination of per-variable developments
                    std::vector<Substitution> taus{Substitution{}};
                    for (const auto& [x, t] : *tau) {
                        std::vector<Substitution> next;
                        for (const auto& s : taus) {
                            for (const auto& t2 : ref_dev_targets(t)) {
                                Substitution s2 = s;
                                s2.bind(x, t2);
                                next.push_back(s2);
                            }
                        }
                        taus = std::move(next);
                    }
                    for (const auto& b : ref_dev_targets(m.fun().body())) {
                        for (const auto& s : taus) out.push_back(apply_subst(s, b));
                    }
                }
            }
            break;
        }
    }
    return out;
}

std::set<std::string> keys(const std::vector<Term>& ts) {
    std::set<std::string> out;
    for (const auto& t : ts) out.insert(Nameless::of(t));
    return out;
}

}  // namespace

TEST_CASE("development examples") {
    auto a = is_development(T("A B"), T("A B"));
    REQUIRE(a);
    CHECK((*a)->rule == DevRule::DRefl);

    auto b = is_development(T("((\\x.x) A) ((\\y.y) B)"), T("A B"));
    REQUIRE(b);
    CHECK((*b)->rule == DevRule::DApp);
    CHECK((*b)->fun->rule == DevRule::DBeta);
    CHECK((*b)->arg->rule == DevRule::DBeta);
    CHECK(check_development(*b));

    auto c = is_development(T("(\\x.x) ((\\y.y) C)"), T("C"));
    REQUIRE(c);
    CHECK((*c)->rule == DevRule::DBeta);
    CHECK(check_development(*c));

    CHECK_FALSE(is_development(T("(\\x.x) A"), T("B")));
}

TEST_CASE("substitution development examples") {
    CHECK(is_subst_development({}, {}));
    CHECK(is_subst_development({{"x", T("(\\y.y) A")}}, {{"x", T("A")}}));
    CHECK_FALSE(is_subst_development({{"x", T("A")}}, {{"x", T("A")}, {"y", T("B")}}));
}

TEST_CASE("internal development examples") {
    auto a = is_internal_development_p(P("(A x) x"), T("A B ((\\y.y) C)"), T("A B C"));
    REQUIRE(a);
    CHECK((*a)->rule == IntRule::PCDataNo3);
    CHECK(check_internal(*a));

    auto b = is_internal_development(T("A (\\x.x)"), T("A (\\x.x)"));
    REQUIRE(b);
    CHECK((*b)->rule == IntRule::IRefl);

    CHECK_FALSE(is_internal_development(T("(\\x.x) A"), T("A")));
    CHECK_THROWS_AS(is_internal_development_p(P("A x"), T("A x"), T("A x")), PreconditionError);
}

TEST_CASE("constants against applied data patterns") {
    CHECK_FALSE(is_internal_development_p(P("A x"), T("A"), T("A"), IntRuleSet::Paper));
    auto d = is_internal_development_p(P("A x"), T("A"), T("A"), IntRuleSet::Extended);
    REQUIRE(d);
    CHECK((*d)->rule == IntRule::PConstShort);
    CHECK(check_internal(*d));
}

TEST_CASE("match after development examples") {
    auto d = *is_development(T("A ((\\y.y) B)"), T("A B"));
    auto r = match_after_dev(d, P("A x"), {{"x", T("(\\y.y) B")}});
    CHECK(alpha_eq(r.theta, Substitution{{"x", T("B")}}));
    CHECK(check_subst_development(r.subst));

    auto e = match_after_dev(dev_refl(T("C")), P("C"), {});
    CHECK(e.theta.empty());

    auto f = match_after_dev(d, P("z"), {{"z", T("A ((\\y.y) B)")}});
    CHECK(alpha_eq(f.theta, Substitution{{"z", T("A B")}}));
}

TEST_CASE("substitution applied to developments") {
    auto sd = *is_subst_development({{"x", T("(\\y.y) A")}}, {{"x", T("A")}});
    auto a = subst_apply_dev(sd, dev_refl(T("x")));
    CHECK(check_development(a));
    CHECK(alpha_eq(a->source, T("(\\y.y) A")));
    CHECK(alpha_eq(a->target, T("A")));

    auto sd2 = *is_subst_development({{"x", T("A")}}, {{"x", T("A")}});
    auto b = subst_apply_dev(sd2, *is_development(T("(\\y.y) x"), T("x")));
    CHECK(check_development(b));
    CHECK(alpha_eq(b->source, T("(\\y.y) A")));
    CHECK(alpha_eq(b->target, T("A")));

    auto d = *is_development(T("(\\y.y) x"), T("x"));
    auto c = subst_apply_dev(SubstDevProof{}, d);
    CHECK(alpha_eq(c->source, d->source));
    CHECK(alpha_eq(c->target, d->target));
}

TEST_CASE("developments agree with the rule oracle") {
    for (const auto& m : terms_up_to(5)) {
        auto ref = keys(ref_dev_targets(m));
        auto devs = all_developments(m);
        REQUIRE_FALSE(devs.empty());
        CHECK(devs.front()->rule == DevRule::DRefl);
        std::set<std::string> mine;
        for (const auto& d : devs) {
            CHECK(check_development(d));
            CHECK(alpha_eq(d->source, m));
            mine.insert(Nameless::of(d->target));
        }
        CHECK(mine == ref);
        for (const auto& d : devs) CHECK(is_development(m, d->target));
        for (const auto& p : redex_positions(m)) CHECK(is_development(m, step_at(m, p)));
    }
}

TEST_CASE("development search rejects non-targets") {
    auto terms = terms_up_to(3);
    for (const auto& m : terms) {
        auto ref = keys(ref_dev_targets(m));
        for (const auto& n : terms) {
            CHECK(is_development(m, n).has_value() == (ref.count(Nameless::of(n)) != 0));
        }
    }
}

TEST_CASE("internal developments on the universe") {
    auto pats = patterns_up_to(3);
    for (const auto& m : terms_up_to(5)) {
        for (const auto& d : all_internal_developments(m)) {
            CHECK(check_internal(d));
            auto e = erase(d);
            CHECK(check_development(e));
            CHECK(alpha_eq(e->source, d->source));
            CHECK(alpha_eq(e->target, d->target));
            if (!is_data_term(m)) CHECK_FALSE(is_data_term(d->target));
            CHECK(is_internal_development(m, d->target));
        }
        if (is_data_term(m)) {
            for (const auto& d : all_developments(m)) CHECK(is_data_term(d->target));
        }
    }
    for (const auto& m : terms_up_to(4)) {
        for (const auto& p : pats) {
            bool overlap = false;
            for (const auto& x : pattern_vars(p)) overlap = overlap || m.has_free(x);
            if (overlap) continue;
            bool before = matches(p, m);
            for (const auto& d : all_internal_developments_p(p, m)) {
                CHECK(check_internal(d));
                if (!before) CHECK_FALSE(matches(p, d->target));
            }
        }
    }
}
