#include <doctest.h>

#include <set>

#include "patcalc/oracle.hpp"
#include "support.hpp"

using namespace patcalc;
using namespace patcalc::testing;

namespace {

// Independent generators following the size metric: atoms count one,
// binder patterns included.
std::vector<Pattern> gen_patterns(const UniverseConfig& cfg, std::size_t n, bool data_only) {
    std::vector<Pattern> out;
    if (n == 1) {
        if (!data_only) {
            for (const auto& x : cfg.variables) out.push_back(Pattern::var(x));
        }
        for (const auto& c : cfg.constants) out.push_back(Pattern::constant(c));
        return out;
    }
    for (std::size_t k = 1; k < n; ++k) {
        for (const auto& h : gen_patterns(cfg, k, true)) {
            for (const auto& a : gen_patterns(cfg, n - k, false)) out.push_back(Pattern::app(h, a));
        }
    }
    return out;
}

std::vector<Term> gen_terms(const UniverseConfig& cfg, std::size_t n) {
    std::vector<Term> out;
    if (n == 1) {
        for (const auto& x : cfg.variables) out.push_back(Term::var(x));
        for (const auto& c : cfg.constants) out.push_back(Term::constant(c));
        return out;
    }
    for (std::size_t k = 1; k < n; ++k) {
        if (k <= cfg.max_pattern_size) {
            for (const auto& p : gen_patterns(cfg, k, false)) {
                for (const auto& b : gen_terms(cfg, n - k)) out.push_back(Term::abs(p, b));
            }
        }
        for (const auto& f : gen_terms(cfg, k)) {
            for (const auto& a : gen_terms(cfg, n - k)) out.push_back(Term::app(f, a));
        }
    }
    return out;
}

std::set<std::string> ref_term_keys(const UniverseConfig& cfg) {
    std::set<std::string> out;
    for (std::size_t n = 1; n <= cfg.max_term_size; ++n) {
        for (const auto& t : gen_terms(cfg, n)) out.insert(Nameless::of(t));
    }
    return out;
}

std::size_t ref_chain_count(const Term& m, std::size_t len) {
    std::size_t n = 1;
    if (len == 0) return n;
    for (const auto& s : rule_successors(m)) n += ref_chain_count(s, len - 1);
    return n;
}

}  // namespace

TEST_CASE("enumeration examples") {
    UniverseConfig one;
    one.constants = {"A"};
    one.variables = {"x"};
    one.max_term_size = 1;
    auto ts = enumerate_terms(one);
    REQUIRE(ts.size() == 2);
    CHECK(alpha_eq(ts[0], T("x")));
    CHECK(alpha_eq(ts[1], T("A")));

    UniverseConfig two = one;
    two.max_term_size = 2;
    auto ts2 = enumerate_terms(two);
    CHECK(ts2.size() == ref_term_keys(two).size());
    CHECK(ts2.size() == 10);

    UniverseConfig lin = one;
    lin.max_term_size = 2;
    lin.max_pattern_size = 2;
    lin.allow_non_linear = false;
    auto ps = enumerate_patterns(lin);
    // A A is a linear data pattern of two atoms as well
    REQUIRE(ps.size() == 4);
    CHECK(to_string(ps[0]) == "x");
    CHECK(to_string(ps[1]) == "A");
    CHECK(to_string(ps[2]) == "A x");
    CHECK(to_string(ps[3]) == "A A");
}

TEST_CASE("term enumeration matches an independent generator") {
    for (std::size_t n = 1; n <= 4; ++n) {
        UniverseConfig cfg = small_universe(n);
        auto ts = enumerate_terms(cfg);
        std::set<std::string> mine;
        for (const auto& t : ts) {
            CHECK(t.size() <= n);
            mine.insert(Nameless::of(t));
        }
        CHECK(mine.size() == ts.size());
        CHECK(mine == ref_term_keys(cfg));
    }
    CHECK(enumerate_terms(small_universe(3)).size() == 388);
    CHECK(enumerate_terms(small_universe(4)).size() == 5624);
}

TEST_CASE("pattern enumeration matches an independent generator") {
    UniverseConfig cfg = small_universe(3, 3);
    std::set<std::string> ref;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto& p : gen_patterns(cfg, n, false)) ref.insert(to_string(p));
    }
    auto ps = enumerate_patterns(cfg);
    std::set<std::string> mine;
    for (const auto& p : ps) mine.insert(to_string(p));
    CHECK(mine.size() == ps.size());
    CHECK(mine == ref);
    CHECK(ps.size() == 60);

    cfg.allow_non_linear = false;
    for (const auto& p : enumerate_patterns(cfg)) CHECK(is_linear(p));
}

TEST_CASE("enumeration is deterministic") {
    auto cfg = small_universe(4);
    auto a = enumerate_terms(cfg);
    auto b = enumerate_terms(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_string(a[i]) == to_string(b[i]));
}

TEST_CASE("invalid configurations") {
    UniverseConfig cfg;
    cfg.max_term_size = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    UniverseConfig empty;
    empty.constants.clear();
    empty.variables.clear();
    CHECK_THROWS_AS(validate(empty), std::invalid_argument);
}

TEST_CASE("brute force h-split examples") {
    auto a = brute_force_h_split(T("x"), T("x"), 3);
    REQUIRE(a.size() == 1);
    CHECK(alpha_eq(a[0], T("x")));

    auto b = brute_force_h_split(T("(\\x.x) A"), T("A"), 3);
    REQUIRE(b.size() == 1);
    CHECK(alpha_eq(b[0], T("A")));
}

TEST_CASE("reduction chains") {
    CHECK(enumerate_reduction_chains(T("A"), 3) == std::vector<std::vector<Position>>{{}});
    auto b = enumerate_reduction_chains(T("(\\x.x) A"), 1);
    REQUIRE(b.size() == 2);
    CHECK(b[0].empty());
    CHECK(b[1] == std::vector<Position>{Position{}});

    for (const auto& m : terms_up_to(4)) {
        CHECK(enumerate_reduction_chains(m, 3).size() == ref_chain_count(m, 3));
    }
    Term omega = T("(\\x.x x)(\\x.x x)");
    CHECK(enumerate_reduction_chains(omega, 3).size() == 4);
}
