#include <doctest.h>

#include "patcalc/verify.hpp"
#include "support.hpp"

using namespace patcalc;
using namespace patcalc::testing;

TEST_CASE("every property holds on a small universe") {
    UniverseConfig cfg = small_universe(4);
    cfg.max_chain_length = 2;
    Universe u = build_universe(cfg);
    CHECK(u.terms.size() == 5624);
    CHECK(u.size_end.back() == u.terms.size());
    for (int k = 1; k <= property_count(); ++k) {
        auto r = run_property(k, u, 2);
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
        CHECK(r.checked > 0);
    }
}

TEST_CASE("worker count does not change the report") {
    Universe u = build_universe(small_universe(3));
    for (int k = 1; k <= property_count(); ++k) {
        auto a = run_property(k, u, 1);
        auto b = run_property(k, u, 3);
        CHECK(a.passed == b.passed);
        CHECK(a.checked == b.checked);
        CHECK(a.detail == b.detail);
    }
}
