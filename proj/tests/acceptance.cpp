// Runs the acceptance properties on the default universe and prints one
// line per criterion.
#include <iostream>

#include "patcalc/verify.hpp"

int main() {
    using namespace patcalc;
    Universe u = build_universe(UniverseConfig{});
    std::cout << "universe: " << u.terms.size() << " terms, " << u.patterns.size() << " patterns" << std::endl;
    bool all = true;
    for (int k = 1; k <= property_count(); ++k) {
        PropertyResult r = run_property(k, u, 0);
        all = all && r.passed;
        std::cout << "criterion " << k << " " << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  ("
                  << r.checked << " checked, " << r.seconds << "s)";
        if (!r.passed) std::cout << "  " << r.detail;
        std::cout << std::endl;
    }
    return all ? 0 : 1;
}
