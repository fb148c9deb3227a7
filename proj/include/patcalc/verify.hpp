#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "patcalc/oracle.hpp"

namespace patcalc {

struct PropertyResult {
    int criterion = 0;
    std::string name;
    bool passed = false;
    std::size_t checked = 0;  // instances examined
    std::string detail;       // first counterexample, or empty
    double seconds = 0;
};

/// The enumerated universe shared by the properties.
struct Universe {
    UniverseConfig cfg;
    std::vector<Term> terms;
    std::vector<Pattern> patterns;
    /// terms[0, size_end[s]) are the terms of size at most s.
    std::vector<std::size_t> size_end;
};

/// Substitution instances (M, ν) range over every ν with dom(ν) within
/// fv(M) and values from the universe such that size(M) plus the sizes of
/// the values stays within the term size bound.
Universe build_universe(const UniverseConfig& cfg);

/// Number of acceptance properties; run_property accepts 1..property_count().
int property_count();
std::string property_name(int criterion);

/// Runs one property on `workers` threads (0 picks the hardware count).
/// Reporting is deterministic: the counterexample is the first one in
/// enumeration order whatever the worker count.
PropertyResult run_property(int criterion, const Universe& u, unsigned workers = 0);

/// Runs every property in order, calling `on_result` after each.
std::vector<PropertyResult> run_verify(const Universe& u, unsigned workers = 0,
                                       const std::function<void(const PropertyResult&)>& on_result = {});

}  // namespace patcalc
