#pragma once

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "patcalc/oracle.hpp"
#include "patcalc/syntax.hpp"
#include "patcalc/term.hpp"

namespace patcalc::testing {

inline Term T(const std::string& s) { return parse_term(s); }
inline Pattern P(const std::string& s) { return parse_pattern(s); }

inline UniverseConfig small_universe(std::size_t max_size, std::size_t max_pattern = 3) {
    UniverseConfig cfg;
    cfg.max_term_size = max_size;
    cfg.max_pattern_size = max_pattern;
    return cfg;
}

// Test-side alpha oracle: a nameless rendering where a bound variable
// becomes (binder distance, index of its first occurrence in the binder).
class Nameless {
public:
    static std::string of(const Term& m) {
        std::vector<std::vector<Name>> scopes;
        std::string out;
        rec(m, scopes, out);
        return out;
    }

private:
    static std::vector<Name> first_occurrences(const Pattern& p) {
        std::vector<Name> out;
        for (const auto& x : p.var_occurrences()) {
            if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        }
        return out;
    }

    static void pattern(const Pattern& p, const std::vector<Name>& order, std::string& out) {
        switch (p.kind()) {
            case PatternKind::Var:
                out += "$" + std::to_string(std::find(order.begin(), order.end(), p.name()) - order.begin());
                break;
            case PatternKind::Const:
                out += "C:" + p.name();
                break;
            case PatternKind::App:
                out += "[";
                pattern(p.head(), order, out);
                out += " ";
                pattern(p.arg(), order, out);
                out += "]";
                break;
        }
    }

    static void rec(const Term& m, std::vector<std::vector<Name>>& scopes, std::string& out) {
        switch (m.kind()) {
            case TermKind::Var: {
                for (std::size_t d = scopes.size(); d-- > 0;) {
                    const auto& s = scopes[d];
                    auto it = std::find(s.begin(), s.end(), m.name());
                    if (it != s.end()) {
                        out += "#" + std::to_string(scopes.size() - 1 - d) + "." + std::to_string(it - s.begin());
                        return;
                    }
                }
                out += "V:" + m.name();
                return;
            }
            case TermKind::Const:
                out += "C:" + m.name();
                return;
            case TermKind::Abs: {
                auto order = first_occurrences(m.binder());
                out += "(L ";
                pattern(m.binder(), order, out);
                out += " ";
                scopes.push_back(order);
                rec(m.body(), scopes, out);
                scopes.pop_back();
                out += ")";
                return;
            }
            case TermKind::App:
                out += "(";
                rec(m.fun(), scopes, out);
                out += " ";
                rec(m.arg(), scopes, out);
                out += ")";
                return;
        }
    }
};

inline bool ref_alpha(const Term& a, const Term& b) { return Nameless::of(a) == Nameless::of(b); }

// Terms of the universe up to `size`, taken from the library enumeration.
inline std::vector<Term> terms_up_to(std::size_t size, std::size_t max_pattern = 3) {
    return enumerate_terms(small_universe(size, max_pattern));
}

inline std::vector<Pattern> patterns_up_to(std::size_t size) {
    UniverseConfig cfg = small_universe(std::max<std::size_t>(size, 1), size);
    return enumerate_patterns(cfg);
}

}  // namespace patcalc::testing
