#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "patcalc/development.hpp"
#include "patcalc/head.hpp"
#include "patcalc/hsplit.hpp"
#include "patcalc/matching.hpp"
#include "patcalc/oracle.hpp"
#include "patcalc/reduction.hpp"
#include "patcalc/serialize.hpp"
#include "patcalc/standardisation.hpp"
#include "patcalc/syntax.hpp"
#include "patcalc/verify.hpp"

namespace py = pybind11;
using namespace patcalc;

namespace {

// Terms and patterns cross the boundary as text in the concrete syntax.
std::vector<Term> parse_all(const std::vector<std::string>& texts) {
    std::vector<Term> out;
    for (const auto& t : texts) out.push_back(parse_term(t));
    return out;
}

std::vector<std::string> show_all(const std::vector<Term>& terms) {
    std::vector<std::string> out;
    for (const auto& t : terms) out.push_back(to_string(t));
    return out;
}

std::map<std::string, std::string> show_subst(const Substitution& s) {
    std::map<std::string, std::string> out;
    for (const auto& [x, t] : s) out.emplace(x, to_string(t));
    return out;
}

py::object head_result(const std::optional<HeadStep>& h) {
    if (!h) return py::none();
    py::dict d;
    d["result"] = to_string(h->result);
    d["position"] = to_string(h->position);
    d["justification"] = h->justification->to_sexp();
    return d;
}

UniverseConfig make_config(std::size_t max_size, std::size_t max_pattern_size, std::size_t max_chain,
                           const std::vector<std::string>& consts, const std::vector<std::string>& vars,
                           bool linear_only) {
    UniverseConfig cfg;
    cfg.max_term_size = max_size;
    cfg.max_pattern_size = max_pattern_size;
    cfg.max_chain_length = max_chain;
    cfg.constants = consts;
    cfg.variables = vars;
    cfg.allow_non_linear = !linear_only;
    validate(cfg);
    return cfg;
}

}  // namespace

PYBIND11_MODULE(patcalc, m) {
    m.doc() = "Constructor-based pattern calculus: matching, head steps, developments and standardisation";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    m.def("parse_term", [](const std::string& s) { return to_string(parse_term(s)); },
          "Parse a term and return its canonical printing");
    m.def("parse_pattern", [](const std::string& s) { return to_string(parse_pattern(s)); });
    m.def("free_vars", [](const std::string& s) { return parse_term(s).fv(); });
    m.def("alpha_eq", [](const std::string& a, const std::string& b) { return alpha_eq(parse_term(a), parse_term(b)); });
    m.def("is_data_term", [](const std::string& s) { return is_data_term(parse_term(s)); });

    m.def(
        "match",
        [](const std::string& p, const std::string& t) -> py::object {
            auto theta = match_pattern(parse_pattern(p), parse_term(t));
            if (!theta) return py::none();
            return py::cast(show_subst(*theta));
        },
        "Bindings as a dict, or None when the pattern does not match");

    m.def("redex_positions", [](const std::string& t) {
        std::vector<std::string> out;
        for (const auto& p : redex_positions(parse_term(t))) out.push_back(to_string(p));
        return out;
    });
    m.def("step", [](const std::string& t, const std::string& pos) {
        return to_string(step_at(parse_term(t), parse_position(pos)));
    });
    m.def("head_step", [](const std::string& t) { return head_result(head_step(parse_term(t))); });
    m.def("pattern_head_step", [](const std::string& p, const std::string& t) {
        return head_result(pattern_head_step(parse_pattern(p), parse_term(t)));
    });

    m.def(
        "is_development",
        [](const std::string& a, const std::string& b) -> py::object {
            auto d = is_development(parse_term(a), parse_term(b));
            if (!d) return py::none();
            return py::str(to_sexp(*d));
        },
        "The derivation as an s-expression, or None");
    m.def(
        "is_internal_development",
        [](const std::string& a, const std::string& b, std::optional<std::string> pattern,
           bool paper_rules) -> py::object {
            IntRuleSet rules = paper_rules ? IntRuleSet::Paper : IntRuleSet::Extended;
            Term m = parse_term(a);
            Term n = parse_term(b);
            auto d = pattern ? is_internal_development_p(parse_pattern(*pattern), m, n, rules)
                             : is_internal_development(m, n, rules);
            if (!d) return py::none();
            return py::str(to_sexp(*d));
        },
        py::arg("source"), py::arg("target"), py::arg("pattern") = py::none(), py::arg("paper_rules") = false);

    m.def(
        "h_split",
        [](const std::string& a, const std::string& b, std::optional<std::string> pattern) {
            auto d = is_development(parse_term(a), parse_term(b));
            if (!d) throw std::invalid_argument("not a development");
            HSplit s = pattern ? h_split_pattern(*d, parse_pattern(*pattern)) : h_split(*d);
            std::vector<std::string> chain;
            for (const auto& st : s.head_steps) chain.push_back(to_string(st.result));
            py::dict out;
            out["head_steps"] = chain;
            out["mid"] = to_string(s.mid);
            out["internal"] = to_sexp(s.internal);
            return out;
        },
        py::arg("source"), py::arg("target"), py::arg("pattern") = py::none());

    m.def(
        "standardise",
        [](const std::vector<std::string>& seq) {
            auto terms = parse_all(seq);
            if (terms.empty()) throw std::invalid_argument("empty sequence");
            std::vector<DevProof> chain;
            for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
                auto d = is_development(terms[i], terms[i + 1]);
                if (!d) throw std::invalid_argument(to_string(terms[i + 1]) + " is not reachable from the previous term");
                chain.push_back(*d);
            }
            return show_all(standardise(terms.front(), chain).terms);
        },
        "A standard sequence with the same endpoints as the given reduction");
    m.def("check_standard", [](const std::vector<std::string>& seq) -> py::object {
        auto terms = parse_all(seq);
        if (terms.empty()) throw std::invalid_argument("empty sequence");
        auto proof = check_standard(terms);
        if (!proof) return py::none();
        return py::str(to_sexp(*proof));
    });

    m.def("enumerate_terms", [](std::size_t max_size, std::size_t max_pattern_size, std::vector<std::string> consts,
                                std::vector<std::string> vars) {
        return show_all(enumerate_terms(make_config(max_size, max_pattern_size, 3, consts, vars, false)));
    }, py::arg("max_size"), py::arg("max_pattern_size") = 3, py::arg("consts") = std::vector<std::string>{"A", "B"},
          py::arg("vars") = std::vector<std::string>{"x", "y"});

    m.def(
        "verify",
        [](std::size_t max_size, std::size_t max_chain, std::vector<int> only, unsigned workers) {
            Universe u = build_universe(make_config(max_size, 3, max_chain, {"A", "B"}, {"x", "y"}, false));
            py::list out;
            for (int k = 1; k <= property_count(); ++k) {
                if (!only.empty() && std::find(only.begin(), only.end(), k) == only.end()) continue;
                PropertyResult r;
                {
                    py::gil_scoped_release release;
                    r = run_property(k, u, workers);
                }
                py::dict d;
                d["criterion"] = r.criterion;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["checked"] = r.checked;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("max_size") = 6, py::arg("max_chain") = 3, py::arg("only") = std::vector<int>{},
        py::arg("workers") = 0);
}
