#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "patcalc/development.hpp"
#include "patcalc/head.hpp"
#include "patcalc/matching.hpp"
#include "patcalc/reduction.hpp"
#include "patcalc/serialize.hpp"
#include "patcalc/standardisation.hpp"
#include "patcalc/syntax.hpp"
#include "patcalc/verify.hpp"

namespace patcalc {

namespace {

using nlohmann::json;

// Raised for bad input after option parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An argument naming an existing file is read from it; anything else is
// taken literally.
std::string read_input(const std::string& arg) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(arg, ec)) return arg;
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read " + arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// A sequence is a file with one term per line, or inline terms separated by ';'.
std::vector<Term> read_sequence(const std::string& arg) {
    std::string text = read_input(arg);
    if (text == arg) std::replace(text.begin(), text.end(), ';', '\n');
    auto terms = parse_term_lines(text);
    if (terms.empty()) throw UsageError("empty sequence");
    return terms;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

json term_list(const std::vector<Term>& terms) {
    json out = json::array();
    for (const auto& t : terms) out.push_back(to_string(t));
    return out;
}

struct Context {
    std::ostream& out;
    bool as_json = false;

    void emit(const json& j) const { out << j.dump(2) << "\n"; }
};

// ---------------------------------------------------------------------------

int cmd_parse(Context& c, const std::string& text, bool as_pattern) {
    if (as_pattern) {
        Pattern p = parse_pattern(read_input(text));
        if (c.as_json) {
            c.emit({{"pattern", to_string(p)}, {"linear", is_linear(p)}, {"size", p.size()}});
        } else {
            c.out << to_string(p) << "\n";
        }
        return 0;
    }
    Term m = parse_term(read_input(text));
    if (c.as_json) {
        c.emit({{"term", to_string(m)}, {"free_vars", m.fv()}, {"size", m.size()}, {"data", is_data_term(m)}});
    } else {
        c.out << to_string(m) << "\n";
    }
    return 0;
}

int cmd_match(Context& c, const std::string& ptext, const std::string& mtext) {
    Pattern p = parse_pattern(ptext);
    Term m = parse_term(read_input(mtext));
    auto theta = match_pattern(p, m);
    if (c.as_json) {
        c.emit({{"matched", theta.has_value()}, {"subst", theta ? to_json(*theta) : json(nullptr)}});
    } else {
        c.out << (theta ? to_string(*theta) : "no match") << "\n";
    }
    return theta ? 0 : 1;
}

int cmd_step(Context& c, const std::string& mtext, const std::string& pos) {
    Term m = parse_term(read_input(mtext));
    if (pos.empty()) {
        auto ps = redex_positions(m);
        if (c.as_json) {
            json arr = json::array();
            for (const auto& p : ps) arr.push_back({{"position", to_string(p)}, {"result", to_string(step_at(m, p))}});
            c.emit({{"term", to_string(m)}, {"redexes", std::move(arr)}});
        } else {
            for (const auto& p : ps) c.out << to_string(p) << "\t" << to_string(step_at(m, p)) << "\n";
            if (ps.empty()) c.out << "no redex\n";
        }
        return ps.empty() ? 1 : 0;
    }
    Position at = parse_position(pos);
    Term r = step_at(m, at);
    if (c.as_json) {
        c.emit(to_json(StepRecord{m, at, r}));
    } else {
        c.out << to_string(r) << "\n";
    }
    return 0;
}

int print_head(Context& c, const Term& m, const std::optional<HeadStep>& h) {
    if (c.as_json) {
        if (!h) {
            c.emit({{"term", to_string(m)}, {"step", nullptr}});
        } else {
            c.emit({{"term", to_string(m)},
                    {"result", to_string(h->result)},
                    {"position", to_string(h->position)},
                    {"justification", to_json(*h->justification)}});
        }
    } else if (!h) {
        c.out << "no step\n";
    } else {
        c.out << to_string(h->result) << "\n" << h->justification->to_sexp() << "\n";
    }
    return h ? 0 : 1;
}

int cmd_trace(Context& c, const std::string& mtext, const std::string& strategy, const std::string& ptext,
              std::size_t fuel) {
    Term m = parse_term(read_input(mtext));
    HeadRun run = [&] {
        if (!ptext.empty()) return pattern_head_reduce_star(parse_pattern(ptext), m, fuel);
        if (strategy == "head") return head_reduce_star(m, fuel);
        FuelledRun r = reduce_fuelled(m, Strategy::Leftmost, fuel);
        return HeadRun{std::move(r.steps), r.final_term, r.exhausted};
    }();
    const auto& steps = run.steps;
    const Term& last = run.final_term;
    const bool exhausted = run.exhausted;
    if (c.as_json) {
        json arr = json::array();
        for (const auto& s : steps) arr.push_back(to_json(s));
        c.emit({{"steps", std::move(arr)}, {"final", to_string(last)}, {"exhausted", exhausted}});
    } else {
        c.out << to_string(m) << "\n";
        for (const auto& s : steps) c.out << "-> " << to_string(s.result) << "\t[" << to_string(s.position) << "]\n";
        if (exhausted) c.out << "fuel exhausted after " << steps.size() << " steps\n";
    }
    return 0;
}

int cmd_devcheck(Context& c, const std::string& mtext, const std::string& ntext) {
    Term m = parse_term(read_input(mtext));
    Term n = parse_term(read_input(ntext));
    auto d = is_development(m, n);
    if (c.as_json) {
        c.emit({{"development", d.has_value()}, {"proof", d ? to_json(*d) : json(nullptr)}});
    } else {
        c.out << (d ? to_sexp(*d) : "not a development") << "\n";
    }
    return d ? 0 : 1;
}

int cmd_intdevcheck(Context& c, const std::string& mtext, const std::string& ntext, const std::string& ptext,
                    bool paper_rules) {
    Term m = parse_term(read_input(mtext));
    Term n = parse_term(read_input(ntext));
    IntRuleSet rules = paper_rules ? IntRuleSet::Paper : IntRuleSet::Extended;
    auto d = ptext.empty() ? is_internal_development(m, n, rules)
                           : is_internal_development_p(parse_pattern(ptext), m, n, rules);
    if (c.as_json) {
        c.emit({{"internal", d.has_value()}, {"proof", d ? to_json(*d) : json(nullptr)}});
    } else {
        c.out << (d ? to_sexp(*d) : "not an internal development") << "\n";
    }
    return d ? 0 : 1;
}

void print_sequence(Context& c, const std::vector<Term>& terms, const StdProof& proof) {
    if (c.as_json) {
        c.emit({{"standard", true}, {"terms", term_list(terms)}, {"proof", to_json(proof)}});
        return;
    }
    for (const auto& t : terms) c.out << to_string(t) << "\n";
    c.out << "proof: " << to_sexp(proof) << "\n";
}

int cmd_standardise(Context& c, const std::string& input) {
    auto terms = read_sequence(input);
    std::vector<DevProof> chain;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
        auto d = is_development(terms[i], terms[i + 1]);
        if (!d) {
            throw UsageError("line " + std::to_string(i + 2) + ": " + to_string(terms[i + 1]) +
                             " is not reachable from the previous term");
        }
        chain.push_back(*d);
    }
    StdSequence s = standardise(terms.front(), chain);
    print_sequence(c, s.terms, s.proof);
    return 0;
}

int cmd_checkstd(Context& c, const std::string& input) {
    auto terms = read_sequence(input);
    auto proof = check_standard(terms);
    if (!proof) {
        if (c.as_json) {
            c.emit({{"standard", false}, {"terms", term_list(terms)}});
        } else {
            c.out << "not standard\n";
        }
        return 1;
    }
    if (c.as_json) {
        c.emit({{"standard", true}, {"terms", term_list(terms)}, {"proof", to_json(*proof)}});
    } else {
        c.out << "standard\n" << "proof: " << to_sexp(*proof) << "\n";
    }
    return 0;
}

int cmd_enumerate(Context& c, const UniverseConfig& cfg, const std::string& what, const std::string& from) {
    std::vector<std::string> items;
    if (what == "terms") {
        for (const auto& t : enumerate_terms(cfg)) items.push_back(to_string(t));
    } else if (what == "patterns") {
        for (const auto& p : enumerate_patterns(cfg)) items.push_back(to_string(p));
    } else {
        if (from.empty()) throw UsageError("enumerate chains needs --from");
        for (const auto& chain : enumerate_reduction_chains(parse_term(from), cfg.max_chain_length)) {
            std::string line;
            for (const auto& p : chain) line += (line.empty() ? "" : " ") + to_string(p);
            items.push_back(line.empty() ? "[]" : line);
        }
    }
    if (c.as_json) {
        c.emit(items);
    } else {
        for (const auto& s : items) c.out << s << "\n";
    }
    return 0;
}

int cmd_verify(Context& c, const UniverseConfig& cfg, unsigned workers, const std::vector<int>& only) {
    Universe u = build_universe(cfg);
    std::vector<PropertyResult> results;
    auto report = [&](const PropertyResult& r) {
        if (c.as_json) return;
        c.out << std::setw(2) << r.criterion << "  " << std::left << std::setw(32) << r.name << std::right
              << (r.passed ? "  pass" : "  FAIL") << std::setw(14) << r.checked << "  " << std::fixed
              << std::setprecision(1) << r.seconds << "s";
        if (!r.passed) c.out << "  " << r.detail;
        c.out << std::endl;
    };
    if (!c.as_json) {
        c.out << "universe: " << u.terms.size() << " terms, " << u.patterns.size() << " patterns\n";
    }
    for (int k = 1; k <= property_count(); ++k) {
        if (!only.empty() && std::find(only.begin(), only.end(), k) == only.end()) continue;
        results.push_back(run_property(k, u, workers));
        report(results.back());
    }
    bool all = std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
    if (c.as_json) {
        json arr = json::array();
        for (const auto& r : results) {
            arr.push_back({{"criterion", r.criterion},
                           {"name", r.name},
                           {"passed", r.passed},
                           {"checked", r.checked},
                           {"seconds", r.seconds},
                           {"detail", r.detail}});
        }
        c.emit({{"terms", u.terms.size()}, {"patterns", u.patterns.size()}, {"passed", all}, {"results", arr}});
    }
    return all ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pattern calculus: matching, head steps, developments and standardisation"};
    app.require_subcommand(1);
    app.fallthrough();
    Context c{out};
    app.add_flag("--json", c.as_json, "Structured output");

    std::string a;
    std::string b;
    std::string pattern;
    std::string position;
    std::string strategy = "leftmost";
    std::string what = "terms";
    std::string from;
    std::size_t fuel = 1000;
    bool as_pattern = false;
    bool paper_rules = false;
    bool linear_only = false;
    unsigned workers = 0;
    std::vector<int> only;
    UniverseConfig cfg;
    std::string consts = "A,B";
    std::string vars = "x,y";

    auto* parse = app.add_subcommand("parse", "Parse and pretty-print a term");
    parse->add_option("input", a, "Term text or file")->required();
    parse->add_flag("--as-pattern", as_pattern, "Read the input as a pattern");

    auto* match = app.add_subcommand("match", "Match a pattern against a term");
    match->add_option("pattern", a, "Pattern")->required();
    match->add_option("term", b, "Term text or file")->required();

    auto* step = app.add_subcommand("step", "List redexes, or contract the one at a position");
    step->add_option("term", a, "Term text or file")->required();
    step->add_option("position", position, "root, or directions joined by '.' (Fun, Arg, Body)");

    auto* head = app.add_subcommand("head", "The head step of a term");
    head->add_option("term", a, "Term text or file")->required();

    auto* phead = app.add_subcommand("phead", "The step towards matching a pattern");
    phead->add_option("term", a, "Term text or file")->required();
    phead->add_option("--pattern", pattern, "Pattern")->required();

    auto* trace = app.add_subcommand("trace", "Reduce step by step");
    trace->add_option("term", a, "Term text or file")->required();
    trace->add_option("--fuel", fuel, "Maximum number of steps")->capture_default_str();
    trace->add_option("--strategy", strategy, "leftmost or head")
        ->check(CLI::IsMember({"leftmost", "head"}))
        ->capture_default_str();
    trace->add_option("--pattern", pattern, "Follow pattern-relative steps instead");

    auto* devcheck = app.add_subcommand("devcheck", "Decide M ▷ N and print a derivation");
    devcheck->add_option("source", a, "Term text or file")->required();
    devcheck->add_option("target", b, "Term text or file")->required();

    auto* intdevcheck = app.add_subcommand("intdevcheck", "Decide internal development, optionally for a pattern");
    intdevcheck->add_option("source", a, "Term text or file")->required();
    intdevcheck->add_option("target", b, "Term text or file")->required();
    intdevcheck->add_option("--pattern", pattern, "Pattern index");
    intdevcheck->add_flag("--paper-rules", paper_rules, "Leave out the constant shortcut rule");

    auto* stdise = app.add_subcommand("standardise", "Standardise a reduction given as a term sequence");
    stdise->add_option("sequence", a, "File with one term per line, or terms separated by ';'")->required();

    auto* checkstd = app.add_subcommand("checkstd", "Decide whether a term sequence is standard");
    checkstd->add_option("sequence", a, "File with one term per line, or terms separated by ';'")->required();

    auto add_universe = [&](CLI::App* sub) {
        sub->add_option("--max-size", cfg.max_term_size, "Term size bound (atoms)")->capture_default_str();
        sub->add_option("--max-pattern-size", cfg.max_pattern_size, "Pattern size bound (atoms)")
            ->capture_default_str();
        sub->add_option("--max-chain", cfg.max_chain_length, "Reduction chain length bound")->capture_default_str();
        sub->add_option("--consts", consts, "Comma-separated constants")->capture_default_str();
        sub->add_option("--vars", vars, "Comma-separated variables")->capture_default_str();
        sub->add_flag("--linear-only", linear_only, "Only linear patterns");
    };
    auto* enumerate = app.add_subcommand("enumerate", "List the universe");
    enumerate->add_option("what", what, "terms, patterns or chains")
        ->check(CLI::IsMember({"terms", "patterns", "chains"}))
        ->capture_default_str();
    enumerate->add_option("--from", from, "Start term for chains");
    add_universe(enumerate);

    auto* verify = app.add_subcommand("verify", "Run the property suite and print a pass/fail table");
    add_universe(verify);
    verify->add_option("--workers", workers, "Threads (0 for all cores)")->capture_default_str();
    verify->add_option("--only", only, "Run only these properties")->check(CLI::Range(1, property_count()));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        cfg.constants = split_names(consts);
        cfg.variables = split_names(vars);
        cfg.allow_non_linear = !linear_only;
        if (parse->parsed()) return cmd_parse(c, a, as_pattern);
        if (match->parsed()) return cmd_match(c, a, b);
        if (step->parsed()) return cmd_step(c, a, position);
        if (head->parsed()) {
            Term m = parse_term(read_input(a));
            return print_head(c, m, head_step(m));
        }
        if (phead->parsed()) {
            Term m = parse_term(read_input(a));
            return print_head(c, m, pattern_head_step(parse_pattern(pattern), m));
        }
        if (trace->parsed()) return cmd_trace(c, a, strategy, pattern, fuel);
        if (devcheck->parsed()) return cmd_devcheck(c, a, b);
        if (intdevcheck->parsed()) return cmd_intdevcheck(c, a, b, pattern, paper_rules);
        if (stdise->parsed()) return cmd_standardise(c, a);
        if (checkstd->parsed()) return cmd_checkstd(c, a);
        if (enumerate->parsed()) return cmd_enumerate(c, cfg, what, from);
        if (verify->parsed()) return cmd_verify(c, cfg, workers, only);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace patcalc
