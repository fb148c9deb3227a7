#include "patcalc/reduction.hpp"

#include <sstream>
#include <stdexcept>

#include "patcalc/head.hpp"
#include "patcalc/matching.hpp"
#include "patcalc/syntax.hpp"

namespace patcalc {

Position Position::child(Dir d) const {
    Position out = *this;
    out.path.push_back(d);
    return out;
}

Position Position::under(Dir d) const {
    Position out;
    out.path.reserve(path.size() + 1);
    out.path.push_back(d);
    out.path.insert(out.path.end(), path.begin(), path.end());
    return out;
}

Position Position::tail() const {
    if (path.empty()) throw std::logic_error("root position has no tail");
    return Position{std::vector<Dir>(path.begin() + 1, path.end())};
}

std::string to_string(const Position& pos) {
    if (pos.is_root()) return "root";
    std::string out;
    for (std::size_t i = 0; i < pos.path.size(); ++i) {
        if (i) out += '.';
        switch (pos.path[i]) {
            case Dir::Fun: out += "Fun"; break;
            case Dir::Arg: out += "Arg"; break;
            case Dir::Body: out += "Body"; break;
        }
    }
    return out;
}

Position parse_position(const std::string& text) {
    Position out;
    if (text.empty() || text == "root") return out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '.')) {
        if (part == "Fun" || part == "FunSide") {
            out.path.push_back(Dir::Fun);
        } else if (part == "Arg" || part == "ArgSide") {
            out.path.push_back(Dir::Arg);
        } else if (part == "Body") {
            out.path.push_back(Dir::Body);
        } else {
            throw std::invalid_argument("bad position component '" + part + "'");
        }
    }
    return out;
}

std::optional<Term> subterm_at(const Term& m, const Position& pos) {
    const Term* cur = &m;
    for (Dir d : pos.path) {
        switch (d) {
            case Dir::Fun:
                if (!cur->is_app()) return std::nullopt;
                cur = &cur->fun();
                break;
            case Dir::Arg:
                if (!cur->is_app()) return std::nullopt;
                cur = &cur->arg();
                break;
            case Dir::Body:
                if (!cur->is_abs()) return std::nullopt;
                cur = &cur->body();
                break;
        }
    }
    return *cur;
}

namespace {

Term replace_rec(const Term& m, const std::vector<Dir>& path, std::size_t i, const Term& r) {
    if (i == path.size()) return r;
    switch (path[i]) {
        case Dir::Fun:
            if (!m.is_app()) break;
            return Term::app(replace_rec(m.fun(), path, i + 1, r), m.arg());
        case Dir::Arg:
            if (!m.is_app()) break;
            return Term::app(m.fun(), replace_rec(m.arg(), path, i + 1, r));
        case Dir::Body:
            if (!m.is_abs()) break;
            return Term::abs(m.binder(), replace_rec(m.body(), path, i + 1, r));
    }
    throw std::invalid_argument("position does not address a subterm");
}

void collect_redexes(const Term& m, Position& here, std::vector<Position>& out) {
    switch (m.kind()) {
        case TermKind::Var:
        case TermKind::Const:
            return;
        case TermKind::Abs:
            here.path.push_back(Dir::Body);
            collect_redexes(m.body(), here, out);
            here.path.pop_back();
            return;
        case TermKind::App:
            if (is_redex(m)) out.push_back(here);
            here.path.push_back(Dir::Fun);
            collect_redexes(m.fun(), here, out);
            here.path.back() = Dir::Arg;
            collect_redexes(m.arg(), here, out);
            here.path.pop_back();
            return;
    }
}

}  // namespace

Term replace_at(const Term& m, const Position& pos, const Term& replacement) {
    return replace_rec(m, pos.path, 0, replacement);
}

std::optional<Term> contract_root(const Term& m) {
    if (!m.is_app() || !m.fun().is_abs()) return std::nullopt;
    auto theta = match_structural(m.fun().binder(), m.arg());
    if (!theta) return std::nullopt;
    return apply_subst(*theta, m.fun().body());
}

bool is_redex(const Term& m) {
    return m.is_app() && m.fun().is_abs() && matches_structural(m.fun().binder(), m.arg());
}

std::vector<Position> redex_positions(const Term& m) {
    std::vector<Position> out;
    Position here;
    collect_redexes(m, here, out);
    return out;
}

Term step_at(const Term& m, const Position& pos) {
    auto sub = subterm_at(m, pos);
    if (!sub) throw std::invalid_argument("position " + to_string(pos) + " is not valid in " + to_string(m));
    auto contractum = contract_root(*sub);
    if (!contractum) {
        throw std::invalid_argument("no redex at position " + to_string(pos) + " in " + to_string(m));
    }
    return replace_at(m, pos, *contractum);
}

FuelledRun reduce_fuelled(const Term& m, Strategy strategy, std::size_t fuel) {
    FuelledRun run{m, {}, false};
    while (true) {
        std::optional<Position> next;
        if (strategy == Strategy::Leftmost) {
            auto all = redex_positions(run.final_term);
            if (!all.empty()) next = all.front();
        } else if (auto h = head_step(run.final_term)) {
            next = h->position;
        }
        if (!next) return run;
        if (run.steps.size() == fuel) {
            run.exhausted = true;
            return run;
        }
        Term result = step_at(run.final_term, *next);
        run.steps.push_back(StepRecord{run.final_term, *next, result});
        run.final_term = result;
    }
}

}  // namespace patcalc
