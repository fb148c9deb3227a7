#include "patcalc/syntax.hpp"

#include <cctype>
#include <sstream>

namespace patcalc {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}
bool is_constant_name(std::string_view s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s.front())) != 0;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Term term() {
        skip_ws();
        if (at_lambda()) return lambda();
        return application();
    }

    Pattern pattern() {
        std::size_t start = pos_;
        std::vector<Pattern> atoms;
        while (true) {
            skip_ws();
            if (eof() || peek() == '.' || peek() == ')') break;
            atoms.push_back(pattern_atom());
        }
        if (atoms.empty()) throw ParseError("expected a pattern", start);
        Pattern acc = atoms.front();
        if (atoms.size() > 1 && !acc.is_data()) {
            throw ParseError("applied pattern must start with a constant", start);
        }
        for (std::size_t i = 1; i < atoms.size(); ++i) acc = Pattern::app(acc, atoms[i]);
        return acc;
    }

    void expect_end() {
        skip_ws();
        if (!eof()) throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    std::size_t pos() const { return pos_; }
    void seek(std::size_t to) { pos_ = to; }

    void expect(char c) {
        skip_ws();
        if (eof() || peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        if (eof() || !is_ident_start(peek())) throw ParseError("expected an identifier", pos_);
        while (!eof() && is_ident_char(peek())) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    bool try_consume(std::string_view s) {
        skip_ws();
        if (text_.substr(pos_, s.size()) == s) {
            pos_ += s.size();
            return true;
        }
        return false;
    }

private:
    bool at_lambda() const {
        if (eof()) return false;
        if (peek() == '\\') return true;
        return text_.substr(pos_, 2) == "\xce\xbb";
    }

    Term lambda() {
        if (peek() == '\\') {
            ++pos_;
        } else {
            pos_ += 2;
        }
        Pattern p = pattern();
        expect('.');
        Term body = term();
        return Term::abs(std::move(p), std::move(body));
    }

    Term application() {
        std::size_t start = pos_;
        std::optional<Term> acc;
        while (true) {
            skip_ws();
            if (eof() || peek() == ')') break;
            if (at_lambda()) {
                Term lam = lambda();
                acc = acc ? Term::app(*acc, lam) : lam;
                break;
            }
            Term a = atom();
            acc = acc ? Term::app(*acc, a) : a;
        }
        if (!acc) throw ParseError("expected a term", start);
        return *acc;
    }

    Term atom() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            Term t = term();
            expect(')');
            return t;
        }
        if (!is_ident_start(peek())) {
            throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
        }
        std::string id = identifier();
        return is_constant_name(id) ? Term::constant(id) : Term::var(id);
    }

    Pattern pattern_atom() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            Pattern p = pattern();
            expect(')');
            return p;
        }
        if (!is_ident_start(peek())) {
            throw ParseError(std::string("unexpected '") + peek() + "' in pattern", pos_);
        }
        std::string id = identifier();
        return is_constant_name(id) ? Pattern::constant(id) : Pattern::var(id);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void print_pattern(const Pattern& p, std::ostream& os, bool as_arg) {
    switch (p.kind()) {
        case PatternKind::Var:
        case PatternKind::Const:
            os << p.name();
            return;
        case PatternKind::App:
            if (as_arg) os << '(';
            print_pattern(p.head(), os, false);
            os << ' ';
            print_pattern(p.arg(), os, true);
            if (as_arg) os << ')';
            return;
    }
}

void print_term(const Term& m, std::ostream& os) {
    switch (m.kind()) {
        case TermKind::Var:
        case TermKind::Const:
            os << m.name();
            return;
        case TermKind::Abs:
            os << '\\';
            print_pattern(m.binder(), os, true);
            os << '.';
            print_term(m.body(), os);
            return;
        case TermKind::App: {
            const Term& f = m.fun();
            if (f.is_abs()) {
                os << '(';
                print_term(f, os);
                os << ')';
            } else {
                print_term(f, os);
            }
            os << ' ';
            const Term& a = m.arg();
            if (a.is_app() || a.is_abs()) {
                os << '(';
                print_term(a, os);
                os << ')';
            } else {
                print_term(a, os);
            }
            return;
        }
    }
}

}  // namespace

Term parse_term(std::string_view text) {
    Parser p(text);
    Term t = p.term();
    p.expect_end();
    return t;
}

Pattern parse_pattern(std::string_view text) {
    Parser p(text);
    Pattern pat = p.pattern();
    p.expect_end();
    return pat;
}

Substitution parse_substitution(std::string_view text) {
    Parser p(text);
    p.skip_ws();
    bool braced = p.try_consume("{");
    Substitution out;
    p.skip_ws();
    if (!(braced && p.try_consume("}")) && !p.eof()) {
        while (true) {
            std::size_t at = p.pos();
            std::string x = p.identifier();
            if (is_constant_name(x)) throw ParseError("substitution domain must be variables", at);
            if (!p.try_consume(":=")) throw ParseError("expected ':='", p.pos());
            // Terms inside substitutions end at ',' or '}', so cut the slice first.
            p.skip_ws();
            std::size_t start = p.pos();
            int depth = 0;
            std::size_t end = start;
            while (end < text.size()) {
                char c = text[end];
                if (c == '(') ++depth;
                if (c == ')') --depth;
                if (depth == 0 && (c == ',' || c == '}')) break;
                ++end;
            }
            if (out.contains(x)) throw ParseError("variable bound twice: " + x, at);
            try {
                out.bind(x, parse_term(text.substr(start, end - start)));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), start);
            }
            p.seek(end);
            if (p.try_consume(",")) continue;
            break;
        }
        if (braced && !p.try_consume("}")) throw ParseError("expected '}'", p.pos());
    }
    p.expect_end();
    return out;
}

std::vector<Term> parse_term_lines(std::string_view text) {
    std::vector<Term> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] != '#') {
            try {
                out.push_back(parse_term(line));
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()) + " (line " + std::to_string(out.size() + 1) + ")",
                                 start + e.offset());
            }
        }
        start = end + 1;
    }
    return out;
}

std::string to_string(const Term& m) {
    std::ostringstream os;
    print_term(m, os);
    return os.str();
}

std::string to_string(const Pattern& p) {
    std::ostringstream os;
    print_pattern(p, os, false);
    return os.str();
}

std::string to_string(const Substitution& s) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [x, t] : s) {
        if (!first) os << ", ";
        first = false;
        os << x << ":=" << to_string(t);
    }
    os << '}';
    return os.str();
}

}  // namespace patcalc
