#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "patcalc/term.hpp"

namespace patcalc {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Concrete syntax:
//   term    ::= lam | app
//   lam     ::= '\' pattern '.' term          ('λ' is accepted for '\')
//   app     ::= atom+ [lam]                    left-associative
//   atom    ::= var | const | '(' term ')'
//   pattern ::= patom+                          left-associative, head must be a constant
//   patom   ::= var | const | '(' pattern ')'
// Identifiers starting with an uppercase letter are constants.
Term parse_term(std::string_view text);
Pattern parse_pattern(std::string_view text);
/// `{x:=M, y:=N}`; the braces are optional.
Substitution parse_substitution(std::string_view text);
/// One term per non-blank line; lines starting with '#' are skipped.
std::vector<Term> parse_term_lines(std::string_view text);

std::string to_string(const Term& m);
std::string to_string(const Pattern& p);
std::string to_string(const Substitution& s);

}  // namespace patcalc
