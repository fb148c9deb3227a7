#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "patcalc/term.hpp"

namespace patcalc {

enum class Dir : std::uint8_t { Fun, Arg, Body };

/// Path from the root to a subterm.
struct Position {
    std::vector<Dir> path;

    bool is_root() const { return path.empty(); }
    Position child(Dir d) const;
    /// `d` followed by this path.
    Position under(Dir d) const;
    Position tail() const;

    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

/// "root", or directions joined by '.', e.g. "Fun.Body.Arg".
std::string to_string(const Position& pos);
Position parse_position(const std::string& text);

/// One contraction: `result` comes from `source` by contracting the redex at `position`.
struct StepRecord {
    Term source;
    Position position;
    Term result;
};

std::optional<Term> subterm_at(const Term& m, const Position& pos);
/// Rebuilds m with the subterm at `pos` replaced.
Term replace_at(const Term& m, const Position& pos, const Term& replacement);

/// θB for (\p.B) N when p matches N.
std::optional<Term> contract_root(const Term& m);
bool is_redex(const Term& m);

/// All redex positions in preorder: a node before its function side,
/// the function side before the argument side.
std::vector<Position> redex_positions(const Term& m);

/// Throws std::invalid_argument when `pos` does not address a redex.
Term step_at(const Term& m, const Position& pos);

enum class Strategy { Leftmost, Head };

struct FuelledRun {
    Term final_term;
    std::vector<StepRecord> steps;
    bool exhausted = false;
};

FuelledRun reduce_fuelled(const Term& m, Strategy strategy, std::size_t fuel);

}  // namespace patcalc
