#pragma once

#include <string>

#include <json.hpp>

#include "patcalc/development.hpp"
#include "patcalc/head.hpp"
#include "patcalc/hsplit.hpp"
#include "patcalc/standardisation.hpp"

namespace patcalc {

/// S-expressions: rule name, then quoted terms and patterns, then premises,
/// e.g. (DApp (DRefl "x") (DBeta "y" "{y:=A}" (DRefl "y") (y (DRefl "A")))).
std::string to_sexp(const DevProof& d);
std::string to_sexp(const IntDevProof& d);
std::string to_sexp(const StdProof& d);

/// JSON mirrors of the same trees. Every node has "rule", "source" and
/// "target" (StdProof nodes have "terms" instead) plus rule-specific fields.
nlohmann::json to_json(const DevProof& d);
nlohmann::json to_json(const IntDevProof& d);
nlohmann::json to_json(const StdProof& d);
nlohmann::json to_json(const HeadJustification& j);
nlohmann::json to_json(const StepRecord& s);
nlohmann::json to_json(const HSplit& s);
nlohmann::json to_json(const Substitution& s);

}  // namespace patcalc
