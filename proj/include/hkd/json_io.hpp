#pragma once

// nlohmann::json conversions shared by the C API and the CLI.

#include <json.hpp>

#include "hkd/piecewise.hpp"
#include "hkd/rational.hpp"

namespace hkd {

nlohmann::json rational_to_json(const Rational& value);
/// Accepts a string "p/q" / "p" or a JSON integer. Throws Error{Schema|Parse}.
Rational rational_from_json(const nlohmann::json& value);

nlohmann::json piecewise_to_json(const PiecewisePoly& f);
PiecewisePoly piecewise_from_json(const nlohmann::json& value);

}  // namespace hkd

#include "hkd/rings.hpp"

namespace hkd {

// {"type":"polynomial","vars":3}
// {"type":"monomial_quotient","vars":3,"relations":[[1,1,0]]}
// {"type":"binomial_rewrite","vars":4,"lhs":[1,0,0,1],"rhs":[0,1,1,0]}
// {"type":"segre","left":{...},"right":{...}}
RingSpec ring_from_json(const nlohmann::json& value);
nlohmann::json ring_to_json(const RingSpec& ring);

// {"generators":[[1,0,0],...]}; for Segre rings {"left":{...},"right":{...}}.
Ideal ideal_from_json(const RingSpec& ring, const nlohmann::json& value);
nlohmann::json ideal_to_json(const Ideal& ideal);

/// Parses text, mapping syntax errors to Error{Parse}.
nlohmann::json parse_json_text(const std::string& text);

}  // namespace hkd
