#include <utility>

#include "hkd/error.hpp"
#include "hkd/json_io.hpp"

namespace hkd {

using nlohmann::json;

json rational_to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return parse_rational(value.dump());
  throw Error(ErrorCode::Schema, "expected a rational string or integer, got " + value.dump());
}

json piecewise_to_json(const PiecewisePoly& f) {
  json breaks = json::array();
  for (const auto& b : f.breakpoints()) breaks.push_back(to_string(b));
  json pieces = json::array();
  for (const auto& p : f.pieces()) {
    json coeffs = json::array();
    for (const auto& c : p.coefficients()) coeffs.push_back(to_string(c));
    pieces.push_back(std::move(coeffs));
  }
  return json{{"breakpoints", std::move(breaks)}, {"pieces", std::move(pieces)}};
}

PiecewisePoly piecewise_from_json(const json& value) {
  if (!value.is_object() || !value.contains("breakpoints") || !value.contains("pieces"))
    throw Error(ErrorCode::Schema, "piecewise JSON needs 'breakpoints' and 'pieces'");
  const auto& jb = value.at("breakpoints");
  const auto& jp = value.at("pieces");
  if (!jb.is_array() || !jp.is_array())
    throw Error(ErrorCode::Schema, "'breakpoints' and 'pieces' must be arrays");
  std::vector<Rational> breaks;
  for (const auto& b : jb) breaks.push_back(rational_from_json(b));
  std::vector<Poly> pieces;
  for (const auto& p : jp) {
    if (!p.is_array()) throw Error(ErrorCode::Schema, "each piece must be a coefficient array");
    std::vector<Rational> coeffs;
    for (const auto& c : p) coeffs.push_back(rational_from_json(c));
    pieces.emplace_back(std::move(coeffs));
  }
  return PiecewisePoly(std::move(breaks), std::move(pieces));
}

std::string pp_to_json(const PiecewisePoly& f) { return piecewise_to_json(f).dump(); }

PiecewisePoly pp_from_json(const std::string& text) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
  return piecewise_from_json(parsed);
}

}  // namespace hkd
