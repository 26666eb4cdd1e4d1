#include <string>

#include "hkd/error.hpp"
#include "hkd/json_io.hpp"

namespace hkd {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    throw Error(ErrorCode::Schema, std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::size_t count_field(const json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw Error(ErrorCode::Schema, std::string("'") + key + "' must be a positive integer");
  return v.get<std::size_t>();
}

Exponent exponent_from_json(const json& v) {
  if (!v.is_array()) throw Error(ErrorCode::Schema, "exponent vector must be an array");
  Exponent e;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > UINT32_MAX)
      throw Error(ErrorCode::Schema, "exponents must be nonnegative integers");
    e.push_back(x.get<std::uint32_t>());
  }
  return e;
}

std::vector<Exponent> exponent_list(const json& v) {
  if (!v.is_array()) throw Error(ErrorCode::Schema, "expected a list of exponent vectors");
  std::vector<Exponent> out;
  for (const auto& e : v) out.push_back(exponent_from_json(e));
  return out;
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
}

RingSpec ring_from_json(const json& value) {
  const auto& type = field(value, "type");
  if (!type.is_string()) throw Error(ErrorCode::Schema, "'type' must be a string");
  const auto t = type.get<std::string>();
  if (t == "polynomial") return RingSpec::polynomial(count_field(value, "vars"));
  if (t == "monomial_quotient")
    return RingSpec::monomial_quotient(count_field(value, "vars"), exponent_list(field(value, "relations")));
  if (t == "binomial_rewrite")
    return RingSpec::binomial_rewrite(count_field(value, "vars"), exponent_from_json(field(value, "lhs")),
                                      exponent_from_json(field(value, "rhs")));
  if (t == "segre")
    return RingSpec::segre(ring_from_json(field(value, "left")), ring_from_json(field(value, "right")));
  throw Error(ErrorCode::Schema, "unknown ring type '" + t + "'");
}

json ring_to_json(const RingSpec& ring) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PolynomialRing>)
          return {{"type", "polynomial"}, {"vars", r.num_vars}};
        else if constexpr (std::is_same_v<T, MonomialQuotientRing>)
          return {{"type", "monomial_quotient"}, {"vars", r.num_vars}, {"relations", r.relations}};
        else if constexpr (std::is_same_v<T, BinomialRewriteRing>)
          return {{"type", "binomial_rewrite"}, {"vars", r.num_vars}, {"lhs", r.lhs}, {"rhs", r.rhs}};
        else
          return {{"type", "segre"}, {"left", ring_to_json(*r.left)}, {"right", ring_to_json(*r.right)}};
      },
      ring.kind());
}

Ideal ideal_from_json(const RingSpec& ring, const json& value) {
  if (const auto* s = std::get_if<SegreRing>(&ring.kind()))
    return Ideal::segre(ideal_from_json(*s->left, field(value, "left")),
                        ideal_from_json(*s->right, field(value, "right")));
  return Ideal::monomial(ring, exponent_list(field(value, "generators")));
}

json ideal_to_json(const Ideal& ideal) {
  if (const auto* s = std::get_if<SegreIdeal>(&ideal.kind()))
    return {{"left", ideal_to_json(*s->left)}, {"right", ideal_to_json(*s->right)}};
  return {{"generators", std::get<MonomialIdeal>(ideal.kind()).generators}};
}

}  // namespace hkd
