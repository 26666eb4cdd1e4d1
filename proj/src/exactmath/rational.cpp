#include "hkd/rational.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "hkd/error.hpp"

namespace hkd {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::Schema: return "schema_error";
    case ErrorCode::NotMPrimary: return "not_m_primary";
    case ErrorCode::Validation: return "validation_error";
    case ErrorCode::NotReduced: return "not_reduced";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Internal: return "internal_error";
  }
  return "unknown";
}

namespace {

bool is_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                         : text.substr(slash + 1);
  if (!is_integer_text(num, true) || !is_integer_text(den, false))
    throw Error(ErrorCode::Parse, "malformed rational: '" + std::string(text) + "'");
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Integer numerator(n, 10);
  Integer denominator(std::string(den), 10);
  if (denominator == 0)
    throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_decimal(const Rational& value, int digits) {
  // Enough working precision that rounding to `digits` is exact in practice.
  mpf_class f(value, static_cast<mp_bitcnt_t>(digits * 4 + 64));
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  int len = gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
  if (len < 0) throw Error(ErrorCode::Internal, "decimal formatting failed");
  if (static_cast<std::size_t>(len) >= buf.size()) {
    buf.resize(static_cast<std::size_t>(len) + 1);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
  }
  return std::string(buf.data());
}

Integer floor(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  out = Rational(num, den);
  out.canonicalize();
  return out;
}

Rational from_u64(std::uint64_t value) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(value), 0, 0, &value);
  return Rational(z);
}

}  // namespace hkd
