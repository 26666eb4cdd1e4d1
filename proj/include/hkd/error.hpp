#pragma once

#include <stdexcept>
#include <string>

namespace hkd {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Schema,
  NotMPrimary,
  Validation,
  NotReduced,
  Unsupported,
  Overflow,
  Internal,
};

/// Machine-readable name of an error code ("not_m_primary", ...).
const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hkd
