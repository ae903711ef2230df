#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bacforge {

/// Machine-readable failure categories. The service layer exposes these
/// verbatim as `code` strings, so the set is closed.
enum class ErrorCode {
  BadInput,
  BadDna,
  ParseError,
  NoSites,
  AmbiguousSites,
  NotFound,
  PayloadTooLarge,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bacforge
