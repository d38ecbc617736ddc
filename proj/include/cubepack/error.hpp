#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubepack {

enum class ErrorCode {
  kDomain,
  kSizeLimit,
  kPrecondition,
  kNotRepresentable,
  kInvalidProfile,
  kUnsupportedDimension,
  kParseSyntax,
  kParseSchema,
  kParseRange,
  kParseOverlap,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kSizeLimit: return "size limit";
    case ErrorCode::kPrecondition: return "precondition failed";
    case ErrorCode::kNotRepresentable: return "not representable";
    case ErrorCode::kInvalidProfile: return "invalid profile";
    case ErrorCode::kUnsupportedDimension: return "unsupported dimension";
    case ErrorCode::kParseSyntax: return "parse error (syntax)";
    case ErrorCode::kParseSchema: return "parse error (schema)";
    case ErrorCode::kParseRange: return "parse error (range)";
    case ErrorCode::kParseOverlap: return "parse error (overlapping intervals)";
    case ErrorCode::kIo: return "i/o error";
  }
  return "error";
}

}  // namespace cubepack
