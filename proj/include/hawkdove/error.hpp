#pragma once

#include <stdexcept>
#include <string>

namespace hawkdove {

enum class ErrorCode {
  InvalidArgument,
  UndefinedPoint,
  SingularJacobian,
  NoConvergence,
  InvalidStart,
  StepFailure,
  Io,
};

// Single exception type for the library; the C API maps `code()` onto hd_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hawkdove
