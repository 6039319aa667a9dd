#pragma once

#include <stdexcept>
#include <string>

namespace mgl {

enum class ErrorCode {
  UnknownConstant,
  UnboundVariable,
  ApplicationMismatch,
  EscapingTypeVariable,
  UnknownSort,
  NotNormal,
  ParseError,
  TypeErrorInEntry,
  DuplicateWord,
  MissingPrerequisite,
  UnknownWord,
  NonLogicalHead,
  InvalidSignature,
  StepLimitExceeded,
  BadInput,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mgl
