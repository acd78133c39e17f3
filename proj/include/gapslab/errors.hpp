#pragma once
// Error taxonomy shared by the library and the CLI exit codes.

#include <stdexcept>
#include <string>

namespace gapslab {

enum class ErrorClass { Validation, Budget, Io };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass c, const std::string& msg) : std::runtime_error(msg), class_(c) {}
  ErrorClass error_class() const noexcept { return class_; }

 private:
  ErrorClass class_;
};

[[noreturn]] inline void fail_validation(const std::string& msg) {
  throw Error(ErrorClass::Validation, msg);
}
[[noreturn]] inline void fail_budget(const std::string& msg) {
  throw Error(ErrorClass::Budget, msg);
}
[[noreturn]] inline void fail_io(const std::string& msg) { throw Error(ErrorClass::Io, msg); }

inline const char* error_class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::Validation: return "validation-error";
    case ErrorClass::Budget: return "budget-exceeded";
    case ErrorClass::Io: return "io-error";
  }
  return "unknown";
}

inline int error_exit_code(ErrorClass c) {
  switch (c) {
    case ErrorClass::Validation: return 2;
    case ErrorClass::Budget: return 3;
    case ErrorClass::Io: return 4;
  }
  return 1;
}

}  // namespace gapslab
