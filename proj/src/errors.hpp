#pragma once

#include <stdexcept>
#include <string>

namespace epsq {

enum class ErrCode {
    InvalidArgument = 1,
    Parse = 2,
    RingMismatch = 3,
    NotASquare = 4,
    OrderTwoRequired = 5,
    SolverInconsistent = 6,
    NotCompatible = 7,
    NonHomogeneous = 8,
    NonAdditiveModel = 9,
    MissingCoefficientAction = 10,
    NonConstantSheets = 11,
    CompatibilityViolated = 12,
    ValidationFailed = 13,
    Internal = 99,
};

class Error : public std::runtime_error {
  public:
    Error(ErrCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrCode code() const { return code_; }

  private:
    ErrCode code_;
};

[[noreturn]] inline void fail(ErrCode code, const std::string& msg) { throw Error(code, msg); }

} // namespace epsq
