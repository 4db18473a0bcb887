#pragma once

#include <stdexcept>
#include <string>

namespace heavytail {

enum class ErrorCode {
    ParameterOutOfRange = 1,
    DomainError,
    QuadratureFailure,
    NonFiniteIntegrand,
    ConvergenceFailure,
    AdmissibilityError,
    ConvexityLost,
    CatalogUnknown,
    EigenSolveFailure,
    MassDeficit,
    GridMismatch,
    StabilityFailure,
    InsufficientDecay,
    ConfigError,
    IoError,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace heavytail
