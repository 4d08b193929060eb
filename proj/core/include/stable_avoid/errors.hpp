#pragma once

#include <stdexcept>
#include <string>

namespace stable_avoid {

enum class ErrorCode {
    AlphaOutOfRange,
    OneSidedExcluded,
    CauchyAsymmetric,
    SpectrallyOneSided,
    DomainError,
    RegimeError,
    NonIntegrableEndpoint,
    ConfigError,
    ZeroPosition,
    UnboundedFunctional,
    Degeneracy,
    IoError,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. CLI maps any Error to exit code 2.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace stable_avoid
