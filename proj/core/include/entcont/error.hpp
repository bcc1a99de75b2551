#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entcont {

enum class Errc {
  NotSquare,
  NotHermitian,
  NegativeSpectrum,
  NotUnitary,
  DimensionMismatch,
  InvalidState,
  InvalidDistribution,
  RefTooSmall,
  AmplitudeOutOfRange,
  OutOfDomain,
  WrongDimensions,
  DimensionCap,
  RegimeViolation,
  EpsilonOutOfRange,
  ProviderUnavailable,
  ParseError,
  IoError,
  InvalidConfig,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI exit-code logic) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace entcont
