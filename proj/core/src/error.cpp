#include "entcont/error.hpp"

namespace entcont {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NegativeSpectrum: return "NegativeSpectrum";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidState: return "InvalidState";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::RefTooSmall: return "RefTooSmall";
    case Errc::AmplitudeOutOfRange: return "AmplitudeOutOfRange";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::WrongDimensions: return "WrongDimensions";
    case Errc::DimensionCap: return "DimensionCap";
    case Errc::RegimeViolation: return "RegimeViolation";
    case Errc::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case Errc::ProviderUnavailable: return "ProviderUnavailable";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace entcont
