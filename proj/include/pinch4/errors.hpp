#pragma once

#include <stdexcept>
#include <string>

namespace pinch4 {

enum class Errc {
  NonTraceless,
  NonPositiveLambda,
  NonUnitPlane,
  BadDelta,
  DegenerateDelta,
  NotAFace,
  DimensionMismatch,
  NoSignChange,
  EtaOutOfRange,
  OutOfDomain,
  BadParameter,
  EmptyRegion,
  StuckSampler,
  ResolutionTooLarge,
  NegativeEntry,
  NotSorted,
  ParseError,
};

inline const char* errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::NonTraceless: return "NonTraceless";
    case Errc::NonPositiveLambda: return "NonPositiveLambda";
    case Errc::NonUnitPlane: return "NonUnitPlane";
    case Errc::BadDelta: return "BadDelta";
    case Errc::DegenerateDelta: return "DegenerateDelta";
    case Errc::NotAFace: return "NotAFace";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoSignChange: return "NoSignChange";
    case Errc::EtaOutOfRange: return "EtaOutOfRange";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::BadParameter: return "BadParameter";
    case Errc::EmptyRegion: return "EmptyRegion";
    case Errc::StuckSampler: return "StuckSampler";
    case Errc::ResolutionTooLarge: return "ResolutionTooLarge";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NotSorted: return "NotSorted";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline void check_delta_open(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw Error(Errc::DegenerateDelta, "delta must lie in (0,1)");
}

inline void check_lambda(double lambda) {
  if (!(lambda > 0.0)) throw Error(Errc::NonPositiveLambda, "lambda must be positive");
}

}  // namespace pinch4
