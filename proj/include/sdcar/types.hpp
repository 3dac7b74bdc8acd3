#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sdcar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Validation tolerance for structural identities (unitarity, hermiticity,
// completeness relations). Absolute, on Frobenius norms of residuals.
inline constexpr double kDefaultTol = 1e-9;

// Spectrum margin separating faithful polarizations (modular theory applies)
// from basis projections (pure Fock states).
inline constexpr double kFaithfulTol = 1e-8;

// Base step for central finite differences of modular-flow derivatives.
inline constexpr double kDefaultFdStep = 1e-4;

// Relative tolerance for cross-route entropy agreement verdicts.
inline constexpr double kDefaultAcceptTol = 1e-8;

// Dense Fock operators are 2^m x 2^m; m beyond this is refused.
inline constexpr int kMaxFockModes = 14;

enum class ErrorCode {
  OddDimension,
  NotUnitary,
  InvolutionSquareFails,
  DimensionMismatch,
  NotHermitian,
  GammaIncompatible,
  DegenerateSeed,
  BetaNonPositive,
  ZeroMode,
  SpectrumOutOfRange,
  CompletenessFails,
  RankMismatch,
  ModeOutOfRange,
  NotInvariant,
  TooManyModes,
  ZeroVector,
  NotSeparating,
  NotDensityMatrix,
  NotGammaInvariant,
  WrongNormalization,
  FlowIncompatible,
  MasslessDegenerate,
  BadMode,
  UsageError,
  ConfigParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sdcar
