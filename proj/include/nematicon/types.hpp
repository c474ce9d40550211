#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace nematicon {

using Real = double;
using Complex = std::complex<double>;
using Index = Eigen::Index;

using Array = Eigen::ArrayXd;
using ArrayXXr = Eigen::ArrayXXd;
using ArrayXXc = Eigen::ArrayXXcd;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Construction / input validation.
struct InvalidGrid : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct NonFiniteField : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct SigmaOutOfRange : Error { using Error::Error; };

// Solver failures.
struct LineSearchStalled : Error { using Error::Error; };
struct StepTooLarge : Error {
  Real suggested_step;
  StepTooLarge(const std::string& msg, Real suggestion)
      : Error(msg), suggested_step(suggestion) {}
};
struct BracketError : Error { using Error::Error; };
struct NotInSphere : Error { using Error::Error; };
struct ScaleNotFound : Error { using Error::Error; };
struct SphereEscape : Error { using Error::Error; };
struct StaleGroundState : Error { using Error::Error; };
struct EigenFailure : Error { using Error::Error; };

// Post-processing and persistence.
struct WindowTooSmall : Error { using Error::Error; };
struct NotDecreasing : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct CorruptFile : Error { using Error::Error; };
struct VersionError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace nematicon
