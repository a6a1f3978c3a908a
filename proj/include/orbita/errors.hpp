#pragma once

#include <stdexcept>
#include <string>

namespace orbita {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Polynomial kernel.
class DegenerateInput : public Error { using Error::Error; };
class ChainCollapse : public Error { using Error::Error; };
class NotAFactor : public Error { using Error::Error; };
class PipelineDegreeMismatch : public Error { using Error::Error; };

// Orbit model.
class NotElliptic : public Error { using Error::Error; };
class DegenerateOrbit : public Error { using Error::Error; };
class InvalidOrbit : public Error { using Error::Error; };
class InvalidPlan : public Error { using Error::Error; };

// Solvers.
class CollinearInput : public Error { using Error::Error; };
class RadiusMismatch : public Error { using Error::Error; };
class NoEllipticCandidate : public Error { using Error::Error; };
class DegenerateGeometry : public Error { using Error::Error; };
class NoFeasible : public Error { using Error::Error; };

}  // namespace orbita
