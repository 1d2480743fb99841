#pragma once

#include <stdexcept>
#include <string>

namespace levymult {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonIntegrable : Error { using Error::Error; };
struct OriginAtom : Error { using Error::Error; };
struct UnsupportedRepresentation : Error { using Error::Error; };
struct InfiniteMass : Error { using Error::Error; };
struct AtomExplosion : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct AsymmetricInput : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct NormBoundViolated : Error { using Error::Error; };
struct DominationViolated : Error { using Error::Error; };
struct EmptySpectral : Error { using Error::Error; };
struct NotPlanar : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct ZeroMass : Error { using Error::Error; };
struct SemigroupTruncation : Error { using Error::Error; };

}  // namespace levymult
