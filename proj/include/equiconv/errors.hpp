#pragma once

#include <stdexcept>
#include <string>

namespace eqc {

// Base class for all errors raised by the library. Messages name the
// offending indices where applicable.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cayley table validation
struct NotAssociative : Error { using Error::Error; };
struct NotLatinSquare : Error { using Error::Error; };
struct NoIdentity : Error { using Error::Error; };
struct NoInverse : Error { using Error::Error; };

// Coset machinery
struct ExplicitSectionInvalid : Error { using Error::Error; };
struct NotAutomorphism : Error { using Error::Error; };
struct ActionNotHomomorphism : Error { using Error::Error; };

// Representations
struct GroupMismatch : Error { using Error::Error; };
struct NotCyclicOrDihedral : Error { using Error::Error; };
struct FrequencyZero : Error { using Error::Error; };
struct NotInStabilizer : Error { using Error::Error; };
struct NotRepresentation : Error { using Error::Error; };

// Fields and kernels
struct NotMackey : Error { using Error::Error; };
struct NotInKernelG : Error { using Error::Error; };
struct NotInKernelC : Error { using Error::Error; };
struct NotInKernelD : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct NotPermutationRep : Error { using Error::Error; };
struct NotOrthogonalRep : Error { using Error::Error; };

// Resource limits and front-end
struct TooLarge : Error { using Error::Error; };
struct UnknownName : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace eqc
