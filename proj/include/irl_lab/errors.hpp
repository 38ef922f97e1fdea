#pragma once

#include <stdexcept>
#include <string>

namespace irl_lab {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NegativeEntryError : Error { using Error::Error; };
struct RowSumViolationError : Error { using Error::Error; };
struct SingularSystemError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct ZeroRewardError : Error { using Error::Error; };
struct LpFailureError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct UnsupportedCodeError : Error { using Error::Error; };
struct DegenerateFacetError : Error { using Error::Error; };
struct InfeasibleSeparationError : Error { using Error::Error; };
struct BetaTooLargeError : Error { using Error::Error; };
struct EpsTooLargeError : Error { using Error::Error; };
struct VacuousBoundError : Error { using Error::Error; };
struct DegenerateDenominatorError : Error { using Error::Error; };
struct AbsoluteContinuityError : Error { using Error::Error; };
struct ZeroEntryError : Error { using Error::Error; };
struct InvalidRowError : Error { using Error::Error; };
struct GenerationTimeoutError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace irl_lab
