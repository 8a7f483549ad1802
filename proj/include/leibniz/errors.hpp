#pragma once

#include <stdexcept>
#include <string>

namespace leibniz {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact-linear-algebra failures
struct DimensionMismatch : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct SplittingFailure : Error { using Error::Error; };
struct NotADecomposition : Error { using Error::Error; };

// Algebra-level failures
struct IdentityViolation : Error { using Error::Error; };
struct WellDefinednessFailure : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct NotAnIdeal : Error { using Error::Error; };
struct Undecidable : Error { using Error::Error; };

// Module-level failures
struct NotSolvable : Error { using Error::Error; };
struct NotRightNilpotent : Error { using Error::Error; };
struct TheoremViolation : Error { using Error::Error; };

// Cartan / root failures
struct NotCartan : Error { using Error::Error; };
struct ZeroWeightMismatch : Error { using Error::Error; };
struct NotFound : Error { using Error::Error; };
struct SemisimplicityNotEstablished : Error { using Error::Error; };

// Classification failures
struct NotSl2 : Error { using Error::Error; };
struct BadParity : Error { using Error::Error; };
struct BadRange : Error { using Error::Error; };
struct InternalMismatch : Error { using Error::Error; };

// I/O failures
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

} // namespace leibniz
