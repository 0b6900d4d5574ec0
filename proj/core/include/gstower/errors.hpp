#ifndef GSTOWER_ERRORS_HPP
#define GSTOWER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gstower {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// finite field construction / arithmetic
struct NotOddPrime : Error { using Error::Error; };
struct DegreeTooLarge : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct WrongDegree : Error { using Error::Error; };
struct MixedFields : Error { using Error::Error; };
struct PoleAtInput : Error { using Error::Error; };

// symbolic kernel
struct CyclicDependency : Error { using Error::Error; };
struct ZeroDivisor : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// tower construction
struct UnsupportedReducedLevel : Error { using Error::Error; };
struct BetaNotTraceZero : Error { using Error::Error; };
struct BetaZero : Error { using Error::Error; };
struct VectorTooShort : Error { using Error::Error; };

// point enumeration
struct NoSplitFiber : Error { using Error::Error; };

// identity solving
struct NotConstant : Error { using Error::Error; };
struct NotTraceZero : Error { using Error::Error; };

// formula evaluation
struct LevelTooSmall : Error { using Error::Error; };
struct DegreeTooSmall : Error { using Error::Error; };

} // namespace gstower

#endif
