#pragma once

#include <stdexcept>
#include <string>

namespace cyclestat {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Series inversion / rational expansion at a point where the constant term vanishes.
struct ZeroConstantTerm : Error {
    using Error::Error;
};

/// Euler products require nonnegative exponents.
struct NegativeExponent : Error {
    using Error::Error;
};

/// A variety descriptor whose derived counts are negative or non-integral.
struct InconsistentDescriptor : Error {
    using Error::Error;
};

/// Requested order exceeds the data carried by a descriptor or expansion.
struct TruncationTooShort : Error {
    using Error::Error;
};

/// Operation needs a rational zeta function but the descriptor has none.
struct NotRational : Error {
    using Error::Error;
};

/// A value that must be positive came out nonpositive.
struct NonPositiveValue : Error {
    using Error::Error;
};

/// No closed point of the requested degree exists on the variety.
struct NoSuchPrimeDegree : Error {
    using Error::Error;
};

/// Request exceeds a configured exact-computation cap.
struct CapExceeded : Error {
    using Error::Error;
};

/// Argument outside the mathematical domain of the function.
struct DomainError : Error {
    using Error::Error;
};

/// Zero-length or inverted sweep window.
struct DegenerateWindow : Error {
    using Error::Error;
};

} // namespace cyclestat
