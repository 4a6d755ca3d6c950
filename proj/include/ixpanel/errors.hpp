#pragma once

#include <stdexcept>
#include <string>

#include "ixpanel/month.hpp"

namespace ixp {

/// Root of the library's exception hierarchy.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unparseable or structurally invalid input (bad cell, bad date, duplicate rows, ...).
struct MalformedInput : Error {
    using Error::Error;
};

/// A region's observed span has an interior month with no value.
struct GapError : Error {
    std::string region;
    MonthStamp missing;

    GapError(std::string region_code, MonthStamp month)
        : Error("gap in region " + region_code + ": no value for " + month.str()),
          region(std::move(region_code)),
          missing(month) {}
};

/// A value lies outside the mathematical domain of the operation (e.g. a non-positive price).
struct DomainError : Error {
    using Error::Error;
};

/// Not enough observations to perform the operation; the message names what is missing.
struct InsufficientData : Error {
    using Error::Error;
};

/// A requested window or month range does not intersect the available data as required.
struct RangeError : Error {
    using Error::Error;
};

/// Model evaluation at the critical time where the expression diverges.
struct SingularityError : Error {
    using Error::Error;
};

/// Regression requested on data with zero price variance (or otherwise unidentifiable).
struct DegenerateRegression : Error {
    using Error::Error;
};

/// The two branches of a piecewise model never intersect on the searched interval.
struct NoCrossoverError : Error {
    using Error::Error;
};

/// Lookup of an unknown region code or similar key.
struct KeyError : Error {
    using Error::Error;
};

/// The requested classification/diagnostic is undefined for this model kind.
struct NotApplicable : Error {
    using Error::Error;
};

}  // namespace ixp
