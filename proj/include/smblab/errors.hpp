#pragma once

#include <stdexcept>
#include <string>

namespace smblab {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Process definition failed validation.
struct SpecError : Error {
    using Error::Error;
};

struct NonStochasticError : SpecError {
    using SpecError::SpecError;
};

struct NotStationaryError : SpecError {
    using SpecError::SpecError;
};

struct ReducibleError : SpecError {
    using SpecError::SpecError;
};

struct SymbolOutOfRangeError : Error {
    using Error::Error;
};

/// Precondition violations (InvalidLength, InvalidGap, InvalidOrder, InvalidAlpha, ...).
struct InvalidArgumentError : Error {
    using Error::Error;
};

/// Enumeration would visit more cylinders (or pairs) than the configured budget.
struct BudgetExceededError : Error {
    using Error::Error;
};

/// A truncated series failed to reach its termination bound within the hard cap.
struct SeriesNotConvergedError : Error {
    using Error::Error;
};

/// Limiting variance is zero; standardization is undefined.
struct DegenerateVarianceError : Error {
    using Error::Error;
};

/// A tabulated curve never crosses the requested threshold.
struct NotReachedError : Error {
    using Error::Error;
};

/// Recurrence search exhausted its scan window.
struct ScanExhaustedError : Error {
    int64_t scan_limit;
    explicit ScanExhaustedError(int64_t limit)
        : Error("recurrence not found within scan limit " + std::to_string(limit)),
          scan_limit(limit) {}
};

struct GridExceedsTrajectoryError : Error {
    using Error::Error;
};

struct UnsupportedError : Error {
    using Error::Error;
};

/// CLI / config-file problems (unknown command, missing field, bad value).
struct ConfigError : Error {
    using Error::Error;
};

/// Two reports cannot be compared field-wise.
struct SchemaMismatchError : Error {
    using Error::Error;
};

}  // namespace smblab
