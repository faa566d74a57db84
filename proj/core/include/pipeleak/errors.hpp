#pragma once

#include <stdexcept>
#include <string>

namespace pipeleak {

/// Broad failure category, used by callers (e.g. the CLI) to map an error to
/// an outcome: bad input vs. no usable result vs. an I/O problem.
enum class ErrorKind {
    InvalidInput,  ///< malformed or out-of-contract inputs / configuration
    NoResult,      ///< computation ran but produced no usable result
    Io,            ///< the environment failed (unreadable/unwritable file)
};

/// Base of all library exceptions. Messages follow the convention
/// "function: what went wrong".
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Stable type name ("InvalidScenario", ...), e.g. for CLI diagnostics.
    virtual const char* name() const noexcept { return "Error"; }

  private:
    ErrorKind kind_;
};

#define PIPELEAK_DEFINE_ERROR(Name, Kind)                                     \
    struct Name final : Error {                                               \
        explicit Name(const std::string& message)                             \
            : Error(ErrorKind::Kind, message) {}                              \
        const char* name() const noexcept override { return #Name; }          \
    }

// Geometry, gas and scenario validation.
PIPELEAK_DEFINE_ERROR(InvalidGeometry, InvalidInput);
PIPELEAK_DEFINE_ERROR(InvalidGas, InvalidInput);
PIPELEAK_DEFINE_ERROR(InvalidBoundary, InvalidInput);
PIPELEAK_DEFINE_ERROR(InvalidScenario, InvalidInput);
PIPELEAK_DEFINE_ERROR(InvalidTime, InvalidInput);
PIPELEAK_DEFINE_ERROR(OutOfDomain, InvalidInput);
PIPELEAK_DEFINE_ERROR(InvalidConfig, InvalidInput);

// Calibration.
PIPELEAK_DEFINE_ERROR(InvalidSeries, InvalidInput);
PIPELEAK_DEFINE_ERROR(InsufficientData, InvalidInput);
PIPELEAK_DEFINE_ERROR(NonDecayingData, InvalidInput);
PIPELEAK_DEFINE_ERROR(DegenerateTimes, InvalidInput);

// Fields and solvers.
PIPELEAK_DEFINE_ERROR(EmptyGrid, InvalidInput);
PIPELEAK_DEFINE_ERROR(InsufficientGrid, InvalidInput);
PIPELEAK_DEFINE_ERROR(GridMismatch, InvalidInput);
PIPELEAK_DEFINE_ERROR(InvalidField, InvalidInput);
PIPELEAK_DEFINE_ERROR(NumericalBlowup, NoResult);

// Localization.
PIPELEAK_DEFINE_ERROR(NoLeakModel, InvalidInput);
PIPELEAK_DEFINE_ERROR(DegenerateCurve, InvalidInput);
PIPELEAK_DEFINE_ERROR(NoLeakDetected, NoResult);
PIPELEAK_DEFINE_ERROR(WindowEmpty, NoResult);

// I/O.
PIPELEAK_DEFINE_ERROR(ParseError, InvalidInput);
PIPELEAK_DEFINE_ERROR(OrderError, InvalidInput);
PIPELEAK_DEFINE_ERROR(EmptyInput, InvalidInput);
PIPELEAK_DEFINE_ERROR(InvalidSampling, InvalidInput);
PIPELEAK_DEFINE_ERROR(ConfigError, InvalidInput);
PIPELEAK_DEFINE_ERROR(IoError, Io);

#undef PIPELEAK_DEFINE_ERROR

}  // namespace pipeleak
