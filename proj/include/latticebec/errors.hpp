#pragma once

#include <stdexcept>
#include <string>

namespace latbec {

// Error taxonomy shared by the library and the CLI.  The CLI maps
// InvalidParameter/InvalidPotential to exit code 2 and the numerical
// family to exit code 3.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

struct InvalidPotential : InvalidParameter {
    using InvalidParameter::InvalidParameter;
};

struct UnsupportedPotential : InvalidParameter {
    using InvalidParameter::InvalidParameter;
};

struct NumericalFailure : Error {
    using Error::Error;
};

struct NonConvergence : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

struct GaugeFailure : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

struct IllSeparatedBand : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

struct InvariantViolation : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

} // namespace latbec
