#pragma once

#include <stdexcept>
#include <string>

namespace zetarg {

// Numeric failures map to CLI exit code 3, configuration failures to 2.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleAtOne : NumericError {
    PoleAtOne() : NumericError("zeta_eval: s = 1 is the pole of zeta") {}
};

struct PrecisionUnreachable : NumericError {
    using NumericError::NumericError;
};

struct StepCollapse : NumericError {
    using NumericError::NumericError;
};

struct ReconciliationFailure : NumericError {
    using NumericError::NumericError;
};

struct QuadratureBudgetExceeded : NumericError {
    using NumericError::NumericError;
};

struct TableTooSmall : NumericError {
    using NumericError::NumericError;
};

struct WindowEmpty : NumericError {
    using NumericError::NumericError;
};

struct SupportCapExceeded : NumericError {
    using NumericError::NumericError;
};

struct NonpositiveWeight : NumericError {
    using NumericError::NumericError;
};

struct TailNotCertified : NumericError {
    using NumericError::NumericError;
};

struct InvalidConfig : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidSign : InvalidConfig {
    using InvalidConfig::InvalidConfig;
};

}  // namespace zetarg
