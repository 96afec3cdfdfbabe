#pragma once

#include <cmath>
#include <cstdint>

#include "zetarg/errors.hpp"

namespace zetarg {

// A point sigma + i t in (a slightly padded version of) the critical strip.
struct CriticalStripPoint {
    double sigma = 0.5;
    double t = 0.0;

    CriticalStripPoint() = default;
    CriticalStripPoint(double sigma_, double t_) : sigma(sigma_), t(t_) { validate(); }

    void validate() const {
        if (!(sigma > 0.0 && sigma <= 3.0))
            throw InvalidConfig("CriticalStripPoint: sigma must lie in (0, 3]");
        if (!(std::isfinite(t) && t >= 0.0))
            throw InvalidConfig("CriticalStripPoint: t must be finite and non-negative");
    }
};

// Every evaluation either meets target_abs_error or throws; no silent degradation.
struct PrecisionPolicy {
    double target_abs_error = 1e-10;
    int guard_digits = 1;
    std::int64_t max_series_terms = 400000;

    void validate() const {
        if (!(target_abs_error > 0.0))
            throw InvalidConfig("PrecisionPolicy: target_abs_error must be positive");
        if (guard_digits < 0)
            throw InvalidConfig("PrecisionPolicy: guard_digits must be >= 0");
        if (max_series_terms <= 0)
            throw InvalidConfig("PrecisionPolicy: max_series_terms must be positive");
    }

    // Internal working target: the caller-facing target shrunk by the guard digits.
    double internal_target() const {
        return target_abs_error * std::pow(10.0, -guard_digits);
    }
};

inline double log2_iter(double x) { return std::log(std::log(x)); }    // log log x
inline double log3_iter(double x) { return std::log(log2_iter(x)); }   // log log log x

}  // namespace zetarg
