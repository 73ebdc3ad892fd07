#pragma once

namespace noisynet {

// Standard normal CDF.
double normal_cdf(double x) noexcept;

// Inverse standard normal CDF for p in (0, 1). Rational approximation
// refined by one Halley step; absolute error below 1e-12 on (1e-300, 1-1e-16).
// Returns -inf / +inf at 0 / 1 and NaN outside [0, 1].
double normal_quantile(double p) noexcept;

// Two-sided critical value z with P(|Z| <= z) = level.
double two_sided_z(double level);

}  // namespace noisynet
