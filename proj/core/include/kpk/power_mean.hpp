#ifndef KPK_POWER_MEAN_HPP
#define KPK_POWER_MEAN_HPP

#include <span>
#include <vector>

namespace kpk {

// Entries of a distance vector below this value are raised to it before any
// power is taken, since y^(s-1) is unbounded at y = 0 for s < 1.
inline constexpr double kDistanceFloor = 1e-12;

// Power mean M_s(y) = ((1/k) sum_j y_j^s)^(1/s) for s in (-inf, 1], s != 0.
//
// Evaluated by factoring out min(y), so that every ratio y_j / min(y) is >= 1
// and its s-th power lies in (0, 1] for negative s. This keeps the computation
// finite for exponents in the hundreds or thousands.
//
// Throws Error(invalid_input) on an empty, negative or non-finite y and
// Error(invalid_exponent) when s is zero, non-finite or greater than one.
double power_mean(std::span<const double> y, double s);

// Gradient of M_s at y, i.e. the MM weights
//   w_j = (1/k) y_j^(s-1) / ((1/k) sum_l y_l^s)^(1 - 1/s).
// Homogeneous of degree 0 in y and satisfies sum_j w_j y_j = M_s(y).
std::vector<double> power_mean_weights(std::span<const double> y, double s);

// Natural logarithm of the weights above, written into `out` (same length as
// y). Exposed because callers that renormalise weights need them without
// underflow. Returns M_s(y).
double power_mean_log_weights(std::span<const double> y, double s, std::span<double> out);

// Validates an exponent without evaluating anything.
void check_exponent(double s);

}  // namespace kpk

#endif  // KPK_POWER_MEAN_HPP
