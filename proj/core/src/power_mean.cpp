#include "kpk/power_mean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kpk/error.hpp"

namespace kpk {

namespace {

// Minimum of the floored entries; rejects negative or non-finite input.
double checked_min(std::span<const double> y) {
    if (y.empty()) {
        throw Error(ErrorKind::invalid_input, "power mean of an empty vector");
    }
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < y.size(); ++j) {
        const double v = y[j];
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorKind::invalid_input,
                        "power mean entry " + std::to_string(j) + " is not a finite nonnegative value");
        }
        lo = std::min(lo, std::max(v, kDistanceFloor));
    }
    return lo;
}

// log of (1/k) sum_j (y_j / y_min)^s, with every ratio >= 1.
double log_mean_ratio_power(std::span<const double> y, double y_min, double s) {
    double acc = 0.0;
    for (double v : y) {
        acc += std::exp(s * std::log(std::max(v, kDistanceFloor) / y_min));
    }
    return std::log(acc / static_cast<double>(y.size()));
}

}  // namespace

void check_exponent(double s) {
    if (!std::isfinite(s) || s == 0.0 || s > 1.0) {
        throw Error(ErrorKind::invalid_exponent,
                    "power mean exponent must be finite, nonzero and at most 1 (got " +
                        std::to_string(s) + ")");
    }
}

double power_mean(std::span<const double> y, double s) {
    check_exponent(s);
    const double y_min = checked_min(y);
    const double log_a = log_mean_ratio_power(y, y_min, s);
    return y_min * std::exp(log_a / s);
}

double power_mean_log_weights(std::span<const double> y, double s, std::span<double> out) {
    check_exponent(s);
    if (out.size() != y.size()) {
        throw Error(ErrorKind::dimension_mismatch, "weight buffer length differs from distance vector");
    }
    const double y_min = checked_min(y);
    const double log_a = log_mean_ratio_power(y, y_min, s);
    // With r_j = y_j / y_min and A = mean(r^s), the y_min factors cancel:
    //   w_j = (1/k) r_j^(s-1) / A^(1-1/s).
    const double log_k = std::log(static_cast<double>(y.size()));
    const double tail = (1.0 - 1.0 / s) * log_a;
    for (std::size_t j = 0; j < y.size(); ++j) {
        const double log_r = std::log(std::max(y[j], kDistanceFloor) / y_min);
        out[j] = (s - 1.0) * log_r - log_k - tail;
    }
    return y_min * std::exp(log_a / s);
}

std::vector<double> power_mean_weights(std::span<const double> y, double s) {
    std::vector<double> w(y.size());
    power_mean_log_weights(y, s, w);
    for (double& v : w) {
        v = std::exp(v);
    }
    return w;
}

}  // namespace kpk
