#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "kpk/error.hpp"
#include "kpk/power_mean.hpp"
#include "test_support.hpp"

using kpk::power_mean;
using kpk::power_mean_weights;
using kpk::test::rel_err;

namespace {

// Direct formula in long double; fine for moderate exponents.
long double direct_power_mean(const std::vector<double>& y, long double s) {
    long double acc = 0;
    for (double v : y) acc += std::pow(static_cast<long double>(v), s);
    return std::pow(acc / y.size(), 1.0L / s);
}

}  // namespace

TEST(PowerMean, ConstantVectorIsFixed) {
    for (double s : {-1.0, -7.5, -300.0, 0.5, 1.0}) {
        const std::vector<double> y(5, 3.25);
        EXPECT_NEAR(power_mean(y, s), 3.25, 1e-14);
        for (double w : power_mean_weights(y, s)) EXPECT_NEAR(w, 0.2, 1e-14);
    }
}

TEST(PowerMean, HarmonicOfOneAndFour) {
    const std::vector<double> y{1.0, 4.0};
    EXPECT_NEAR(power_mean(y, -1.0), 1.6, 1e-14);
    EXPECT_NEAR(power_mean(y, -1.0), static_cast<double>(direct_power_mean(y, -1.0L)), 1e-15);
}

TEST(PowerMean, VeryNegativeExponentApproachesMin) {
    const std::vector<double> y{1.0, 4.0};
    // ((1 + 4^-100)/2)^(-1/100) = 2^(1/100) up to a 4^-100 correction.
    EXPECT_NEAR(power_mean(y, -100.0), std::pow(2.0, 0.01), 1e-14);
    // k^(1/|s|) bound on the gap to the minimum.
    for (double s : {-100.0, -1e3, -1e4, -1e5}) {
        const double m = power_mean(y, s);
        EXPECT_GE(m, 1.0);
        EXPECT_LE(m - 1.0, std::pow(2.0, 1.0 / -s) - 1.0 + 1e-15);
    }
    EXPECT_NEAR(power_mean(y, -1e6), 1.0, 1e-6);
}

TEST(PowerMean, NoOverflowForHugeExponent) {
    const std::vector<double> y{1e-12, 1e6, 3.0};
    const double m = power_mean(y, -1e5);
    EXPECT_TRUE(std::isfinite(m));
    EXPECT_GE(m, 1e-12);
    EXPECT_LE(m, 1e-12 * std::pow(3.0, 1e-5) * (1 + 1e-12));
}

TEST(PowerMean, WeightsOfOneAndFour) {
    const auto w = power_mean_weights(std::vector<double>{1.0, 4.0}, -1.0);
    EXPECT_NEAR(w[0], 1.28, 1e-14);
    EXPECT_NEAR(w[1], 0.08, 1e-14);
}

TEST(PowerMean, WeightsConcentrateOnMinimum) {
    const auto w = power_mean_weights(std::vector<double>{1.0, 4.0}, -200.0);
    EXPECT_GT(w[0] / (w[0] + w[1]), 0.999);
    // log-domain oracle: w2/w1 = 4^(s-1)
    EXPECT_NEAR(std::log(w[1] / w[0]), -201.0 * std::log(4.0), 1e-9);
}

TEST(PowerMean, GradientMatchesCentralDifferences) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ys(0.1, 10.0);
    std::uniform_real_distribution<double> ss(-50.0, -0.1);
    std::uniform_int_distribution<int> ks(2, 6);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> y(static_cast<std::size_t>(ks(rng)));
        for (auto& v : y) v = ys(rng);
        const double s = ss(rng);
        const auto w = power_mean_weights(y, s);
        const double m = power_mean(y, s);
        double fd_scale = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            const double h = 1e-6 * y[j];
            auto up = y, dn = y;
            up[j] += h;
            dn[j] -= h;
            const double fd = (power_mean(up, s) - power_mean(dn, s)) / (2 * h);
            fd_scale = std::max(fd_scale, std::abs(fd));
            EXPECT_LE(std::abs(w[j] - fd), 1e-5 * std::max(std::abs(fd), 1e-3))
                << "trial " << trial << " j " << j << " s " << s;
        }
        double euler = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) euler += w[j] * y[j];
        EXPECT_LE(std::abs(euler - m), 1e-9 * m);
    }
}

TEST(PowerMean, MonotoneInExponent) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ys(0.01, 100.0);
    std::uniform_real_distribution<double> ss(-60.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> y(4);
        for (auto& v : y) v = ys(rng);
        double s = ss(rng), t = ss(rng);
        if (s == 0.0 || t == 0.0) continue;
        if (s > t) std::swap(s, t);
        EXPECT_LE(power_mean(y, s), power_mean(y, t) + 1e-12);
        const double m = power_mean(y, s);
        EXPECT_GE(m, *std::min_element(y.begin(), y.end()) * (1 - 1e-15));
        EXPECT_LE(m, *std::max_element(y.begin(), y.end()) * (1 + 1e-15));
    }
}

TEST(PowerMean, ScaleEquivariance) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ys(0.1, 10.0);
    std::uniform_real_distribution<double> ts(0.01, 100.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> y(3);
        for (auto& v : y) v = ys(rng);
        const double t = ts(rng);
        auto ty = y;
        for (auto& v : ty) v *= t;
        const double s = -0.5 - trial * 0.3;
        EXPECT_LE(rel_err(power_mean(ty, s), t * power_mean(y, s)), 1e-12);
        const auto w = power_mean_weights(y, s);
        const auto tw = power_mean_weights(ty, s);
        for (std::size_t j = 0; j < y.size(); ++j) EXPECT_LE(rel_err(w[j], tw[j]), 1e-12);
    }
}

TEST(PowerMean, ZeroEntriesAreFloored) {
    const std::vector<double> y{0.0, 1.0};
    const auto w = power_mean_weights(y, -2.0);
    for (double v : w) EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(w[0], w[1]);
    EXPECT_NEAR(power_mean(y, -2.0), power_mean(std::vector<double>{kpk::kDistanceFloor, 1.0}, -2.0), 1e-24);
}

TEST(PowerMean, RejectsBadInput) {
    const std::vector<double> y{1.0, 2.0};
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const kpk::Error& e) {
            return e.kind();
        }
        return kpk::ErrorKind::io;  // sentinel: nothing thrown
    };
    EXPECT_EQ(kind_of([&] { power_mean(y, 0.0); }), kpk::ErrorKind::invalid_exponent);
    EXPECT_EQ(kind_of([&] { power_mean(y, 1.5); }), kpk::ErrorKind::invalid_exponent);
    EXPECT_EQ(kind_of([&] { power_mean(y, NAN); }), kpk::ErrorKind::invalid_exponent);
    EXPECT_EQ(kind_of([&] { power_mean(std::vector<double>{1.0, NAN}, -1.0); }), kpk::ErrorKind::invalid_input);
    EXPECT_EQ(kind_of([&] { power_mean(std::vector<double>{1.0, -1.0}, -1.0); }), kpk::ErrorKind::invalid_input);
    EXPECT_EQ(kind_of([&] { power_mean(std::vector<double>{}, -1.0); }), kpk::ErrorKind::invalid_input);
}
