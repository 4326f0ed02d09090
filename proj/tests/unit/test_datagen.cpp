#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "kpk/baselines.hpp"
#include "kpk/datagen.hpp"
#include "kpk/error.hpp"
#include "kpk/metrics.hpp"

using namespace kpk;

TEST(Rings, NoiselessSingleRingIsACircle) {
    RingsConfig c;
    c.k = 1;
    c.noise_sd = 0.0;
    c.radius_step = 2.5;
    const auto d = gen_rings(c);
    ASSERT_EQ(d.size(), 100);
    for (Eigen::Index i = 0; i < d.size(); ++i) EXPECT_NEAR(d.x.row(i).norm(), 2.5, 1e-12);
}

TEST(Rings, MeanRadiusWithinStandardError) {
    RingsConfig c;
    c.seed = 3;
    const auto d = gen_rings(c);
    ASSERT_EQ(d.size(), 1000);
    std::vector<double> sum(10, 0.0);
    std::vector<int> count(10, 0);
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const int l = d.labels[static_cast<std::size_t>(i)];
        sum[static_cast<std::size_t>(l)] += d.x.row(i).norm();
        ++count[static_cast<std::size_t>(l)];
    }
    for (int j = 0; j < 10; ++j) {
        EXPECT_EQ(count[static_cast<std::size_t>(j)], 100);
        EXPECT_LE(std::abs(sum[static_cast<std::size_t>(j)] / 100 - (j + 1.0)), 3 * 0.1 / std::sqrt(100.0));
    }
}

TEST(Rings, NotLinearlySeparable) {
    const auto d = gen_rings(RingsConfig{});
    const GramMatrix g = gram_matrix(LinearKernel{}, d.x);
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        KernelKmeansOptions o;
        o.k = 10;
        o.seed = seed;
        total += ari(d.labels, kernel_kmeans(g, o).labels);
    }
    EXPECT_LT(total / 20, 0.5);
}

TEST(Rings, RejectsBadConfig) {
    RingsConfig c;
    c.k = 0;
    EXPECT_THROW(gen_rings(c), Error);
    c = RingsConfig{};
    c.noise_sd = -1;
    EXPECT_THROW(gen_rings(c), Error);
}

TEST(Vmf, UnitNormAndConcentration) {
    Rng rng(1);
    Vector mu = Vector::Zero(20);
    mu[3] = 1.0;
    int close = 0;
    for (int t = 0; t < 1000; ++t) {
        const Vector x = sample_vmf(mu, 1e6, rng);
        EXPECT_NEAR(x.norm(), 1.0, 1e-10);
        close += std::acos(std::min(1.0, x.dot(mu))) < 0.01;
    }
    EXPECT_GT(close, 990);
}

TEST(Vmf, MeanResultantLengthMatchesBesselRatio) {
    const int d = 20;
    const double kappa = 30.0;
    Rng rng(2);
    Vector mu = Vector::Ones(d).normalized();
    const int draws = 10000;
    Vector mean = Vector::Zero(d);
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < draws; ++t) {
        const Vector x = sample_vmf(mu, kappa, rng);
        ASSERT_NEAR(x.norm(), 1.0, 1e-10);
        mean += x;
        const double c = x.dot(mu);
        sum += c;
        sum2 += c * c;
    }
    const double a_d = std::cyl_bessel_i(d / 2.0, kappa) / std::cyl_bessel_i(d / 2.0 - 1.0, kappa);
    const double m = sum / draws;
    const double se = std::sqrt((sum2 / draws - m * m) / draws);
    EXPECT_LE(std::abs(m - a_d), 4 * se) << "A_d(kappa) = " << a_d;
    EXPECT_GT(mean.normalized().dot(mu), 0.9);
}

TEST(Vmf, TwoDimensionalCircle) {
    Rng rng(3);
    Vector mu(2);
    mu << 0.6, 0.8;
    double c = 0.0;
    for (int t = 0; t < 4000; ++t) c += sample_vmf(mu, 5.0, rng).dot(mu);
    const double a2 = std::cyl_bessel_i(1.0, 5.0) / std::cyl_bessel_i(0.0, 5.0);
    EXPECT_NEAR(c / 4000, a2, 0.01);
}

TEST(Vmf, SphereDataset) {
    VmfConfig c;
    c.seed = 4;
    const auto d = gen_vmf_sphere(c);
    ASSERT_EQ(d.size(), 500);
    ASSERT_EQ(d.dim(), 20);
    for (Eigen::Index i = 0; i < d.size(); ++i) EXPECT_NEAR(d.x.row(i).norm(), 1.0, 1e-10);
    EXPECT_EQ(std::set<int>(d.labels.begin(), d.labels.end()).size(), 10u);
    const auto again = gen_vmf_sphere(c);
    EXPECT_EQ(d.x, again.x);
    EXPECT_EQ(d.labels, again.labels);

    VmfConfig bad;
    bad.kappa = 0;
    EXPECT_THROW(gen_vmf_sphere(bad), Error);
    Rng rng(5);
    EXPECT_THROW(sample_vmf(Vector::Ones(3), 1.0, rng), Error);
}
