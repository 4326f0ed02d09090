#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "kpk/error.hpp"
#include "kpk/metrics.hpp"
#include "kpk/types.hpp"
#include "oracles.hpp"

using namespace kpk;

TEST(Contingency, Tables) {
    const Labels a{0, 0, 1}, b{0, 0, 1};
    const auto t = contingency(a, b);
    EXPECT_EQ(t.counts, (std::vector<std::vector<std::int64_t>>{{2, 0}, {0, 1}}));
    const Labels c{0, 0, 1, 1}, d{0, 1, 0, 1};
    const auto u = contingency(c, d);
    EXPECT_EQ(u.counts, (std::vector<std::vector<std::int64_t>>{{1, 1}, {1, 1}}));
    EXPECT_EQ(u.row_totals, (std::vector<std::int64_t>{2, 2}));
    const Labels one(5, 7);
    const auto v = contingency(one, one);
    EXPECT_EQ(v.counts, (std::vector<std::vector<std::int64_t>>{{5}}));
    EXPECT_EQ(v.n, 5);
    EXPECT_THROW(contingency(a, c), Error);
    EXPECT_THROW(contingency(Labels{}, Labels{}), Error);
}

TEST(Metrics, SpotValues) {
    const Labels a{0, 0, 1, 1}, b{0, 1, 0, 1};
    EXPECT_NEAR(ari(a, b), -0.5, 1e-15);
    EXPECT_DOUBLE_EQ(nmi(a, b), 0.0);
    EXPECT_DOUBLE_EQ(ari(a, a), 1.0);
    EXPECT_DOUBLE_EQ(nmi(a, a), 1.0);
    const Labels perm{5, 5, 2, 2};
    EXPECT_DOUBLE_EQ(ari(a, perm), 1.0);
    EXPECT_NEAR(nmi(a, perm), 1.0, 1e-15);
    const Labels flat(4, 0);
    EXPECT_EQ(nmi(flat, flat), 0.0);
    EXPECT_EQ(ari(flat, flat), 0.0);
    EXPECT_THROW(ari(Labels{1}, Labels{1}), Error);
}

TEST(Metrics, MatchBruteForceOnSmallPartitions) {
    for (int n = 2; n <= 6; ++n) {
        std::vector<Labels> parts;
        oracle::for_each_partition(n, 3, [&](const Labels& p) { parts.push_back(p); });
        for (const auto& a : parts) {
            for (const auto& b : parts) {
                EXPECT_NEAR(ari(a, b), oracle::pair_counting_ari(a, b), 1e-12);
                EXPECT_NEAR(nmi(a, b), oracle::plugin_nmi(a, b), 1e-12);
            }
        }
    }
}

TEST(Metrics, SymmetricAndRelabelingInvariant) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> lab(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        Labels a(40), b(40);
        for (auto& v : a) v = lab(rng);
        for (auto& v : b) v = lab(rng);
        EXPECT_EQ(ari(a, b), ari(b, a));
        EXPECT_EQ(nmi(a, b), nmi(b, a));
        std::vector<int> map{2, 0, 3, 1};
        Labels c = a;
        for (auto& v : c) v = map[static_cast<std::size_t>(v)] + 10;
        EXPECT_NEAR(ari(c, b), ari(a, b), 1e-12);
        EXPECT_NEAR(nmi(c, b), nmi(a, b), 1e-12);
        const double m = nmi(a, b, NmiNormalization::max);
        const double ar = nmi(a, b, NmiNormalization::arithmetic);
        const double g = nmi(a, b);
        EXPECT_LE(m, ar + 1e-15);
        EXPECT_LE(ar, g + 1e-15);
        for (double v : {m, ar, g}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(Metrics, RandomPartitionsHaveSmallAri) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> lab(0, 4);
    for (int trial = 0; trial < 20; ++trial) {
        Labels a(1000), b(1000);
        for (auto& v : a) v = lab(rng);
        for (auto& v : b) v = lab(rng);
        EXPECT_LT(std::abs(ari(a, b)), 0.1);
        const Labels sa(a.begin(), a.begin() + 60), sb(b.begin(), b.begin() + 60);
        EXPECT_NEAR(ari(sa, sb), oracle::pair_counting_ari(sa, sb), 1e-12);
    }
}
