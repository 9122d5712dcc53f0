#include <gtest/gtest.h>

#include <cmath>

#include "cchaos/fbm.hpp"
#include "cchaos/ou.hpp"

using namespace cchaos;

namespace {

OUParams fractional(double H, double T)
{
    OUParams p;
    p.lambda = 1.0;
    p.T = T;
    p.H = H;
    return p;
}

}  // namespace

TEST(FbmGram, BrownianCaseIsDiagonal)
{
    const auto g = fbm_gram(fractional(0.5, 3.0), 6);
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = 0; b < 6; ++b) {
            EXPECT_EQ(g[a * 6 + b], a == b ? 0.5 : 0.0);
        }
    }
}

TEST(FbmGram, TotalMassIsVarianceOfEndpoint)
{
    for (double H : {0.55, 0.6, 0.7}) {
        const auto g = fbm_gram(fractional(H, 2.0), 10);
        double total = 0.0;
        for (double v : g) {
            total += v;
        }
        EXPECT_NEAR(total, std::pow(2.0, 2 * H), 1e-12);
    }
}

TEST(FbmGram, SymmetricPositiveDefinite)
{
    const std::size_t m = 12;
    const auto g = fbm_gram(fractional(0.7, 4.0), m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            EXPECT_EQ(g[a * m + b], g[b * m + a]);
        }
        EXPECT_GT(g[a * m + a], 0.0);
    }
    // Cholesky without pivoting succeeds only for positive definite input
    std::vector<double> l(m * m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double d = g[j * m + j];
        for (std::size_t k = 0; k < j; ++k) {
            d -= l[j * m + k] * l[j * m + k];
        }
        ASSERT_GT(d, 0.0);
        l[j * m + j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < m; ++i) {
            double s = g[i * m + j];
            for (std::size_t k = 0; k < j; ++k) {
                s -= l[i * m + k] * l[j * m + k];
            }
            l[i * m + j] = s / l[j * m + j];
        }
    }
    EXPECT_THROW(fbm_gram(fractional(0.7, 4.0), 0), std::invalid_argument);
}

TEST(FbmInner, ConstantKernelOnUnitInterval)
{
    const std::size_t m = 8;
    const OUParams p = fractional(0.7, 1.0);
    const auto g = fbm_gram(p, m);
    GridSpec grid;
    grid.m = m;
    const auto space = make_grid(p, grid);
    Kernel one(space, 1, 0, std::vector<cplx>(m, cplx(1.0)));
    EXPECT_NEAR(fbm_inner(one, one, g).real(), 1.0, 1e-13);
    Kernel two(space, 1, 1, std::vector<cplx>(m * m, cplx(1.0)));
    EXPECT_NEAR(fbm_inner(two, two, g).real(), 1.0, 1e-13);
    EXPECT_THROW(fbm_inner(one, two, g), std::invalid_argument);
    EXPECT_THROW(fbm_inner(one, one, fbm_gram(p, 4)), std::invalid_argument);
}

TEST(FbmStats, BrownianLimitMatchesStructuredStats)
{
    const OUParams p = fractional(0.5, 6.0);
    const std::size_t m = 60;
    const FractionalStats f = fbm_psi_stats(p, m);
    GridSpec grid;
    grid.m = m;
    const OUChaosStats s = ou_structured_stats(p, make_grid(p, grid));
    EXPECT_NEAR(f.sigma_sq, s.sigma_sq, 1e-13);
    EXPECT_NEAR(f.gap, s.gap, 1e-13);
    EXPECT_NEAR(std::abs(f.e3_mixed - s.e3_mixed), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(f.pseudo), 0.0, 1e-15);
}

TEST(FbmStats, CorrelatedNoiseBreaksCircularity)
{
    const FractionalStats f = fbm_psi_stats(fractional(0.65, 5.0), 25);
    EXPECT_GT(f.sigma_sq, 0.0);
    EXPECT_GT(f.gap, 0.0);
    EXPECT_GT(std::abs(f.pseudo), 1e-3);
    EXPECT_LE(std::abs(f.pseudo), f.sigma_sq);
}

TEST(FbmSweep, NormalizedGapDecays)
{
    const FractionalSweep s = fbm_gap_sweep(fractional(0.7, 1.0), {5, 10, 20}, 0.25);
    ASSERT_EQ(s.gap_normalized.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(s.gap_normalized[k], s.stats[k].gap / std::pow(s.stats[k].sigma_sq, 2), 1e-15);
    }
    EXPECT_GT(s.gap_normalized[0], s.gap_normalized[2]);
    EXPECT_LT(s.slope_gap, 0.0);
}
