#include <gtest/gtest.h>

#include <random>

#include "cchaos/moments.hpp"
#include "properties.hpp"

using namespace cchaos;
using namespace cchaos::testing;

TEST(ContractionProperties, HoldOnRandomSymmetricPairs)
{
    std::mt19937_64 rng(101);
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<int> dim(1, 3);
        const auto s = random_space(static_cast<std::size_t>(dim(rng)), rng, t % 2 == 0);
        const auto [p1, q1] = random_order(rng);
        const auto [p2, q2] = random_order(rng);
        const ContractionCheck c =
            check_contraction_properties(random_kernel(s, p1, q1, rng), random_kernel(s, p2, q2, rng));
        EXPECT_LT(c.commutation, 1e-10);
        EXPECT_LT(c.symmetrization, 1e-10);
        EXPECT_LT(c.product_bound, 1e-10);
        EXPECT_LT(c.fubini, 1e-10);
        EXPECT_LT(c.norm_inequality, 1e-10);
        EXPECT_LT(c.norm_inequality_self, 1e-10);
    }
}

TEST(ContractionProperties, CommutationHoldsForRawKernels)
{
    std::mt19937_64 rng(102);
    for (int t = 0; t < 20; ++t) {
        const auto s = random_space(3, rng);
        const auto [p1, q1] = random_order(rng);
        const auto [p2, q2] = random_order(rng);
        const Kernel f1 = random_kernel(s, p1, q1, rng, true);
        const Kernel f2 = random_kernel(s, p2, q2, rng, true);
        for (int i = 0; i <= std::min(p1, q2); ++i) {
            for (int j = 0; j <= std::min(q1, p2); ++j) {
                EXPECT_LT(rel_gap(norm(contract(f1, f2, i, j)), norm(contract(f2, f1, j, i))),
                          1e-10);
            }
        }
    }
}

TEST(GapRoutes, AgreeOnRandomKernels)
{
    std::mt19937_64 rng(103);
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<int> dim(1, 4);
        const auto s = random_space(static_cast<std::size_t>(dim(rng)), rng, t % 3 != 0);
        const auto [p, q] = random_order(rng);
        const Kernel f = random_kernel(s, p, q, rng);
        EXPECT_LT(gap_route_spread(f), 1e-9) << "p=" << p << " q=" << q;
        EXPECT_GE(fourth_gap(f, GapRoute::v1), -1e-12 * variance_closed(f) * variance_closed(f));
    }
}

TEST(CovarianceIdentity, ContractionRouteMatchesMomentEngine)
{
    std::mt19937_64 rng(104);
    for (int t = 0; t < 25; ++t) {
        std::uniform_int_distribution<int> dim(1, 3);
        const auto s = random_space(static_cast<std::size_t>(dim(rng)), rng);
        const auto [p1, q1] = random_order(rng);
        const auto [p2, q2] = random_order(rng);
        const Kernel f1 = random_kernel(s, p1, q1, rng), f2 = random_kernel(s, p2, q2, rng);
        const double a = cov_abs_sq(f1, f2), b = cov_abs_sq_moments(f1, f2);
        const double scale = variance_closed(f1) * variance_closed(f2);
        EXPECT_LE(std::abs(a - b), 1e-9 * std::max(std::abs(b), scale))
            << "(" << p1 << "," << q1 << ") x (" << p2 << "," << q2 << ")";
    }
}

TEST(Sandwich, GapBetweenConstantMultiplesOfContractionSum)
{
    std::mt19937_64 rng(105);
    for (int t = 0; t < 30; ++t) {
        const auto s = random_space(3, rng);
        const auto [p, q] = random_order(rng);
        const Kernel f = random_kernel(s, p, q, rng);
        const double gap = fourth_gap(f, GapRoute::v1), cs = contraction_sum(f);
        const double tol = 1e-12 * variance_closed(f) * variance_closed(f);
        EXPECT_LE(sandwich_c1(p, q) * cs, gap + tol);
        EXPECT_LE(gap, sandwich_c2(p, q) * cs + tol);
    }
}

TEST(ThirdMoments, ClosedFormsMatchMomentEngine)
{
    std::mt19937_64 rng(106);
    for (int p = 1; p <= 2; ++p) {
        for (int t = 0; t < 4; ++t) {
            const Kernel f = random_kernel(random_space(2, rng), p, p, rng);
            const auto F = ChaosVariable::single(f);
            const auto [e3, e21] = third_moments_closed(f);
            const auto opts = exact_product_options();
            const double scale = std::pow(variance_closed(f), 1.5);
            EXPECT_LT(std::abs(e3 - moment(F, 3, 0, opts)), 1e-10 * scale);
            EXPECT_LT(std::abs(e21 - moment(F, 2, 1, opts)), 1e-10 * scale);
        }
    }
}
