#include <gtest/gtest.h>

#include <array>
#include <random>

#include "cchaos/chaos.hpp"
#include "cchaos/combinatorics.hpp"
#include "cchaos/moments.hpp"
#include "test_support.hpp"

using namespace cchaos;
using cchaos::testing::random_kernel;
using cchaos::testing::random_space;

namespace {

Kernel vec(const SpacePtr& s, std::size_t k, bool anti)
{
    const std::array<std::size_t, 1> idx{k};
    return anti ? Kernel::basis(s, {}, idx) : Kernel::basis(s, idx, {});
}

Kernel mat(const SpacePtr& s, std::size_t hol, std::size_t anti)
{
    const std::array<std::size_t, 1> a{hol}, b{anti};
    return Kernel::basis(s, a, b);
}

void expect_same(const ChaosVariable& A, const ChaosVariable& B, double tol = 1e-13)
{
    EXPECT_NEAR(std::abs(A.constant() - B.constant()), 0.0, tol);
    for (const auto& [o, k] : A.terms()) {
        const Kernel* other = B.term(o.first, o.second);
        if (other == nullptr) {
            EXPECT_LT(norm(k), tol) << "extra term " << o.first << "," << o.second;
            continue;
        }
        for (std::size_t x = 0; x < k.size(); ++x) {
            EXPECT_NEAR(std::abs(k[x] - (*other)[x]), 0.0, tol);
        }
    }
    for (const auto& [o, k] : B.terms()) {
        if (A.term(o.first, o.second) == nullptr) {
            EXPECT_LT(norm(k), tol) << "missing term " << o.first << "," << o.second;
        }
    }
}

}  // namespace

TEST(ChaosVariable, ScalarKernelBecomesConstant)
{
    const auto s = Space::unit(2);
    ChaosVariable F(s);
    F.add(Kernel::scalar(s, {2.0, 1.0}));
    EXPECT_EQ(F.constant(), cplx(2.0, 1.0));
    EXPECT_TRUE(F.terms().empty());
    EXPECT_EQ(F.degree(), 0);
}

TEST(ChaosVariable, StoredKernelsAreSymmetrized)
{
    std::mt19937_64 rng(1);
    const auto s = random_space(3, rng);
    const auto F = ChaosVariable::single(random_kernel(s, 2, 1, rng, true));
    const Kernel* k = F.term(2, 1);
    ASSERT_NE(k, nullptr);
    EXPECT_TRUE(k->symmetric());
    EXPECT_TRUE(k->check_symmetric(1e-14));
}

TEST(ChaosVariable, RejectsMixedSpaces)
{
    ChaosVariable F(Space::unit(2));
    EXPECT_THROW(F.add(Kernel(Space::unit(3), 1, 0)), std::invalid_argument);
    EXPECT_THROW(ChaosVector({}), std::invalid_argument);
    EXPECT_THROW(multiply(ChaosVariable(Space::unit(2)), ChaosVariable(Space::unit(3))),
                 std::invalid_argument);
}

TEST(Conjugate, FirstChaosAndInvolution)
{
    const auto s = Space::unit(2);
    const ChaosVariable Fb = conjugate(ChaosVariable::single(vec(s, 0, false)));
    ASSERT_NE(Fb.term(0, 1), nullptr);
    EXPECT_EQ((*Fb.term(0, 1))[0], cplx(1.0));

    std::mt19937_64 rng(2);
    const auto t = random_space(2, rng);
    ChaosVariable F(t, {0.5, -0.25});
    F.add(random_kernel(t, 2, 1, rng));
    F.add(random_kernel(t, 0, 1, rng));
    expect_same(conjugate(conjugate(F)), F, 0.0);
}

TEST(Conjugate, HermitianKernelIsFixed)
{
    const auto s = Space::unit(2);
    const auto F = ChaosVariable::single(Kernel(s, 1, 1, {1.0, {0.0, 2.0}, {0.0, -2.0}, 3.0}));
    expect_same(conjugate(F), F, 0.0);
}

TEST(Multiply, OrthogonalFirstChaosProduct)
{
    const auto s = Space::unit(2);
    const auto P = multiply(ChaosVariable::single(vec(s, 0, false)),
                            ChaosVariable::single(vec(s, 1, true)));
    expect_same(P, ChaosVariable::single(mat(s, 0, 1)));
}

TEST(Multiply, ContractionProducesConstant)
{
    const auto s = Space::unit(2);
    const auto P = multiply(ChaosVariable::single(vec(s, 0, false)),
                            ChaosVariable::single(vec(s, 0, true)));
    ChaosVariable expect = ChaosVariable::single(mat(s, 0, 0));
    expect.set_constant(1.0);
    expect_same(P, expect);
}

TEST(Multiply, ConstantOneIsUnit)
{
    std::mt19937_64 rng(3);
    const auto s = random_space(2, rng);
    ChaosVariable F(s, {1.0, 2.0});
    F.add(random_kernel(s, 1, 2, rng));
    expect_same(multiply(F, ChaosVariable(s, 1.0)), F);
    EXPECT_EQ(expectation(multiply(F, ChaosVariable(s, 1.0))), F.constant());
}

TEST(Multiply, DegreeCapIsEnforced)
{
    std::mt19937_64 rng(4);
    const auto s = random_space(2, rng);
    const auto F = ChaosVariable::single(random_kernel(s, 3, 2, rng));
    ProductOptions opts;
    opts.degree_cap = 8;
    EXPECT_THROW(multiply(F, F, opts), degree_cap_exceeded);
    opts.degree_cap = 10;
    EXPECT_NO_THROW(multiply(F, F, opts));
}

TEST(Multiply, IsometryThroughProductAndExpectation)
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 6; ++t) {
        const auto s = random_space(3, rng);
        ChaosVariable F(s, {0.3, 0.1});
        double expect = std::norm(F.constant());
        for (auto [p, q] : {std::pair{1, 0}, std::pair{1, 1}, std::pair{2, 1}}) {
            const Kernel f = random_kernel(s, p, q, rng);
            F.add(f);
            expect += factorial_d(p) * factorial_d(q) * norm_sq(f);
        }
        const cplx e = expectation(multiply(F, conjugate(F), exact_product_options()));
        EXPECT_NEAR(e.real(), expect, 1e-11 * expect);
        EXPECT_NEAR(e.imag(), 0.0, 1e-11 * expect);
        EXPECT_NEAR(std::abs(expect_product_conj(F, F) - expect), 0.0, 1e-11 * expect);
        EXPECT_NEAR(F.l2_norm() * F.l2_norm(), expect, 1e-12 * expect);
    }
}

TEST(Multiply, IsometryVanishesAcrossOrders)
{
    std::mt19937_64 rng(6);
    const auto s = random_space(3, rng);
    const auto F = ChaosVariable::single(random_kernel(s, 2, 1, rng));
    const auto G = ChaosVariable::single(random_kernel(s, 1, 2, rng));
    EXPECT_NEAR(std::abs(expectation(multiply(F, conjugate(G), exact_product_options()))), 0.0,
                1e-12);
}

TEST(Multiply, ExpectationIsAssociative)
{
    std::mt19937_64 rng(7);
    const auto s = random_space(2, rng);
    ChaosVariable F(s, 0.5), G(s), H(s, {0.0, 1.0});
    F.add(random_kernel(s, 1, 0, rng));
    G.add(random_kernel(s, 1, 1, rng));
    G.add(random_kernel(s, 0, 1, rng));
    H.add(random_kernel(s, 0, 2, rng));
    const auto opts = exact_product_options();
    const cplx a = expectation(multiply(multiply(F, G, opts), H, opts));
    const cplx b = expectation(multiply(F, multiply(G, H, opts), opts));
    EXPECT_NEAR(std::abs(a - b), 0.0, 1e-12 * (1 + std::abs(a)));
}

TEST(Expectation, CentredForPositiveOrders)
{
    std::mt19937_64 rng(8);
    const auto s = random_space(2, rng);
    EXPECT_EQ(expectation(ChaosVariable::single(random_kernel(s, 2, 1, rng))), cplx(0.0));
}

TEST(Moment, ExponentialLawOfDiagonalKernel)
{
    const auto s = Space::unit(1);
    const auto F = ChaosVariable::single(mat(s, 0, 0));
    const auto opts = exact_product_options();
    EXPECT_NEAR(std::abs(moment(F, 3, 0, opts) - 2.0), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(moment(F, 2, 0, opts) - 1.0), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(moment(F, 1, 1, opts) - 1.0), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(moment(F, 2, 2, opts) - 9.0), 0.0, 1e-12);
}

TEST(Moment, ProductOfIndependentGaussians)
{
    const auto s = Space::unit(2);
    const auto F = ChaosVariable::single(mat(s, 0, 1));
    const auto opts = exact_product_options();
    EXPECT_NEAR(std::abs(moment(F, 2, 0, opts)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(moment(F, 1, 1, opts) - 1.0), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(moment(F, 2, 2, opts) - 4.0), 0.0, 1e-12);
    EXPECT_THROW(moment(F, -1, 0), std::invalid_argument);
}

TEST(Moment, MixedOrderPseudoVariancePairsTransposedTerms)
{
    std::mt19937_64 rng(9);
    const auto s = random_space(3, rng);
    const Kernel f = random_kernel(s, 1, 0, rng), g = random_kernel(s, 0, 1, rng);
    ChaosVariable F(s);
    F.add(f);
    F.add(g);
    // E[(I10 f + I01 g)^2] = 2 E[I10(f) I01(g)] = 2 <f, rc(g)>
    const cplx expect = 2.0 * inner_product(f, reverse_conjugate(g));
    EXPECT_NEAR(std::abs(moment(F, 2, 0, exact_product_options()) - expect), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(expect_product(F, F) - expect), 0.0, 1e-12);
}
