#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cchaos/chaos.hpp"
#include "cchaos/combinatorics.hpp"
#include "cchaos/diagnostics.hpp"
#include "cchaos/fbm.hpp"
#include "cchaos/hermite.hpp"
#include "cchaos/moments.hpp"
#include "cchaos/multivariate.hpp"
#include "cchaos/ou.hpp"
#include "cchaos/ou_sim.hpp"
#include "cchaos/sampling.hpp"
#include "cchaos/wasserstein.hpp"
#include "properties.hpp"
#include "test_support.hpp"

using namespace cchaos;
using namespace cchaos::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Kernel elementary(const SpacePtr& s, std::size_t a, std::size_t b)
{
    Kernel f(s, 1, 1);
    f[a * s->n() + b] = 1.0;
    f.assume_symmetric(true);
    return f;
}

Outcome oracle_equivalence()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> size(1, 4), coin(0, 1);
    double worst = 0.0;
    const int count = 200;
    for (int t = 0; t < count; ++t) {
        const auto [p, q] = random_order(rng, 3);
        const auto s = random_space(static_cast<std::size_t>(size(rng)), rng, coin(rng) == 1);
        worst = std::max(worst, gap_route_spread(random_kernel(s, p, q, rng)));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && secs <= 120.0,
            fmt("%d kernels, max route spread %.2e (tol 1e-9), %.1fs", count, worst, secs)};
}

Outcome contraction_suite()
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> size(1, 3);
    double worst = 0.0;
    int pairs = 0;
    for (; pairs < 120; ++pairs) {
        const auto s = random_space(static_cast<std::size_t>(size(rng)), rng, true);
        const auto [p1, q1] = random_order(rng, 3);
        const auto [p2, q2] = random_order(rng, 3);
        worst = std::max(worst, check_contraction_properties(random_kernel(s, p1, q1, rng),
                                                         random_kernel(s, p2, q2, rng))
                                    .worst());
    }
    double cov_err = 0.0;
    for (int t = 0; t < 40; ++t) {
        const auto s = random_space(2, rng, true);
        const auto [p1, q1] = random_order(rng, 3);
        const auto [p2, q2] = random_order(rng, 3);
        const Kernel f1 = random_kernel(s, p1, q1, rng), f2 = random_kernel(s, p2, q2, rng);
        const double a = cov_abs_sq(f1, f2), b = cov_abs_sq_moments(f1, f2);
        const double scale = std::max(variance_closed(f1) * variance_closed(f2), std::abs(b));
        cov_err = std::max(cov_err, std::abs(a - b) / scale);
    }
    return {worst <= 1e-10 && cov_err <= 1e-9,
            fmt("%d pairs, worst property violation %.2e (tol 1e-10); covariance identity %.2e "
                "(tol 1e-9)",
                pairs, worst, cov_err)};
}

struct McEstimate {
    double mean = 0.0;
    double se = 0.0;
};

McEstimate batch_estimate(const std::vector<cplx>& x, std::size_t batches,
                          const std::function<double(const cplx*, std::size_t)>& stat)
{
    const std::size_t len = x.size() / batches;
    std::vector<double> v(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        v[b] = stat(x.data() + b * len, len);
    }
    double m = 0.0, s = 0.0;
    for (double e : v) {
        m += e / static_cast<double>(batches);
    }
    for (double e : v) {
        s += (e - m) * (e - m);
    }
    return {m, std::sqrt(s / static_cast<double>(batches - 1) / static_cast<double>(batches))};
}

double gap_stat(const cplx* x, std::size_t n)
{
    double m2 = 0.0, m4 = 0.0;
    cplx ps{};
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::norm(x[k]);
        m2 += a;
        m4 += a * a;
        ps += x[k] * x[k];
    }
    const double d = static_cast<double>(n);
    m2 /= d;
    m4 /= d;
    ps /= d;
    return m4 - 2.0 * m2 * m2 - std::norm(ps);
}

Outcome worked_values()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = Space::unit(2);
    const Kernel e11 = elementary(s, 0, 0), e12 = elementary(s, 0, 1);
    const auto [t3, t21] = third_moments_closed(e11);
    const double g11 = fourth_gap(e11, GapRoute::moments);
    const double g12 = fourth_gap(e12, GapRoute::moments);
    const cplx ps12 = pseudo_variance_closed(e12);
    const double be12 = be_upper_circular(e12, variance_closed(e12));
    bool exact = std::abs(g11 - 6.0) < 1e-12 && std::abs(t3 - 2.0) < 1e-12 &&
                 std::abs(t21 - 2.0) < 1e-12 && std::abs(g12 - 2.0) < 1e-12 &&
                 std::abs(ps12) == 0.0 && std::abs(be12 - 16.0) < 1e-9;

    const std::size_t N = 1000000, B = 100;
    const auto x11 = sample_chaos(ChaosVariable::single(e11), N, 11).values;
    const auto x12 = sample_chaos(ChaosVariable::single(e12), N, 12).values;
    auto moment_stat = [](int k, int l, bool imag) {
        return [=](const cplx* x, std::size_t n) {
            cplx acc{};
            for (std::size_t i = 0; i < n; ++i) {
                acc += std::pow(x[i], k) * std::pow(std::conj(x[i]), l);
            }
            acc /= static_cast<double>(n);
            return imag ? acc.imag() : acc.real();
        };
    };
    struct Check {
        const char* name;
        McEstimate est;
        double target;
    };
    const std::vector<Check> checks{
        {"gap(e11)", batch_estimate(x11, B, gap_stat), 6.0},
        {"E F^3(e11)", batch_estimate(x11, B, moment_stat(3, 0, false)), 2.0},
        {"E F^2 conj F(e11)", batch_estimate(x11, B, moment_stat(2, 1, false)), 2.0},
        {"gap(e12)", batch_estimate(x12, B, gap_stat), 2.0},
        {"Re E F^2(e12)", batch_estimate(x12, B, moment_stat(2, 0, false)), 0.0},
        {"Im E F^2(e12)", batch_estimate(x12, B, moment_stat(2, 0, true)), 0.0},
    };
    double worst_z = 0.0;
    const char* worst_name = "";
    for (const auto& c : checks) {
        const double z = std::abs(c.est.mean - c.target) / c.est.se;
        if (z > worst_z) {
            worst_z = z;
            worst_name = c.name;
        }
    }
    const double secs = seconds_since(t0);
    return {exact && worst_z <= 5.0 && secs <= 60.0,
            fmt("exact gap/E F^3/E F^2 conj F = %.3g/%.3g/%.3g, gap/pseudo/be_circ = %.3g/%.3g/%.6g; "
                "MC N=1e6 worst |z| = %.2f at %s (tol 5), %.1fs",
                g11, t3.real(), t21.real(), g12, std::abs(ps12), be12, worst_z, worst_name, secs)};
}

cplx hermite_generating(int p, int q, cplx z, int M = 64)
{
    cplx acc{};
    for (int a = 0; a < M; ++a) {
        const double ta = 2.0 * std::numbers::pi * a / M;
        const cplx u = std::polar(1.0, ta);
        for (int b = 0; b < M; ++b) {
            const double tb = 2.0 * std::numbers::pi * b / M;
            const cplx v = std::polar(1.0, tb);
            acc += std::exp(u * z + v * std::conj(z) - 2.0 * u * v) *
                   std::polar(1.0, -(p * ta + q * tb));
        }
    }
    return acc / double(M * M) * factorial_d(p) * factorial_d(q);
}

Outcome hermite_oracle()
{
    std::mt19937_64 rng(2718);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const cplx z{g(rng), g(rng)};
        for (int p = 0; p <= 6; ++p) {
            for (int q = 0; p + q <= 6; ++q) {
                const cplx ref = hermite_generating(p, q, z);
                worst = std::max(worst, std::abs(hermite_hl(p, q, z) - ref) /
                                            std::max(1.0, std::abs(ref)));
            }
        }
    }
    return {worst <= 1e-9, fmt("20 points, p+q <= 6, worst relative error %.2e (tol 1e-9)", worst)};
}

Outcome ou_closed_form()
{
    OUParams p;
    p.lambda = 1.0;
    p.T = 10.0;
    const double exact = ou_variance_closed(p);
    const SpacePtr gl =
        make_grid(p, GridSpec::with_spacing(p.T, 0.005 / 8.0, QuadratureRule::gauss_legendre));
    const OUChaosStats st = ou_structured_stats(p, gl);
    const double rel = std::abs(st.sigma_sq - exact) / exact;

    const SpacePtr mid = make_grid(p, GridSpec::with_spacing(p.T, 0.005));
    const Kernel psi = psi_kernel(p, mid);
    const double rel_mid = std::abs(norm_sq(psi) - exact) / exact;
    const cplx pseudo = pseudo_variance_closed(psi);
    return {rel <= 1e-3 && pseudo == cplx(0.0) && st.pseudo == cplx(0.0),
            fmt("Gauss-Legendre panels of width 0.005 (m=%zu): rel error %.2e (tol 1e-3); "
                "midpoint m=%zu: %.2e (informational); E F^2 = %g exactly",
                gl->n(), rel, mid->n(), rel_mid, std::abs(pseudo))};
}

Outcome optimal_rates()
{
    const auto t0 = std::chrono::steady_clock::now();
    OUParams base;
    base.lambda = 1.0;
    const RateTable t = rate_sweep(base, {50, 100, 200, 400, 800}, 0.05);
    double e3_ratio = 0.0;
    for (const auto& r : t.rows) {
        e3_ratio = std::max(e3_ratio, r.e3 / (1e-3 / std::sqrt(r.T)));
    }
    const bool slopes = std::abs(t.slope_gap + 1.0) <= 0.1 &&
                        std::abs(t.slope_e3_mixed + 0.5) <= 0.1 && e3_ratio <= 1.0;

    const std::vector<double> horizons{5, 20, 80};
    const std::size_t N = 100000;
    int decreasing = 0;
    std::string sw;
    for (int rep = 0; rep < 5; ++rep) {
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(rep);
        const auto ref = sample_gaussian(GaussianTarget::circular(0.5 / base.lambda), N, seed + 77);
        std::vector<double> d;
        for (double T : horizons) {
            OUParams p = base;
            p.T = T;
            const SpacePtr s = make_grid(p, GridSpec::with_spacing(T, 0.05));
            const double scale = normalization_factor(p);
            const OUChaosStats st = ou_structured_stats(p, s, scale);
            SampleBatch b = sample_ou_statistic(p, s, scale, N, seed);
            const double r = std::sqrt(0.5 / base.lambda / st.sigma_sq);
            for (cplx& v : b.values) {
                v *= r;
            }
            d.push_back(sliced_wasserstein_2d(b.values, ref.values, 64, seed));
        }
        decreasing += (d[0] > d[1] && d[1] > d[2]) ? 1 : 0;
        sw += fmt(" [%.4f %.4f %.4f]", d[0], d[1], d[2]);
    }
    const double secs = seconds_since(t0);
    return {slopes && decreasing >= 4 && secs <= 600.0,
            fmt("slope gap %.4f, slope |E F^2 conj F| %.4f, max |E F^3|/(1e-3 T^-1/2) %.2e; "
                "sliced W1 decreasing in %d/5 seeds:%s; %.0fs",
                t.slope_gap, t.slope_e3_mixed, e3_ratio, decreasing, sw.c_str(), secs)};
}

Outcome multivariate()
{
    const auto s4 = Space::unit(4);
    const ChaosVector ex({ChaosVariable::single(elementary(s4, 0, 1)),
                          ChaosVariable::single(elementary(s4, 2, 3))});
    const double bound = be_upper_multivariate(ex).bound;
    const bool example = std::abs(bound - 4.0 * std::sqrt(2.0)) <= 1e-9;

    std::mt19937_64 rng(512);
    const auto s2 = Space::unit(2);
    const ChaosVector inc({ChaosVariable::single(random_kernel(s2, 5, 1, rng)),
                           ChaosVariable::single(random_kernel(s2, 3, 2, rng))});
    bool zeros = true;
    const auto cross = key_estimate_cross_terms(inc);
    for (const auto& c : cross) {
        zeros = zeros && !c.indicator && c.value == 0.0;
    }

    const std::array<std::pair<int, int>, 4> orders{{{1, 0}, {2, 0}, {2, 1}, {3, 0}}};
    std::uniform_int_distribution<int> dim(1, 3), pick(0, 3);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto s = random_space(2, rng, true);
        std::vector<ChaosVariable> comps;
        const int d = dim(rng);
        for (int k = 0; k < d; ++k) {
            const auto [p, q] = orders[static_cast<std::size_t>(pick(rng))];
            comps.push_back(ChaosVariable::single(random_kernel(s, p, q, rng)));
        }
        const ChaosVector F(comps);
        const double m = fourth_excess_moments(F);
        const double e = be_upper_multivariate(F).excess;
        worst = std::max(worst, std::abs(e - m) / std::max(1.0, std::abs(m)));
    }
    return {example && zeros && worst <= 1e-9,
            fmt("d=2 bound %.15g vs 4 sqrt 2; (5,1)/(3,2): %zu cross terms, all zero = %s; "
                "excess identity worst %.2e (tol 1e-9)",
                bound, cross.size(), zeros ? "yes" : "no", worst)};
}

Outcome denominator_identity()
{
    OUParams p;
    p.lambda = 1.0;
    p.T = 5.0;
    const DenominatorReport coarse = verify_denominator_identity(p, 50, 808, 100);
    const DenominatorReport fine = verify_denominator_identity(p, 500, 808, 100);
    auto z = [](const DenominatorReport& r) {
        return std::abs(r.mean_lhs - r.mean_rhs) / std::hypot(r.se_lhs, r.se_rhs);
    };
    const bool pass = fine.mean_residual < coarse.mean_residual && z(coarse) <= 5.0 && z(fine) <= 5.0;
    return {pass, fmt("mean residual %.4f (dt 0.1) -> %.4f (dt 0.01); mean difference %.2f and "
                      "%.2f standard errors (tol 5)",
                      coarse.mean_residual, fine.mean_residual, z(coarse), z(fine))};
}

Outcome fractional_branch()
{
    OUParams p;
    p.lambda = 1.0;
    p.H = 0.7;
    const FractionalSweep s = fbm_gap_sweep(p, {10, 20, 40, 80}, 0.2);
    const double target = 2.0 * (4.0 * p.H - 3.0);
    return {std::abs(s.slope_gap - target) <= 0.15,
            fmt("H=0.7 slope of gap/sigma^4 %.4f vs %.2f +- 0.15", s.slope_gap, target)};
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        bool gating;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, true, oracle_equivalence}, {2, true, contraction_suite},    {3, true, worked_values},
        {4, true, hermite_oracle},     {5, true, ou_closed_form}, {6, true, optimal_rates},
        {7, true, multivariate},       {8, true, denominator_identity},
        {9, false, fractional_branch},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %d: %s%s  %s\n", c.id, o.pass ? "PASS" : "FAIL",
                    c.gating ? "" : " (soft)", o.detail.c_str());
        std::fflush(stdout);
        if (c.gating && !o.pass) {
            ++failed;
        }
    }
    return failed == 0 ? 0 : 1;
}
