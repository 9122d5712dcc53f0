#include "cchaos/ou.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cchaos/diagnostics.hpp"
#include "cchaos/parallel.hpp"
#include "cchaos/rng.hpp"

namespace cchaos {

void OUParams::validate() const
{
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("OU: lambda must be positive");
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::invalid_argument("OU: T must be positive");
    }
    if (!std::isfinite(omega)) {
        throw std::invalid_argument("OU: omega must be finite");
    }
    if (!(H >= 0.5 && H < 0.75)) {
        throw std::invalid_argument("OU: H must lie in [1/2, 3/4)");
    }
}

GridSpec GridSpec::with_spacing(double T, double spacing, QuadratureRule rule, int gl_nodes)
{
    if (!(spacing > 0.0) || !(T > 0.0)) {
        throw std::invalid_argument("GridSpec: spacing and T must be positive");
    }
    GridSpec g;
    g.rule = rule;
    g.gl_nodes = gl_nodes;
    auto m = static_cast<std::size_t>(std::llround(T / spacing));
    if (rule == QuadratureRule::gauss_legendre) {
        const auto k = static_cast<std::size_t>(gl_nodes);
        m = std::max<std::size_t>(k, (m + k - 1) / k * k);
    }
    g.m = m;
    return g;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (n < 1) {
        throw std::invalid_argument("gauss_legendre: need at least one node");
    }
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = n == 1 ? x : p1;
            const double pm = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pm) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        nodes[lo] = -x;
        nodes[hi] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[lo] = w;
        weights[hi] = w;
    }
}

SpacePtr make_grid(const OUParams& params, const GridSpec& grid)
{
    params.validate();
    if (grid.m < 2) {
        throw std::invalid_argument("make_grid: need at least 2 nodes");
    }
    std::vector<double> t(grid.m), w(grid.m);
    if (grid.rule == QuadratureRule::midpoint) {
        const double h = params.T / static_cast<double>(grid.m);
        for (std::size_t k = 0; k < grid.m; ++k) {
            t[k] = (static_cast<double>(k) + 0.5) * h;
            w[k] = h;
        }
    } else {
        if (grid.gl_nodes < 1 || grid.m % static_cast<std::size_t>(grid.gl_nodes) != 0) {
            throw std::invalid_argument("make_grid: m must be a multiple of the panel size");
        }
        std::vector<double> x, g;
        gauss_legendre(grid.gl_nodes, x, g);
        const std::size_t panels = grid.m / static_cast<std::size_t>(grid.gl_nodes);
        const double h = params.T / static_cast<double>(panels);
        std::size_t k = 0;
        for (std::size_t p = 0; p < panels; ++p) {
            for (int i = 0; i < grid.gl_nodes; ++i, ++k) {
                t[k] = (static_cast<double>(p) + 0.5 * (x[static_cast<std::size_t>(i)] + 1.0)) * h;
                w[k] = 0.5 * h * g[static_cast<std::size_t>(i)];
            }
        }
    }
    return Space::weighted(std::move(w), std::move(t));
}

namespace {

std::span<const double> require_grid(const SpacePtr& space)
{
    if (!space || !space->has_grid()) {
        throw std::invalid_argument("OU kernels need a space with grid nodes");
    }
    return space->grid();
}

}  // namespace

Kernel psi_kernel(const OUParams& params, const SpacePtr& space)
{
    params.validate();
    const auto t = require_grid(space);
    const std::size_t m = t.size();
    const cplx gb = std::conj(params.gamma());
    const double c = 1.0 / std::sqrt(params.T);
    std::vector<cplx> k(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            k[a * m + b] = c * std::exp(-gb * (t[a] - t[b]));
        }
    }
    return Kernel(space, 1, 1, std::move(k), true);
}

Kernel ft_kernel(const OUParams& params, const SpacePtr& space)
{
    params.validate();
    const auto t = require_grid(space);
    const std::size_t m = t.size();
    const cplx g = params.gamma();
    const cplx gb = std::conj(g);
    const double T = params.T;
    std::vector<cplx> k(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            cplx v = -std::exp(-g * (T - t[a]) - gb * (T - t[b]));
            if (b < a) {
                v += std::exp(-gb * (t[a] - t[b]));
            } else if (a < b) {
                v += std::exp(-g * (t[b] - t[a]));
            } else {
                v = 1.0 - std::exp(-2.0 * params.lambda * (T - t[a]));
            }
            k[a * m + b] = v;
        }
    }
    return Kernel(space, 1, 1, std::move(k), true);
}

double ou_variance_factor(double x)
{
    if (!(x > 0.0)) {
        throw std::domain_error("ou_variance_factor: lambda T must be positive");
    }
    if (x < 1e-3) {
        // x - 2x^2/3 + x^3/3 - 2x^4/15 + 2x^5/45
        return x * (1.0 + x * (-2.0 / 3.0 + x * (1.0 / 3.0 + x * (-2.0 / 15.0 + x * 2.0 / 45.0))));
    }
    return 1.0 + std::expm1(-2.0 * x) / (2.0 * x);
}

double ou_variance_closed(const OUParams& params)
{
    params.validate();
    return ou_variance_factor(params.lambda * params.T) / (2.0 * params.lambda);
}

double normalization_factor(const OUParams& params)
{
    params.validate();
    const double g = ou_variance_factor(params.lambda * params.T);
    const double f = 1.0 / std::sqrt(g);
    if (!(g > 0.0) || !std::isfinite(f)) {
        throw std::domain_error("normalization_factor: variance factor is not positive");
    }
    return f;
}

double ou_state_variance(double lambda, double t)
{
    return -std::expm1(-2.0 * lambda * t) / (2.0 * lambda);
}

double ou_mean_occupation(double lambda, double T)
{
    return ou_variance_factor(lambda * T) / (2.0 * lambda);
}

OUChaosStats ou_structured_stats(const OUParams& params, const SpacePtr& space, double scale)
{
    params.validate();
    const auto t = require_grid(space);
    const auto w = space->weights();
    const std::size_t m = t.size();
    const double lam2 = 2.0 * params.lambda;
    const double c = scale / std::sqrt(params.T);

    std::vector<double> decay(m > 0 ? m - 1 : 0);
    for (std::size_t k = 0; k + 1 < m; ++k) {
        decay[k] = std::exp(-lam2 * (t[k + 1] - t[k]));
    }

    // Forward sums over b < a of w_b e^{-2 lambda (t_a - t_b)} S(b,a)^k with
    // S(b,a) the weight strictly between b and a, plus U for ||M W M*||.
    double s_a0 = 0.0, s_a1 = 0.0, s_a2 = 0.0, s_diag2 = 0.0, s_u = 0.0;
    double A0 = 0.0, A1 = 0.0, A2 = 0.0, U = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        s_a0 += w[a] * A0;
        s_a1 += w[a] * A1;
        s_a2 += w[a] * A2;
        s_diag2 += w[a] * w[a] * A0 * A0;
        s_u += w[a] * U;
        if (a + 1 < m) {
            const double e = decay[a];
            const double nA2 = e * (A2 + 2.0 * w[a] * A1 + w[a] * w[a] * A0);
            const double nA1 = e * (A1 + w[a] * A0);
            const double nU = e * (U + w[a] * A0 * A0);
            A0 = e * (A0 + w[a]);
            A1 = nA1;
            A2 = nA2;
            U = nU;
        }
    }
    // Backward sums for ||M* W M||.
    double s_rdiag2 = 0.0, s_v = 0.0;
    double R = 0.0, V = 0.0;
    for (std::size_t a = m; a-- > 0;) {
        s_rdiag2 += w[a] * w[a] * R * R;
        s_v += w[a] * V;
        if (a > 0) {
            const double e = decay[a - 1];
            V = e * (V + w[a] * R * R);
            R = e * (R + w[a]);
        }
    }

    const double c2 = c * c, c3 = c2 * c, c4 = c2 * c2;
    OUChaosStats s;
    s.sigma_sq = c2 * s_a0;
    s.pseudo = 0.0;
    const double x1_sq = c4 * s_a2;
    const double x2_sq = c4 * (s_diag2 + 2.0 * s_u);
    const double x3_sq = c4 * (s_rdiag2 + 2.0 * s_v);
    s.gap = x3_sq + x2_sq + 4.0 * x1_sq;
    s.fmt_10 = std::sqrt(x3_sq);
    s.fmt_01 = std::sqrt(x2_sq);
    s.e3 = 0.0;
    s.e3_mixed = 2.0 * c3 * s_a1;
    return s;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("loglog_slope: need at least two matching points");
    }
    double mx = 0.0, my = 0.0;
    const double n = static_cast<double>(x.size());
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
            throw std::domain_error("loglog_slope: data must be positive");
        }
        lx[k] = std::log(x[k]);
        ly[k] = std::log(y[k]);
        mx += lx[k] / n;
        my += ly[k] / n;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (lx[k] - mx) * (ly[k] - my);
        sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    return sxy / sxx;
}

RateTable rate_sweep(const OUParams& base, const std::vector<double>& T_list, double spacing,
                     QuadratureRule rule, unsigned threads)
{
    if (T_list.empty()) {
        throw std::invalid_argument("rate_sweep: empty T list");
    }
    for (std::size_t k = 1; k < T_list.size(); ++k) {
        if (!(T_list[k] > T_list[k - 1])) {
            throw std::invalid_argument("rate_sweep: T list must be increasing");
        }
    }
    RateTable table;
    table.rows.resize(T_list.size());
    parallel_for(T_list.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            OUParams p = base;
            p.T = T_list[k];
            const GridSpec g = GridSpec::with_spacing(p.T, spacing, rule);
            if (g.m < 2) {
                throw std::invalid_argument("rate_sweep: grid for T = " + std::to_string(p.T) +
                                            " has fewer than 2 nodes");
            }
            const SpacePtr space = make_grid(p, g);
            const OUChaosStats s = ou_structured_stats(p, space, normalization_factor(p));
            RateRow& r = table.rows[k];
            r.T = p.T;
            r.m = g.m;
            r.sigma_sq = s.sigma_sq;
            r.gap = s.gap;
            r.e3_mixed = std::abs(s.e3_mixed);
            r.e3 = std::abs(s.e3);
            r.fmt_10 = s.fmt_10;
            r.fmt_01 = s.fmt_01;
            r.be_upper_circular = be_upper_circular(s.gap, s.sigma_sq, 2);
        }
    });
    if (table.rows.size() >= 2) {
        std::vector<double> T, gap, e21, be;
        for (const auto& r : table.rows) {
            T.push_back(r.T);
            gap.push_back(r.gap);
            e21.push_back(r.e3_mixed);
            be.push_back(r.be_upper_circular);
        }
        table.slope_gap = loglog_slope(T, gap);
        table.slope_e3_mixed = loglog_slope(T, e21);
        table.slope_be = loglog_slope(T, be);
    }
    return table;
}

SampleBatch sample_ou_statistic(const OUParams& params, const SpacePtr& space, double scale,
                                std::size_t N, std::uint64_t seed, unsigned threads)
{
    params.validate();
    if (N == 0) {
        throw std::invalid_argument("sample_ou_statistic: N must be at least 1");
    }
    const auto t = require_grid(space);
    const auto w = space->weights();
    const std::size_t m = t.size();
    const cplx gb = std::conj(params.gamma());
    std::vector<cplx> phase(m > 0 ? m - 1 : 0);
    std::vector<double> rw(m);
    for (std::size_t k = 0; k < m; ++k) {
        rw[k] = std::sqrt(w[k]);
        if (k + 1 < m) {
            phase[k] = std::exp(-gb * (t[k + 1] - t[k]));
        }
    }
    const double c = scale / std::sqrt(params.T);
    SampleBatch out;
    out.values.resize(N);
    out.seed = seed;
    out.meta = std::string(generator_version) + ";ou;m=" + std::to_string(m);
    parallel_for(N, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            CounterStream rng(seed, s);
            cplx Y{}, acc{};
            for (std::size_t a = 0; a < m; ++a) {
                const cplx z = rng.complex_normal();
                acc += rw[a] * z * Y;
                if (a + 1 < m) {
                    Y = phase[a] * (Y + rw[a] * std::conj(z));
                }
            }
            out.values[s] = c * acc;
        }
    });
    return out;
}

}  // namespace cchaos
