#include "cchaos/ou_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cchaos/parallel.hpp"
#include "cchaos/rng.hpp"

namespace cchaos {

namespace {

cplx expm1_c(cplx z)
{
    const double s = std::sin(0.5 * z.imag());
    return {std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * s * s,
            std::exp(z.real()) * std::sin(z.imag())};
}

}  // namespace

OUPath simulate_path(const OUParams& params, std::size_t m, std::uint64_t seed,
                     std::uint64_t index, double noise_scale)
{
    params.validate();
    if (params.H != 0.5) {
        throw std::invalid_argument("simulate_path: only H = 1/2 is supported");
    }
    if (m < 1) {
        throw std::invalid_argument("simulate_path: need at least one step");
    }
    const double dt = params.T / static_cast<double>(m);
    const cplx g = params.gamma();
    const cplx step = std::exp(-g * dt);
    const double var_xi = -std::expm1(-2.0 * params.lambda * dt) / (2.0 * params.lambda);
    // E[xi conj(d zeta)] = (1 - e^{-gamma dt}) / gamma
    const cplx kappa = -expm1_c(-g * dt) / g;
    const cplx beta = kappa / dt;
    const double resid = std::sqrt(std::max(0.0, var_xi - std::norm(kappa) / dt));
    const double sdt = std::sqrt(dt);

    OUPath path;
    path.dt = dt;
    path.Z.assign(m + 1, cplx{});
    path.increments.resize(m);
    CounterStream rng(seed, index);
    for (std::size_t k = 0; k < m; ++k) {
        const cplx dz = noise_scale * sdt * rng.complex_normal();
        const cplx n2 = noise_scale * rng.complex_normal();
        path.increments[k] = dz;
        path.Z[k + 1] = step * path.Z[k] + beta * dz + resid * n2;
    }
    return path;
}

DenominatorReport verify_denominator_identity(const OUParams& params, std::size_t m,
                                              std::uint64_t seed, std::size_t n_paths,
                                              unsigned threads)
{
    if (n_paths < 2) {
        throw std::invalid_argument("verify_denominator_identity: need at least 2 paths");
    }
    params.validate();
    DenominatorReport rep;
    rep.m = m;
    rep.n_paths = n_paths;
    rep.lhs.resize(n_paths);
    rep.rhs.resize(n_paths);
    const double T = params.T, lam = params.lambda;
    const double ez_T = ou_state_variance(lam, T);
    rep.expected = ou_mean_occupation(lam, T);

    parallel_for(n_paths, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const OUPath path = simulate_path(params, m, seed, p);
            const cplx step = std::exp(-params.gamma() * path.dt);
            double occ = 0.5 * (std::norm(path.Z.front()) + std::norm(path.Z.back()));
            for (std::size_t k = 1; k < m; ++k) {
                occ += std::norm(path.Z[k]);
            }
            occ *= path.dt / T;
            // sqrt(T) F_T = sum_k conj(Y_k) dz_k with Y_k = sum_{j<k} e^{-gamma (t_k - t_j)} dz_j
            cplx Y{}, F{};
            for (std::size_t k = 0; k < m; ++k) {
                F += std::conj(Y) * path.increments[k];
                Y = step * (Y + path.increments[k]);
            }
            F /= std::sqrt(T);
            const double chaos = (2.0 * F.real()) / std::sqrt(T) -
                                 (std::norm(path.Z.back()) - ez_T) / T;
            rep.lhs[p] = occ;
            rep.rhs[p] = chaos / (2.0 * lam) + rep.expected;
        }
    });

    const double n = static_cast<double>(n_paths);
    double sl = 0.0, sr = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) {
        const double r = std::abs(rep.lhs[p] - rep.rhs[p]);
        rep.mean_residual += r / n;
        rep.max_residual = std::max(rep.max_residual, r);
        sl += rep.lhs[p];
        sr += rep.rhs[p];
    }
    rep.mean_lhs = sl / n;
    rep.mean_rhs = sr / n;
    double vl = 0.0, vr = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) {
        vl += (rep.lhs[p] - rep.mean_lhs) * (rep.lhs[p] - rep.mean_lhs);
        vr += (rep.rhs[p] - rep.mean_rhs) * (rep.rhs[p] - rep.mean_rhs);
    }
    rep.se_lhs = std::sqrt(vl / (n - 1.0) / n);
    rep.se_rhs = std::sqrt(vr / (n - 1.0) / n);
    return rep;
}

}  // namespace cchaos
