#pragma once

#include <cstdint>
#include <vector>

#include "cchaos/ou.hpp"

namespace cchaos {

/// Path on the uniform grid t_k = k T / m, k = 0..m, started at Z_0 = 0.
struct OUPath {
    double dt = 0.0;
    std::vector<cplx> Z;          ///< m + 1 states
    std::vector<cplx> increments; ///< m Brownian increments of zeta
};

/// Exact discretization: Z_{k+1} = e^{-gamma dt} Z_k + xi_k with xi_k drawn
/// jointly with the driving increment. Path `index` uses stream `index` of
/// `seed`. `noise_scale` multiplies both noise sources (0 gives Z = 0).
/// Requires H = 1/2.
OUPath simulate_path(const OUParams& params, std::size_t m, std::uint64_t seed,
                     std::uint64_t index = 0, double noise_scale = 1.0);

struct DenominatorReport {
    std::size_t m = 0;
    std::size_t n_paths = 0;
    std::vector<double> lhs;       ///< (1/T) int |Z|^2, trapezoid rule
    std::vector<double> rhs;       ///< chaos expansion of the same path
    double mean_residual = 0.0;    ///< mean |lhs - rhs|
    double max_residual = 0.0;
    double mean_lhs = 0.0, se_lhs = 0.0;
    double mean_rhs = 0.0, se_rhs = 0.0;
    double expected = 0.0;         ///< (1/T) int E|Z_t|^2 dt
};

/// Evaluates both sides of
///   (1/T) int |Z|^2 = (1/2l)[(F + conj F)/sqrt(T) - (|Z_T|^2 - E|Z_T|^2)/T] + (1/T) int E|Z|^2
/// on the same increments, with F the off-diagonal double sum of psi_T.
DenominatorReport verify_denominator_identity(const OUParams& params, std::size_t m,
                                              std::uint64_t seed, std::size_t n_paths,
                                              unsigned threads = 0);

}  // namespace cchaos
