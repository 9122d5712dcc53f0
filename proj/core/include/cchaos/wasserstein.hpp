#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace cchaos {

/// Exact W1 between two equal-size empirical measures on the line.
double wasserstein_1d(std::span<const double> x, std::span<const double> y);

/// Mean of wasserstein_1d over K projections of (Re, Im) onto directions
/// drawn uniformly from [0, pi) with the given seed.
double sliced_wasserstein_2d(std::span<const std::complex<double>> x,
                             std::span<const std::complex<double>> y, int K = 64,
                             std::uint64_t seed = 0);

/// Exact W1 on R^2 with Euclidean cost via an optimal assignment
/// (Hungarian algorithm, O(N^3)); limited to N <= 2000.
double wasserstein_2d_exact(std::span<const std::complex<double>> x,
                            std::span<const std::complex<double>> y);

}  // namespace cchaos
