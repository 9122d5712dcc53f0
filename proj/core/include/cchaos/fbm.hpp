#pragma once

#include <vector>

#include "cchaos/kernel.hpp"
#include "cchaos/ou.hpp"

namespace cchaos {

/// Cell-exact Gram matrix of fractional Brownian increments over m equal
/// cells of [0, T]:
///   G_ab = alpha_H int_a int_b |u - v|^{2H-2} du dv
///        = (|a1-b0|^{2H} + |a0-b1|^{2H} - |a1-b1|^{2H} - |a0-b0|^{2H}) / 2.
/// At H = 1/2 the diagonal matrix of cell lengths is returned directly.
/// Row-major m x m.
std::vector<double> fbm_gram(const OUParams& params, std::size_t m);

/// Slotwise Gram inner product of two piecewise-constant kernels whose
/// space has n = sqrt(gram.size()) cells.
cplx fbm_inner(const Kernel& f, const Kernel& g, const std::vector<double>& gram);

/// Moments of I_{1,1}(psi_T) under the fractional inner product, with psi_T
/// sampled at cell midpoints and strictly lower triangular in cell index.
struct FractionalStats {
    double sigma_sq = 0.0;
    cplx pseudo;
    double gap = 0.0;
    cplx e3;
    cplx e3_mixed;
};
FractionalStats fbm_psi_stats(const OUParams& params, std::size_t m);

/// slope_gap regresses gap / sigma^4, the gap of F / sigma.
struct FractionalSweep {
    std::vector<double> T;
    std::vector<FractionalStats> stats;
    std::vector<double> gap_normalized;
    double slope_gap = 0.0;
};
FractionalSweep fbm_gap_sweep(const OUParams& base, const std::vector<double>& T_list,
                              double spacing);

}  // namespace cchaos
