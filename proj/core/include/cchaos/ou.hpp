#pragma once

#include <cstdint>
#include <vector>

#include "cchaos/kernel.hpp"
#include "cchaos/sampling.hpp"

namespace cchaos {

/// Complex OU model dZ = -gamma Z dt + d zeta with gamma = lambda - i omega.
struct OUParams {
    double lambda = 1.0;
    double omega = 0.0;
    double T = 10.0;
    double H = 0.5;

    cplx gamma() const { return {lambda, -omega}; }
    double alpha_H() const { return H * (2.0 * H - 1.0); }

    /// Throws std::invalid_argument unless lambda > 0, T > 0, 1/2 <= H < 3/4.
    void validate() const;
};

enum class QuadratureRule { midpoint, gauss_legendre };

struct GridSpec {
    std::size_t m = 2;
    QuadratureRule rule = QuadratureRule::midpoint;
    int gl_nodes = 8;  ///< nodes per panel for gauss_legendre

    /// m = round(T / spacing), rounded up to a whole number of panels.
    static GridSpec with_spacing(double T, double spacing,
                                 QuadratureRule rule = QuadratureRule::midpoint,
                                 int gl_nodes = 8);
};

/// Nodes and weights on [0, T]; throws if m < 2 or m is not a multiple of
/// gl_nodes under the Gauss-Legendre rule.
SpacePtr make_grid(const OUParams& params, const GridSpec& grid);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// psi_T(t, s) = T^{-1/2} exp(-conj(gamma) (t - s)) for s < t (strictly, on
/// node indices), zero otherwise. The space must carry a grid.
Kernel psi_kernel(const OUParams& params, const SpacePtr& space);

/// f_T(t, s) = e^{-conj(gamma)(t-s)} 1{s<t} + e^{-gamma(s-t)} 1{t<s}
///           - e^{-gamma(T-t) - conj(gamma)(T-s)},
/// with the continuous value 1 - e^{-2 lambda (T - t)} on the diagonal.
Kernel ft_kernel(const OUParams& params, const SpacePtr& space);

/// 1 - (1 - e^{-2x}) / (2x) at x = lambda T, evaluated without cancellation.
double ou_variance_factor(double x);

/// E|F_T|^2 = 1/(2 lambda) + e^{-2 lambda T}/(4 lambda^2 T) - 1/(4 lambda^2 T).
double ou_variance_closed(const OUParams& params);

/// (1 + e^{-2 lambda T}/(2 lambda T) - 1/(2 lambda T))^{-1/2}.
double normalization_factor(const OUParams& params);

/// E|Z_t|^2 = (1 - e^{-2 lambda t}) / (2 lambda).
double ou_state_variance(double lambda, double t);

/// (1/T) int_0^T E|Z_t|^2 dt.
double ou_mean_occupation(double lambda, double T);

/// Exact moments of I_{1,1}(scale * psi) from the semiseparable structure of
/// psi, in O(m) time and memory.
struct OUChaosStats {
    double sigma_sq = 0.0;    ///< E|F|^2
    cplx pseudo;              ///< E[F^2]
    double gap = 0.0;         ///< fourth-moment gap
    cplx e3;                  ///< E[F^3]
    cplx e3_mixed;            ///< E[F^2 conj F]
    double fmt_10 = 0.0;      ///< ||f (x)_{1,0} h||
    double fmt_01 = 0.0;      ///< ||f (x)_{0,1} h||
};

/// `scale` multiplies the kernel psi_T (already carrying T^{-1/2}).
OUChaosStats ou_structured_stats(const OUParams& params, const SpacePtr& space,
                                 double scale = 1.0);

struct RateRow {
    double T = 0.0;
    std::size_t m = 0;
    double sigma_sq = 0.0;
    double gap = 0.0;
    double e3_mixed = 0.0;
    double e3 = 0.0;
    double fmt_10 = 0.0;
    double fmt_01 = 0.0;
    double be_upper_circular = 0.0;
};

struct RateTable {
    std::vector<RateRow> rows;
    double slope_gap = 0.0;
    double slope_e3_mixed = 0.0;
    double slope_be = 0.0;
};

/// Least-squares slope of log y against log x; throws on nonpositive data.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Sweep of the normalized statistic over an increasing T list at fixed
/// node spacing, in exact arithmetic up to quadrature.
RateTable rate_sweep(const OUParams& base, const std::vector<double>& T_list, double spacing,
                     QuadratureRule rule = QuadratureRule::midpoint, unsigned threads = 0);

/// Draws of I_{1,1}(scale * psi_T) in O(m) per sample. Coordinates are
/// consumed exactly as sample_chaos does on the same space, so both agree
/// draw for draw.
SampleBatch sample_ou_statistic(const OUParams& params, const SpacePtr& space, double scale,
                                std::size_t N, std::uint64_t seed, unsigned threads = 0);

}  // namespace cchaos
