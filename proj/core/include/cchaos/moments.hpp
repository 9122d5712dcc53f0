#pragma once

#include <string_view>
#include <utility>

#include "cchaos/chaos.hpp"

namespace cchaos {

enum class GapRoute { moments, v1, v2 };

GapRoute parse_gap_route(std::string_view name);
std::string_view to_string(GapRoute route);

/// Exact moments of F = I_{p,q}(f).
struct MomentReport {
    int p = 0;
    int q = 0;
    double var_abs = 0.0;     ///< E|F|^2
    cplx pseudo;              ///< E[F^2]
    cplx third;               ///< E[F^3]
    cplx third_mixed;         ///< E[F^2 conj F]
    double gap = 0.0;         ///< moment-engine route
    double gap_v1 = 0.0;      ///< contraction sum with phi_r
    double gap_v2 = 0.0;      ///< contraction sum with psi_r

    /// Largest pairwise route difference relative to max(|gap|, sigma^4).
    double route_disagreement() const;
};

/// E|F|^2 = p! q! ||f||^2.
double variance_closed(const Kernel& f);

/// E[F^2] = 1{p = q} p! q! <f, h>.
cplx pseudo_variance_closed(const Kernel& f);

/// (E[F^3], E[F^2 conj F]) from the contraction sums; both vanish unless p = q.
std::pair<cplx, cplx> third_moments_closed(const Kernel& f);

/// E|F|^4 - 2 (E|F|^2)^2 - |E F^2|^2 through the selected route.
double fourth_gap(const Kernel& f, GapRoute route);

/// Cov(|F1|^2, |F2|^2) from its contraction expansion.
double cov_abs_sq(const Kernel& f1, const Kernel& f2);

/// Same quantity through the moment engine.
double cov_abs_sq_moments(const Kernel& f1, const Kernel& f2);

/// Full report; every moment is evaluated exactly.
MomentReport moment_report(const Kernel& f);

/// sum_{0 < i+j < p+q} ||f (x)_{i,j} h||^2.
double contraction_sum(const Kernel& f);

/// Lower sandwich constant min C(p,i)^2 C(q,j)^2 (p! q!)^2 over 0 < i+j < p+q.
double sandwich_c1(int p, int q);

/// Upper sandwich constant: largest coefficient any ||f (x)_{i,j} h||^2
/// receives once each group of the phi_r expansion is bounded by the
/// Minkowski, power-mean and norm inequalities.
double sandwich_c2(int p, int q);

/// Per-(i, j) coefficients behind sandwich_c2, row-major over (p+1) x (q+1).
std::vector<double> sandwich_c2_table(int p, int q);

/// Exactness settings used whenever the moment engine serves as an oracle.
ProductOptions exact_product_options();

}  // namespace cchaos
