#pragma once

#include <vector>

#include "cchaos/chaos.hpp"

namespace cchaos {

/// Second-order structure of a chaos vector; matrices are row-major d x d.
struct CovarianceSummary {
    std::size_t d = 0;
    std::vector<cplx> sigma;        ///< E[F conj(F)']
    std::vector<cplx> pseudo;       ///< E[F F']
    std::vector<double> eigenvalues;  ///< of sigma, ascending
    double lambda_max = 0.0;
    double lambda_min = 0.0;

    cplx sigma_at(std::size_t j, std::size_t r) const { return sigma[j * d + r]; }
};

CovarianceSummary covariance_summary(const ChaosVector& F);

/// One bracketed cross term of the key estimate for the ordered pair (j, r).
///
/// kind 0: (p_j,q_j) succeeds (q_r,p_r), ||f_r||^2 ||f_j (x)_{p_j-q_r, q_j-p_r} h_j||
/// kind 1: (p_j,q_j) succeeds (p_r,q_r), ||f_r||^2 ||f_j (x)_{p_j-p_r, q_j-q_r} h_j||
/// kind 2: (p_r,q_r) succeeds (q_j,p_j), ||f_j||^2 ||f_r (x)_{p_r-q_j, q_r-p_j} h_r||
/// kind 3: (p_r,q_r) succeeds (p_j,q_j), ||f_j||^2 ||f_r (x)_{p_r-p_j, q_r-q_j} h_r||
struct CrossTerm {
    std::size_t j = 0;
    std::size_t r = 0;
    int kind = 0;
    bool indicator = false;
    double value = 0.0;
};

struct MultivariateReport {
    CovarianceSummary cov;
    /// E||F||^4 - E||N||^4 through sum_{j,r} Cov(|F^j|^2,|F^r|^2) - |E F^j conj F^r|^2.
    double excess = 0.0;
    /// 2 sqrt(d lambda_max) / lambda_min * sqrt(excess).
    double bound = 0.0;
    double circularity = 0.0;  ///< max |E F F'| entry
    /// Per component r: sum_{0<i+i'<l_r} ||f_r (x)_{i,i'} h_r||^2.
    std::vector<double> self_terms;
    std::vector<CrossTerm> cross_terms;
    /// Sum of self and cross terms; the estimate holds up to an unspecified constant.
    double key_estimate_rhs = 0.0;
};

/// Multivariate bound. Every component must be a single-order chaos.
/// Throws std::domain_error for a non-circular vector (relative to
/// circ_tol * max_j Sigma_jj) or a singular covariance.
MultivariateReport be_upper_multivariate(const ChaosVector& F, double circ_tol = 1e-8);

/// Key-estimate cross terms alone; needs no covariance.
std::vector<CrossTerm> key_estimate_cross_terms(const ChaosVector& F);

/// E||F||^4 - ||Sigma||_F^2 - (Tr Sigma)^2 evaluated by the moment engine.
double fourth_excess_moments(const ChaosVector& F);

}  // namespace cchaos
