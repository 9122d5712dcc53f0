#pragma once

#include <vector>

#include "cchaos/chaos.hpp"

namespace cchaos {

/// Second-order inputs of the univariate bound. The covariance of
/// (Re F, Im F) is C = 1/2 [[s + a, b], [b, s - a]] with eigenvalues
/// lambda1 >= lambda2.
struct BoundInputs {
    double sigma_sq = 0.0;
    double a = 0.0;
    double b = 0.0;
    int l = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    static BoundInputs from_moments(double sigma_sq, cplx pseudo, int l);
    static BoundInputs from_kernel(const Kernel& f);
};

struct ContractionNorm {
    int i = 0;
    int j = 0;
    double norm = 0.0;
};

/// ||f (x)_{i,j} h|| for every 0 < i+j < p+q, in lexicographic (i, j) order.
std::vector<ContractionNorm> fmt_norms(const Kernel& f);

/// 4 sqrt(2) sqrt(sum_{r<l} C(2r,r)) sqrt(lambda1) / lambda2 * sqrt(gap).
/// Throws std::domain_error if lambda2 <= 0 or gap < 0 beyond roundoff.
double be_upper(double gap, const BoundInputs& in);
double be_upper(const Kernel& f, const BoundInputs& in);

/// (8 / sigma) sqrt(sum_{r<l} C(2r,r)) sqrt(E|F|^4 - 2 (E|F|^2)^2).
/// Throws std::domain_error when |E F^2| > circ_tol * sigma^2.
double be_upper_circular(const Kernel& f, double sigma_sq, double circ_tol = 1e-8);
double be_upper_circular(double gap, double sigma_sq, int l);

/// Raw magnitudes of the lower bound, which holds only up to an
/// unspecified constant: |E F^3|, |E F^2 conj F| and the contraction sum.
struct LowerTerms {
    double e3 = 0.0;
    double e21 = 0.0;
    double contraction_sum = 0.0;
};
LowerTerms be_lower_terms(const Kernel& f);

enum class Precedence { succeeds, precedes, equal, incomparable };

/// (p1,q1) succeeds (p2,q2) iff the pairs differ and p1 >= p2, q1 >= q2.
Precedence partial_order(int p1, int q1, int p2, int q2);
bool succeeds(int p1, int q1, int p2, int q2);
const char* to_string(Precedence p);

/// Pseudo-covariance test E[F F'] ~ 0. Vanishing pseudo-covariance is a
/// necessary condition for circular symmetry, not a sufficient one.
struct CircularityReport {
    std::size_t d = 0;
    std::vector<cplx> pseudo;  ///< row-major d x d
    double max_abs = 0.0;
    double tol = 0.0;
    bool pass = false;
};
CircularityReport circularity_check(const ChaosVector& F, double tol);

/// Finite-n values of the chaotic CLT conditions.
struct CltReport {
    struct Term {
        int p = 0;
        int q = 0;
        double sigma_sq = 0.0;                   ///< p! q! ||f||^2
        std::vector<ContractionNorm> contractions;
    };
    std::vector<Term> terms;
    double sigma_sq_total = 0.0;
    int truncation = 0;
    double tail = 0.0;  ///< sum over p + q > truncation of p! q! ||f||^2
};
CltReport clt_conditions(const ChaosVariable& F, int M);

}  // namespace cchaos
