#include "cchaos/multivariate.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "cchaos/diagnostics.hpp"
#include "cchaos/moments.hpp"

namespace cchaos {

namespace {

const Kernel& only_kernel(const ChaosVariable& F, const char* what)
{
    if (!F.is_single_order()) {
        throw std::invalid_argument(std::string(what) +
                                    ": every component must be a single-order chaos");
    }
    return F.terms().begin()->second;
}

}  // namespace

CovarianceSummary covariance_summary(const ChaosVector& F)
{
    CovarianceSummary s;
    s.d = F.dim();
    s.sigma.resize(s.d * s.d);
    s.pseudo.resize(s.d * s.d);
    Eigen::MatrixXcd S(static_cast<Eigen::Index>(s.d), static_cast<Eigen::Index>(s.d));
    for (std::size_t j = 0; j < s.d; ++j) {
        for (std::size_t r = 0; r < s.d; ++r) {
            s.sigma[j * s.d + r] = expect_product_conj(F[j], F[r]);
            s.pseudo[j * s.d + r] = expect_product(F[j], F[r]);
            S(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(r)) = s.sigma[j * s.d + r];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    s.lambda_min = s.eigenvalues.front();
    s.lambda_max = s.eigenvalues.back();
    return s;
}

std::vector<CrossTerm> key_estimate_cross_terms(const ChaosVector& F)
{
    std::vector<const Kernel*> f;
    std::vector<Kernel> h;
    for (const auto& c : F.components()) {
        f.push_back(&only_kernel(c, "key_estimate_cross_terms"));
        h.push_back(reverse_conjugate(*f.back()));
    }
    std::vector<CrossTerm> out;
    const std::size_t d = F.dim();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t j = 0; j < d; ++j) {
            if (j == r) {
                continue;
            }
            const int pj = f[j]->p(), qj = f[j]->q(), pr = f[r]->p(), qr = f[r]->q();
            auto term = [&](int kind, bool ind, std::size_t a, std::size_t b, int i1, int i2) {
                CrossTerm t{j, r, kind, ind, 0.0};
                if (ind) {
                    t.value = norm_sq(*f[b]) * norm(contract(*f[a], h[a], i1, i2));
                }
                out.push_back(t);
            };
            term(0, succeeds(pj, qj, qr, pr), j, r, pj - qr, qj - pr);
            term(1, succeeds(pj, qj, pr, qr), j, r, pj - pr, qj - qr);
            term(2, succeeds(pr, qr, qj, pj), r, j, pr - qj, qr - pj);
            term(3, succeeds(pr, qr, pj, qj), r, j, pr - pj, qr - qj);
        }
    }
    return out;
}

MultivariateReport be_upper_multivariate(const ChaosVector& F, double circ_tol)
{
    MultivariateReport rep;
    for (const auto& c : F.components()) {
        only_kernel(c, "be_upper_multivariate");
    }
    rep.cov = covariance_summary(F);
    const std::size_t d = rep.cov.d;

    double max_diag = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        max_diag = std::max(max_diag, rep.cov.sigma_at(j, j).real());
    }
    for (const cplx& v : rep.cov.pseudo) {
        rep.circularity = std::max(rep.circularity, std::abs(v));
    }
    if (rep.circularity > circ_tol * max_diag) {
        throw std::domain_error("be_upper_multivariate: pseudo-covariance does not vanish");
    }
    if (!(rep.cov.lambda_min > 1e-12 * std::max(rep.cov.lambda_max, 1e-300))) {
        throw std::domain_error("be_upper_multivariate: covariance matrix is singular");
    }

    for (std::size_t j = 0; j < d; ++j) {
        const Kernel& fj = F[j].terms().begin()->second;
        for (std::size_t r = 0; r < d; ++r) {
            const Kernel& fr = F[r].terms().begin()->second;
            rep.excess += cov_abs_sq(fj, fr) - std::norm(rep.cov.sigma_at(j, r));
        }
    }
    const double excess = rep.excess < 0.0 && rep.excess > -1e-9 * max_diag * max_diag
                              ? 0.0
                              : rep.excess;
    if (excess < 0.0) {
        throw std::domain_error("be_upper_multivariate: negative fourth-moment excess");
    }
    rep.bound = 2.0 * std::sqrt(static_cast<double>(d) * rep.cov.lambda_max) /
                rep.cov.lambda_min * std::sqrt(excess);

    for (const auto& c : F.components()) {
        rep.self_terms.push_back(contraction_sum(c.terms().begin()->second));
        rep.key_estimate_rhs += rep.self_terms.back();
    }
    rep.cross_terms = key_estimate_cross_terms(F);
    for (const auto& t : rep.cross_terms) {
        rep.key_estimate_rhs += t.value;
    }
    return rep;
}

double fourth_excess_moments(const ChaosVector& F)
{
    const ProductOptions opts = exact_product_options();
    std::vector<ChaosVariable> abs_sq;
    for (const auto& c : F.components()) {
        abs_sq.push_back(multiply(c, conjugate(c), opts));
    }
    const std::size_t d = F.dim();
    double fourth = 0.0, frob = 0.0, trace = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        trace += expectation(abs_sq[j]).real();
        for (std::size_t r = 0; r < d; ++r) {
            fourth += expect_product(abs_sq[j], abs_sq[r]).real();
            frob += std::norm(expect_product_conj(F[j], F[r]));
        }
    }
    return fourth - frob - trace * trace;
}

}  // namespace cchaos
