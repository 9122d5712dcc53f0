#include "cchaos/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cchaos/combinatorics.hpp"
#include "cchaos/moments.hpp"

namespace cchaos {

namespace {

double binomial_prefactor(int l)
{
    return std::sqrt(static_cast<double>(central_binomial_sum(l)));
}

double checked_gap(double gap, double scale)
{
    if (gap < 0.0) {
        if (gap < -1e-9 * std::max(scale, 1.0)) {
            throw std::domain_error("fourth-moment gap is negative: " + std::to_string(gap));
        }
        return 0.0;
    }
    return gap;
}

}  // namespace

BoundInputs BoundInputs::from_moments(double sigma_sq, cplx pseudo, int l)
{
    BoundInputs in;
    in.sigma_sq = sigma_sq;
    in.a = pseudo.real();
    in.b = pseudo.imag();
    in.l = l;
    const double r = std::hypot(in.a, in.b);
    in.lambda1 = 0.5 * (sigma_sq + r);
    in.lambda2 = 0.5 * (sigma_sq - r);
    return in;
}

BoundInputs BoundInputs::from_kernel(const Kernel& f)
{
    return from_moments(variance_closed(f), pseudo_variance_closed(f), f.rank());
}

std::vector<ContractionNorm> fmt_norms(const Kernel& f_in)
{
    const Kernel f = f_in.symmetric() ? f_in : symmetrize(f_in);
    const Kernel h = reverse_conjugate(f);
    std::vector<ContractionNorm> out;
    for (int i = 0; i <= f.p(); ++i) {
        for (int j = 0; j <= f.q(); ++j) {
            if (i + j > 0 && i + j < f.rank()) {
                out.push_back({i, j, norm(contract(f, h, i, j))});
            }
        }
    }
    return out;
}

double be_upper(double gap, const BoundInputs& in)
{
    if (!(in.lambda2 > 0.0)) {
        throw std::domain_error("be_upper: covariance of (Re F, Im F) is singular");
    }
    const double g = checked_gap(gap, in.sigma_sq * in.sigma_sq);
    return 4.0 * std::sqrt(2.0) * binomial_prefactor(in.l) * std::sqrt(in.lambda1) /
           in.lambda2 * std::sqrt(g);
}

double be_upper(const Kernel& f, const BoundInputs& in)
{
    return be_upper(fourth_gap(f, GapRoute::v1), in);
}

double be_upper_circular(double gap, double sigma_sq, int l)
{
    if (!(sigma_sq > 0.0)) {
        throw std::domain_error("be_upper_circular: variance must be positive");
    }
    const double g = checked_gap(gap, sigma_sq * sigma_sq);
    return 8.0 / std::sqrt(sigma_sq) * binomial_prefactor(l) * std::sqrt(g);
}

double be_upper_circular(const Kernel& f, double sigma_sq, double circ_tol)
{
    const cplx pseudo = pseudo_variance_closed(f);
    if (std::abs(pseudo) > circ_tol * sigma_sq) {
        throw std::domain_error("be_upper_circular: |E F^2| = " +
                                std::to_string(std::abs(pseudo)) +
                                " exceeds the circularity tolerance");
    }
    return be_upper_circular(fourth_gap(f, GapRoute::v1), sigma_sq, f.rank());
}

LowerTerms be_lower_terms(const Kernel& f)
{
    const auto [e3, e21] = third_moments_closed(f);
    return {std::abs(e3), std::abs(e21), contraction_sum(f)};
}

Precedence partial_order(int p1, int q1, int p2, int q2)
{
    if (p1 < 0 || q1 < 0 || p2 < 0 || q2 < 0) {
        throw std::invalid_argument("partial_order: negative index");
    }
    if (p1 == p2 && q1 == q2) {
        return Precedence::equal;
    }
    if (p1 >= p2 && q1 >= q2) {
        return Precedence::succeeds;
    }
    if (p1 <= p2 && q1 <= q2) {
        return Precedence::precedes;
    }
    return Precedence::incomparable;
}

bool succeeds(int p1, int q1, int p2, int q2)
{
    return partial_order(p1, q1, p2, q2) == Precedence::succeeds;
}

const char* to_string(Precedence p)
{
    switch (p) {
    case Precedence::succeeds: return "succeeds";
    case Precedence::precedes: return "precedes";
    case Precedence::equal: return "equal";
    case Precedence::incomparable: return "incomparable";
    }
    return "?";
}

CircularityReport circularity_check(const ChaosVector& F, double tol)
{
    CircularityReport r;
    r.d = F.dim();
    r.tol = tol;
    r.pseudo.resize(r.d * r.d);
    for (std::size_t j = 0; j < r.d; ++j) {
        for (std::size_t k = j; k < r.d; ++k) {
            const cplx v = expect_product(F[j], F[k]);
            r.pseudo[j * r.d + k] = v;
            r.pseudo[k * r.d + j] = v;
            r.max_abs = std::max(r.max_abs, std::abs(v));
        }
    }
    r.pass = r.max_abs <= tol;
    return r;
}

CltReport clt_conditions(const ChaosVariable& F, int M)
{
    if (M < 0) {
        throw std::invalid_argument("clt_conditions: truncation must be nonnegative");
    }
    CltReport r;
    r.truncation = M;
    for (const auto& [o, f] : F.terms()) {
        CltReport::Term t;
        t.p = o.first;
        t.q = o.second;
        t.sigma_sq = variance_closed(f);
        t.contractions = fmt_norms(f);
        r.sigma_sq_total += t.sigma_sq;
        if (o.first + o.second > M) {
            r.tail += t.sigma_sq;
        }
        r.terms.push_back(std::move(t));
    }
    return r;
}

}  // namespace cchaos
