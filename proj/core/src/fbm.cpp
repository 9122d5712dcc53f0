#include "cchaos/fbm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "tensor_index.hpp"

namespace cchaos {

namespace {

using Mat = Eigen::MatrixXcd;
using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXd gram_matrix(const std::vector<double>& g, std::size_t m)
{
    Eigen::MatrixXd G(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            G(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g[a * m + b];
        }
    }
    return G;
}

// <X, Y>_G = tr(G X G Y^*)
cplx gram_inner(const Mat& X, const Mat& Y, const Mat& G)
{
    const Mat GXG = G * X * G;
    return (GXG.cwiseProduct(Y.conjugate())).sum();
}

}  // namespace

std::vector<double> fbm_gram(const OUParams& params, std::size_t m)
{
    params.validate();
    if (m < 1) {
        throw std::invalid_argument("fbm_gram: need at least one cell");
    }
    const double h = params.T / static_cast<double>(m);
    std::vector<double> g(m * m, 0.0);
    if (params.H == 0.5) {
        for (std::size_t a = 0; a < m; ++a) {
            g[a * m + a] = h;
        }
        return g;
    }
    const double e = 2.0 * params.H;
    const double s = 0.5 * std::pow(h, e);
    std::vector<double> band(m);
    for (std::size_t d = 0; d < m; ++d) {
        const double dd = static_cast<double>(d);
        band[d] = s * (std::pow(dd + 1.0, e) + std::pow(std::abs(dd - 1.0), e) -
                       2.0 * std::pow(dd, e));
    }
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            g[a * m + b] = band[a > b ? a - b : b - a];
        }
    }
    return g;
}

cplx fbm_inner(const Kernel& f, const Kernel& g, const std::vector<double>& gram)
{
    if (!same_space(f.space(), g.space()) || f.p() != g.p() || f.q() != g.q()) {
        throw std::invalid_argument("fbm_inner: shape or space mismatch");
    }
    const std::size_t n = f.n();
    if (gram.size() != n * n) {
        throw std::invalid_argument("fbm_inner: Gram size does not match the space");
    }
    // apply G along every slot of f, then the plain sesquilinear pairing
    std::vector<cplx> cur(f.coeffs().begin(), f.coeffs().end());
    const int r = f.rank();
    const auto strides = detail::strides(n, r);
    std::vector<cplx> next(cur.size());
    for (int axis = 0; axis < r; ++axis) {
        const std::size_t st = strides[static_cast<std::size_t>(axis)];
        for (std::size_t idx = 0; idx < cur.size(); ++idx) {
            const std::size_t d = (idx / st) % n;
            const std::size_t base = idx - d * st;
            cplx acc{};
            for (std::size_t k = 0; k < n; ++k) {
                acc += gram[d * n + k] * cur[base + k * st];
            }
            next[idx] = acc;
        }
        std::swap(cur, next);
    }
    cplx s{};
    for (std::size_t k = 0; k < cur.size(); ++k) {
        s += cur[k] * std::conj(g[k]);
    }
    return s;
}

FractionalStats fbm_psi_stats(const OUParams& params, std::size_t m)
{
    const std::vector<double> g = fbm_gram(params, m);
    const Mat G = gram_matrix(g, m).cast<cplx>();
    const double h = params.T / static_cast<double>(m);
    const cplx gb = std::conj(params.gamma());
    const double c = 1.0 / std::sqrt(params.T);
    const auto mi = static_cast<Eigen::Index>(m);
    Mat M = Mat::Zero(mi, mi);
    for (Eigen::Index a = 0; a < mi; ++a) {
        for (Eigen::Index b = 0; b < a; ++b) {
            M(a, b) = c * std::exp(-gb * (static_cast<double>(a - b) * h));
        }
    }
    const Mat Mh = M.adjoint();
    const Mat GM = G * M;
    const Mat X1 = M * GM;
    const Mat X2 = M * G * Mh;
    const Mat X3 = Mh * GM;

    FractionalStats s;
    s.sigma_sq = gram_inner(M, M, G).real();
    s.pseudo = gram_inner(M, Mh, G);
    s.gap = gram_inner(X3, X3, G).real() + gram_inner(X2, X2, G).real() +
            4.0 * gram_inner(X1, X1, G).real();
    s.e3 = 2.0 * gram_inner(X1, Mh, G);
    s.e3_mixed = 2.0 * gram_inner(X1, M, G);
    return s;
}

FractionalSweep fbm_gap_sweep(const OUParams& base, const std::vector<double>& T_list,
                              double spacing)
{
    FractionalSweep sw;
    std::vector<double> gaps;
    for (double T : T_list) {
        OUParams p = base;
        p.T = T;
        const auto m = static_cast<std::size_t>(std::llround(T / spacing));
        sw.T.push_back(T);
        sw.stats.push_back(fbm_psi_stats(p, m));
        const FractionalStats& st = sw.stats.back();
        sw.gap_normalized.push_back(st.gap / (st.sigma_sq * st.sigma_sq));
        gaps.push_back(sw.gap_normalized.back());
    }
    if (sw.T.size() >= 2) {
        sw.slope_gap = loglog_slope(sw.T, gaps);
    }
    return sw;
}

}  // namespace cchaos
