#include "cchaos/kernel.hpp"

#include <Eigen/Core>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tensor_index.hpp"

namespace cchaos {

namespace {

void require_same_space(const Kernel& f, const Kernel& g, const char* what)
{
    if (!same_space(f.space(), g.space())) {
        throw std::invalid_argument(std::string(what) + ": kernels live on different spaces");
    }
}

// Per-entry weight products for contracted multi-indices of length r.
std::vector<double> kron_weights(const Space& space, int r)
{
    std::vector<double> w{1.0};
    const std::size_t n = space.n();
    for (int k = 0; k < r; ++k) {
        std::vector<double> next(w.size() * n);
        for (std::size_t a = 0; a < w.size(); ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                next[a * n + b] = w[a] * space.weight(b);
            }
        }
        w = std::move(next);
    }
    return w;
}

}  // namespace

Kernel::Kernel(SpacePtr space, int p, int q)
    : space_(std::move(space)), p_(p), q_(q)
{
    if (!space_) {
        throw std::invalid_argument("Kernel: null space");
    }
    if (p < 0 || q < 0) {
        throw std::invalid_argument("Kernel: negative block size");
    }
    coeffs_.assign(detail::ipow(space_->n(), p + q), cplx{});
    symmetric_ = true;
}

Kernel::Kernel(SpacePtr space, int p, int q, std::vector<cplx> coeffs,
               bool symmetric)
    : space_(std::move(space)), p_(p), q_(q), coeffs_(std::move(coeffs)),
      symmetric_(symmetric)
{
    if (!space_) {
        throw std::invalid_argument("Kernel: null space");
    }
    if (p < 0 || q < 0) {
        throw std::invalid_argument("Kernel: negative block size");
    }
    const std::size_t expected = detail::ipow(space_->n(), p + q);
    if (coeffs_.size() != expected) {
        throw std::invalid_argument("Kernel: expected " + std::to_string(expected) +
                                    " coefficients, got " +
                                    std::to_string(coeffs_.size()));
    }
    if ((p <= 1 && q <= 1)) {
        symmetric_ = true;
    }
}

Kernel Kernel::scalar(SpacePtr space, cplx value)
{
    return Kernel(std::move(space), 0, 0, std::vector<cplx>{value}, true);
}

Kernel Kernel::basis(SpacePtr space, std::span<const std::size_t> hol,
                     std::span<const std::size_t> anti)
{
    Kernel k(std::move(space), static_cast<int>(hol.size()),
             static_cast<int>(anti.size()));
    std::vector<std::size_t> idx(hol.begin(), hol.end());
    idx.insert(idx.end(), anti.begin(), anti.end());
    k.coeffs_[k.offset(idx)] = 1.0;
    k.symmetric_ = k.p_ <= 1 && k.q_ <= 1;
    if (!k.symmetric_) {
        k.symmetric_ = k.check_symmetric();
    }
    return k;
}

std::size_t Kernel::offset(std::span<const std::size_t> index) const
{
    if (static_cast<int>(index.size()) != rank()) {
        throw std::invalid_argument("Kernel::offset: index rank mismatch");
    }
    std::size_t off = 0;
    for (std::size_t d : index) {
        if (d >= n()) {
            throw std::out_of_range("Kernel::offset: index out of range");
        }
        off = off * n() + d;
    }
    return off;
}

cplx Kernel::at(std::span<const std::size_t> index) const
{
    return coeffs_[offset(index)];
}

double Kernel::weight_at(std::size_t flat) const
{
    if (space_->unit_weights()) {
        return 1.0;
    }
    double w = 1.0;
    for (int k = 0; k < rank(); ++k) {
        w *= space_->weight(flat % n());
        flat /= n();
    }
    return w;
}

bool Kernel::check_symmetric(double tol) const
{
    const std::size_t nn = n();
    const int r = rank();
    const auto strides = detail::strides(nn, r);
    for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
        for (int s = 0; s + 1 < r; ++s) {
            // adjacent transpositions inside one block generate its symmetric group
            if (s + 1 == p_) {
                continue;
            }
            const std::size_t j = detail::swap_digits(idx, nn, strides[s], strides[s + 1]);
            if (std::abs(coeffs_[idx] - coeffs_[j]) > tol) {
                return false;
            }
        }
    }
    return true;
}

Kernel& Kernel::operator+=(const Kernel& other)
{
    if (!same_space(space_, other.space_) || p_ != other.p_ || q_ != other.q_) {
        throw std::invalid_argument("Kernel::operator+=: shape or space mismatch");
    }
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        coeffs_[k] += other.coeffs_[k];
    }
    symmetric_ = symmetric_ && other.symmetric_;
    return *this;
}

Kernel& Kernel::operator*=(cplx s)
{
    for (auto& c : coeffs_) {
        c *= s;
    }
    return *this;
}

Kernel operator+(Kernel a, const Kernel& b)
{
    a += b;
    return a;
}

Kernel operator*(cplx s, Kernel a)
{
    a *= s;
    return a;
}

cplx inner_product(const Kernel& f, const Kernel& g)
{
    require_same_space(f, g, "inner_product");
    if (f.p() != g.p() || f.q() != g.q()) {
        throw std::invalid_argument("inner_product: block shapes differ");
    }
    const auto fc = f.coeffs();
    const auto gc = g.coeffs();
    const Space& sp = *f.space();
    if (sp.unit_weights() || f.rank() == 0) {
        cplx s{};
        for (std::size_t k = 0; k < fc.size(); ++k) {
            s += fc[k] * std::conj(gc[k]);
        }
        return s;
    }
    // Outer slots via odometer, innermost slot inline.
    const std::size_t nn = sp.n();
    const std::size_t outer = fc.size() / nn;
    std::vector<std::size_t> digits(static_cast<std::size_t>(f.rank() - 1), 0);
    cplx total{};
    for (std::size_t o = 0; o < outer; ++o) {
        double wo = 1.0;
        for (std::size_t d : digits) {
            wo *= sp.weight(d);
        }
        cplx row{};
        const std::size_t base = o * nn;
        for (std::size_t k = 0; k < nn; ++k) {
            row += fc[base + k] * std::conj(gc[base + k]) * sp.weight(k);
        }
        total += wo * row;
        for (std::size_t d = digits.size(); d-- > 0;) {
            if (++digits[d] < nn) {
                break;
            }
            digits[d] = 0;
        }
    }
    return total;
}

double norm_sq(const Kernel& f)
{
    return inner_product(f, f).real();
}

double norm(const Kernel& f)
{
    return std::sqrt(std::max(0.0, norm_sq(f)));
}

Kernel symmetrize(const Kernel& f)
{
    if (f.symmetric()) {
        return f;
    }
    const std::size_t nn = f.n();
    const auto strides = detail::strides(nn, f.rank());
    std::vector<cplx> cur(f.coeffs().begin(), f.coeffs().end());
    std::vector<cplx> next(cur.size());

    auto sym_block = [&](int start, int k) {
        // S_s = (1/s) sum_t swap(t, s-1) o S_{s-1}
        for (int s = 2; s <= k; ++s) {
            const std::size_t last = strides[static_cast<std::size_t>(start + s - 1)];
            const double inv = 1.0 / s;
            for (std::size_t idx = 0; idx < cur.size(); ++idx) {
                cplx acc = cur[idx];
                for (int t = 0; t + 1 < s; ++t) {
                    acc += cur[detail::swap_digits(
                        idx, nn, strides[static_cast<std::size_t>(start + t)], last)];
                }
                next[idx] = acc * inv;
            }
            std::swap(cur, next);
        }
    };
    sym_block(0, f.p());
    sym_block(f.p(), f.q());
    return Kernel(f.space(), f.p(), f.q(), std::move(cur), true);
}

Kernel reverse_conjugate(const Kernel& f)
{
    std::vector<int> perm;
    perm.reserve(static_cast<std::size_t>(f.rank()));
    for (int k = 0; k < f.q(); ++k) {
        perm.push_back(f.p() + k);
    }
    for (int k = 0; k < f.p(); ++k) {
        perm.push_back(k);
    }
    std::vector<cplx> out = detail::permute_axes(f.coeffs(), f.n(), perm);
    for (auto& c : out) {
        c = std::conj(c);
    }
    return Kernel(f.space(), f.q(), f.p(), std::move(out), f.symmetric());
}

Kernel contract(const Kernel& f, const Kernel& g, int i, int j)
{
    require_same_space(f, g, "contract");
    const int a = f.p(), b = f.q(), c = g.p(), d = g.q();
    if (i < 0 || j < 0 || i > std::min(a, d) || j > std::min(b, c)) {
        throw std::invalid_argument("contract: (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") outside valid range for (" +
                                    std::to_string(a) + "," + std::to_string(b) + ") x (" +
                                    std::to_string(c) + "," + std::to_string(d) + ")");
    }
    const std::size_t nn = f.n();

    // f axes reordered as [free hol, free anti | u (last i hol), v (last j anti)]
    std::vector<int> fperm;
    for (int k = 0; k < a - i; ++k) fperm.push_back(k);
    for (int k = 0; k < b - j; ++k) fperm.push_back(a + k);
    for (int k = 0; k < i; ++k) fperm.push_back(a - i + k);
    for (int k = 0; k < j; ++k) fperm.push_back(a + b - j + k);

    // g axes reordered as [free hol, free anti | u (last i anti), v (last j hol)]
    std::vector<int> gperm;
    for (int k = 0; k < c - j; ++k) gperm.push_back(k);
    for (int k = 0; k < d - i; ++k) gperm.push_back(c + k);
    for (int k = 0; k < i; ++k) gperm.push_back(c + d - i + k);
    for (int k = 0; k < j; ++k) gperm.push_back(c - j + k);

    const std::vector<cplx> fm = detail::permute_axes(f.coeffs(), nn, fperm);
    const std::vector<cplx> gm = detail::permute_axes(g.coeffs(), nn, gperm);

    const std::size_t contracted = detail::ipow(nn, i + j);
    const std::size_t frows = fm.size() / contracted;
    const std::size_t grows = gm.size() / contracted;

    using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> F(fm.data(), static_cast<Eigen::Index>(frows),
                               static_cast<Eigen::Index>(contracted));
    Eigen::Map<const RowMat> G(gm.data(), static_cast<Eigen::Index>(grows),
                               static_cast<Eigen::Index>(contracted));

    std::vector<cplx> r(frows * grows);
    Eigen::Map<RowMat> R(r.data(), static_cast<Eigen::Index>(frows),
                         static_cast<Eigen::Index>(grows));
    if (i + j == 0) {
        R.noalias() = F * G.transpose();
    } else if (f.space()->unit_weights()) {
        R.noalias() = F * G.transpose();
    } else {
        const std::vector<double> w = kron_weights(*f.space(), i + j);
        Eigen::Map<const Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
        RowMat Fw = F * wv.cast<cplx>().asDiagonal();
        R.noalias() = Fw * G.transpose();
    }

    // R axes: [f hol free, f anti free, g hol free, g anti free]
    const int fh = a - i, fa = b - j, gh = c - j, ga = d - i;
    std::vector<int> operm;
    for (int k = 0; k < fh; ++k) operm.push_back(k);
    for (int k = 0; k < gh; ++k) operm.push_back(fh + fa + k);
    for (int k = 0; k < fa; ++k) operm.push_back(fh + k);
    for (int k = 0; k < ga; ++k) operm.push_back(fh + fa + gh + k);
    std::vector<cplx> out = detail::permute_axes(r, nn, operm);

    return Kernel(f.space(), fh + gh, fa + ga, std::move(out), false);
}

Kernel sym_contract(const Kernel& f, const Kernel& g, int i, int j)
{
    return symmetrize(contract(f, g, i, j));
}

Kernel tensor_product(const Kernel& f, const Kernel& g)
{
    return contract(f, g, 0, 0);
}

}  // namespace cchaos
