#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cchaos/space.hpp"

namespace cchaos {

using cplx = std::complex<double>;

/// Dense element of H^{(x)p} (x) H^{(x)q}.
///
/// Coefficients are stored row-major over p + q slots: the first p slots are
/// holomorphic, the last q antiholomorphic. Entry values are coordinates
/// against the (non-normalized) basis of the owning Space, so the ambient
/// inner product carries one weight factor per slot.
class Kernel {
  public:
    Kernel() = default;

    /// Zero kernel of shape (p, q).
    Kernel(SpacePtr space, int p, int q);

    /// Takes ownership of row-major coefficients; `symmetric` is trusted.
    Kernel(SpacePtr space, int p, int q, std::vector<cplx> coeffs,
           bool symmetric = false);

    /// Scalar kernel (p = q = 0).
    static Kernel scalar(SpacePtr space, cplx value);

    /// Elementary tensor e_{hol[0]} (x) ... (x) conj e_{anti[0]} (x) ...
    static Kernel basis(SpacePtr space, std::span<const std::size_t> hol,
                        std::span<const std::size_t> anti);

    const SpacePtr& space() const { return space_; }
    std::size_t n() const { return space_->n(); }
    int p() const { return p_; }
    int q() const { return q_; }
    int rank() const { return p_ + q_; }
    bool symmetric() const { return symmetric_; }
    std::span<const cplx> coeffs() const { return coeffs_; }
    std::span<cplx> mutable_coeffs() { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }

    cplx operator[](std::size_t flat) const { return coeffs_[flat]; }
    cplx& operator[](std::size_t flat) { return coeffs_[flat]; }

    /// Entry at a full multi-index (hol slots first).
    cplx at(std::span<const std::size_t> index) const;

    /// Row-major flat offset of a multi-index.
    std::size_t offset(std::span<const std::size_t> index) const;

    /// Product of slot weights for the multi-index at a flat offset.
    double weight_at(std::size_t flat) const;

    /// Exact check of block symmetry up to `tol` (absolute); O(size * rank^2).
    bool check_symmetric(double tol = 0.0) const;

    /// Sets the flag without checking; callers own the invariant.
    void assume_symmetric(bool value) { symmetric_ = value; }

    Kernel& operator+=(const Kernel& other);
    Kernel& operator*=(cplx s);

  private:
    SpacePtr space_;
    int p_ = 0;
    int q_ = 0;
    std::vector<cplx> coeffs_;
    bool symmetric_ = false;
};

Kernel operator+(Kernel a, const Kernel& b);
Kernel operator*(cplx s, Kernel a);

/// Weighted inner product <f, g> = sum f * conj(g) * prod(weights).
cplx inner_product(const Kernel& f, const Kernel& g);

/// ||f||^2 under the weighted inner product.
double norm_sq(const Kernel& f);
double norm(const Kernel& f);

/// Average over permutations within the first p and, independently, the
/// last q slots. Returns the input unchanged if its flag is already set.
Kernel symmetrize(const Kernel& f);

/// h(t_1..t_q; s_1..s_p) = conj f(s_1..s_p; t_1..t_q).
Kernel reverse_conjugate(const Kernel& f);

/// (i, j)-th contraction: the last i holomorphic slots of f against the last
/// i antiholomorphic slots of g, and the last j antiholomorphic slots of f
/// against the last j holomorphic slots of g, with no conjugation.
///
/// Output slot order: free holomorphic slots of f, then of g; free
/// antiholomorphic slots of f, then of g.
Kernel contract(const Kernel& f, const Kernel& g, int i, int j);

/// symmetrize(contract(f, g, i, j)).
Kernel sym_contract(const Kernel& f, const Kernel& g, int i, int j);

/// contract(f, g, 0, 0).
Kernel tensor_product(const Kernel& f, const Kernel& g);

}  // namespace cchaos
