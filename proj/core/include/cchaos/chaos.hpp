#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cchaos/kernel.hpp"

namespace cchaos {

/// Chaos order (p, q), ordered lexicographically.
using Order = std::pair<int, int>;

/// Raised when a product would create a term above the configured degree.
class degree_cap_exceeded : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Finite chaos expansion F = c + sum_{(p,q)} I_{p,q}(f_{p,q}).
///
/// Stored kernels are always symmetric and share one space.
class ChaosVariable {
  public:
    explicit ChaosVariable(SpacePtr space, cplx constant = {});

    /// I_{p,q}(f); f is symmetrized if its flag is unset. A (0,0) kernel
    /// becomes the constant.
    static ChaosVariable single(const Kernel& f);

    /// Adds I_{p,q}(f) to the expansion.
    void add(const Kernel& f);

    const SpacePtr& space() const { return space_; }
    cplx constant() const { return constant_; }
    void set_constant(cplx c) { constant_ = c; }
    const std::map<Order, Kernel>& terms() const { return terms_; }

    /// Kernel of order (p, q) or nullptr.
    const Kernel* term(int p, int q) const;

    /// Largest p + q among stored terms (0 for a constant).
    int degree() const;

    /// Exactly one stored term and a zero constant.
    bool is_single_order() const;

    /// sqrt(|c|^2 + sum p! q! ||f_{p,q}||^2) = sqrt(E|F|^2).
    double l2_norm() const;

    ChaosVariable& operator+=(const ChaosVariable& other);
    ChaosVariable& operator*=(cplx s);

  private:
    SpacePtr space_;
    cplx constant_;
    std::map<Order, Kernel> terms_;
};

ChaosVariable operator+(ChaosVariable a, const ChaosVariable& b);
ChaosVariable operator*(cplx s, ChaosVariable a);

struct ProductOptions {
    int degree_cap = 8;
    bool prune = true;
    /// Terms with ||f|| below prune_rel * ||F|| * ||G|| are dropped.
    double prune_rel = 1e-14;
};

/// Ordered list of chaos variables on a shared space.
class ChaosVector {
  public:
    explicit ChaosVector(std::vector<ChaosVariable> components);

    std::size_t dim() const { return components_.size(); }
    const ChaosVariable& operator[](std::size_t k) const { return components_[k]; }
    const std::vector<ChaosVariable>& components() const { return components_; }
    const SpacePtr& space() const { return components_.front().space(); }

  private:
    std::vector<ChaosVariable> components_;
};

/// conj(F): (p,q) -> f becomes (q,p) -> reverse_conjugate(f).
ChaosVariable conjugate(const ChaosVariable& F);

/// Chaos decomposition of the pointwise product via the product formula.
ChaosVariable multiply(const ChaosVariable& F, const ChaosVariable& G,
                       const ProductOptions& opts = {});

/// E[F], the constant term.
cplx expectation(const ChaosVariable& F);

/// E[F G] from the isometry, without forming the product.
cplx expect_product(const ChaosVariable& F, const ChaosVariable& G);

/// E[F conj(G)] from the isometry.
cplx expect_product_conj(const ChaosVariable& F, const ChaosVariable& G);

/// E[F^k conj(F)^l] by iterated products and one isometry pairing.
cplx moment(const ChaosVariable& F, int k, int l, const ProductOptions& opts = {});

/// E of a product of arbitrary factors, split into two halves.
cplx expect_product_of(const std::vector<ChaosVariable>& factors,
                       const ProductOptions& opts = {});

}  // namespace cchaos
