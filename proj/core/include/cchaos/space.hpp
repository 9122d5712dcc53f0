#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cchaos {

/// Finite-dimensional complex Hilbert space with a diagonal Gram matrix.
///
/// Basis vector k carries squared norm `weights[k]`. Unit weights model an
/// abstract orthonormal basis; quadrature weights model a discretized
/// L^2([0, T]) where basis vector k is the indicator of a cell around node
/// `grid[k]`.
class Space {
  public:
    /// n orthonormal basis vectors.
    static std::shared_ptr<const Space> unit(std::size_t n);

    /// Weighted space; throws std::invalid_argument on empty/nonpositive
    /// weights or a grid that is not strictly increasing with matching size.
    static std::shared_ptr<const Space>
    weighted(std::vector<double> weights,
             std::optional<std::vector<double>> grid = std::nullopt);

    std::size_t n() const { return weights_.size(); }
    std::span<const double> weights() const { return weights_; }
    double weight(std::size_t k) const { return weights_[k]; }
    bool has_grid() const { return grid_.has_value(); }
    std::span<const double> grid() const;
    bool unit_weights() const { return unit_; }

    bool operator==(const Space& other) const;

  private:
    Space(std::vector<double> weights, std::optional<std::vector<double>> grid);

    std::vector<double> weights_;
    std::optional<std::vector<double>> grid_;
    bool unit_ = false;
};

using SpacePtr = std::shared_ptr<const Space>;

/// Pointer identity or value equality.
bool same_space(const SpacePtr& a, const SpacePtr& b);

}  // namespace cchaos
