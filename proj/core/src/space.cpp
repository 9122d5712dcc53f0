#include "cchaos/space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cchaos {

Space::Space(std::vector<double> weights,
             std::optional<std::vector<double>> grid)
    : weights_(std::move(weights)), grid_(std::move(grid))
{
    if (weights_.empty()) {
        throw std::invalid_argument("Space: basis size must be at least 1");
    }
    unit_ = true;
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("Space: weights must be finite and positive");
        }
        unit_ = unit_ && (w == 1.0);
    }
    if (grid_) {
        if (grid_->size() != weights_.size()) {
            throw std::invalid_argument("Space: grid has length " +
                                        std::to_string(grid_->size()) +
                                        ", expected " +
                                        std::to_string(weights_.size()));
        }
        for (std::size_t k = 1; k < grid_->size(); ++k) {
            if (!((*grid_)[k] > (*grid_)[k - 1])) {
                throw std::invalid_argument("Space: grid must be strictly increasing");
            }
        }
    }
}

std::shared_ptr<const Space> Space::unit(std::size_t n)
{
    return std::shared_ptr<const Space>(
        new Space(std::vector<double>(n, 1.0), std::nullopt));
}

std::shared_ptr<const Space>
Space::weighted(std::vector<double> weights,
                std::optional<std::vector<double>> grid)
{
    return std::shared_ptr<const Space>(
        new Space(std::move(weights), std::move(grid)));
}

std::span<const double> Space::grid() const
{
    if (!grid_) {
        return {};
    }
    return *grid_;
}

bool Space::operator==(const Space& other) const
{
    return weights_ == other.weights_ && grid_ == other.grid_;
}

bool same_space(const SpacePtr& a, const SpacePtr& b)
{
    if (a == b) {
        return true;
    }
    if (!a || !b) {
        return false;
    }
    return *a == *b;
}

}  // namespace cchaos
