#include "cchaos/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cchaos/rng.hpp"

namespace cchaos {

namespace {

void require_sizes(std::size_t a, std::size_t b, const char* what)
{
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": batch sizes differ");
    }
    if (a == 0) {
        throw std::invalid_argument(std::string(what) + ": empty batch");
    }
}

double sorted_w1(std::vector<double>& x, std::vector<double>& y)
{
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += std::abs(x[k] - y[k]);
    }
    return s / static_cast<double>(x.size());
}

}  // namespace

double wasserstein_1d(std::span<const double> x, std::span<const double> y)
{
    require_sizes(x.size(), y.size(), "wasserstein_1d");
    std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
    return sorted_w1(xs, ys);
}

double sliced_wasserstein_2d(std::span<const std::complex<double>> x,
                             std::span<const std::complex<double>> y, int K,
                             std::uint64_t seed)
{
    require_sizes(x.size(), y.size(), "sliced_wasserstein_2d");
    if (K < 1) {
        throw std::invalid_argument("sliced_wasserstein_2d: K must be at least 1");
    }
    CounterStream rng(seed, 0);
    std::vector<double> px(x.size()), py(y.size());
    double total = 0.0;
    for (int k = 0; k < K; ++k) {
        const double th = std::numbers::pi * rng.uniform();
        const double c = std::cos(th), s = std::sin(th);
        for (std::size_t i = 0; i < x.size(); ++i) {
            px[i] = c * x[i].real() + s * x[i].imag();
            py[i] = c * y[i].real() + s * y[i].imag();
        }
        total += sorted_w1(px, py);
    }
    return total / K;
}

double wasserstein_2d_exact(std::span<const std::complex<double>> x,
                            std::span<const std::complex<double>> y)
{
    require_sizes(x.size(), y.size(), "wasserstein_2d_exact");
    const std::size_t n = x.size();
    if (n > 2000) {
        throw std::invalid_argument("wasserstein_2d_exact: N must not exceed 2000");
    }
    // shortest augmenting path Hungarian method with potentials, 1-based
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) {
                    continue;
                }
                const double cur = std::abs(x[i0 - 1] - y[j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    double cost = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        cost += std::abs(x[match[j] - 1] - y[j - 1]);
    }
    return cost / static_cast<double>(n);
}

}  // namespace cchaos
