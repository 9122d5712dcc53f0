#pragma once

#include <cstdint>
#include <stdexcept>

namespace cchaos {

/// Exact binomial coefficient; throws std::overflow_error past 64 bits.
inline std::uint64_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        // r * (n - k + i) / i is exact at every step
        const auto num = static_cast<std::uint64_t>(n - k + i);
        if (r > UINT64_MAX / num) {
            throw std::overflow_error("binomial: overflow");
        }
        r = r * num / static_cast<std::uint64_t>(i);
    }
    return r;
}

inline std::uint64_t factorial(int n)
{
    if (n < 0) {
        throw std::invalid_argument("factorial: negative argument");
    }
    if (n > 20) {
        throw std::overflow_error("factorial: overflow");
    }
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) {
        r *= static_cast<std::uint64_t>(i);
    }
    return r;
}

inline double binomial_d(int n, int k) { return static_cast<double>(binomial(n, k)); }
inline double factorial_d(int n) { return static_cast<double>(factorial(n)); }

/// sum_{r=1}^{l-1} C(2r, r), exact in integers.
inline std::uint64_t central_binomial_sum(int l)
{
    std::uint64_t s = 0;
    for (int r = 1; r <= l - 1; ++r) {
        s += binomial(2 * r, r);
    }
    return s;
}

}  // namespace cchaos
