#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace cchaos::detail {

inline std::size_t ipow(std::size_t n, int r)
{
    std::size_t out = 1;
    for (int k = 0; k < r; ++k) {
        if (n != 0 && out > std::numeric_limits<std::size_t>::max() / n) {
            throw std::length_error("tensor size overflows size_t");
        }
        out *= n;
    }
    return out;
}

/// Row-major strides for `rank` axes of extent n.
inline std::vector<std::size_t> strides(std::size_t n, int rank)
{
    std::vector<std::size_t> s(static_cast<std::size_t>(rank));
    std::size_t acc = 1;
    for (int k = rank; k-- > 0;) {
        s[static_cast<std::size_t>(k)] = acc;
        acc *= n;
    }
    return s;
}

/// Flat index after exchanging the digits at strides sa and sb.
inline std::size_t swap_digits(std::size_t idx, std::size_t n, std::size_t sa,
                               std::size_t sb)
{
    const std::size_t da = (idx / sa) % n;
    const std::size_t db = (idx / sb) % n;
    return idx - da * sa - db * sb + db * sa + da * sb;
}

/// Axis permutation: output axis k is input axis perm[k].
template <class T>
std::vector<T> permute_axes(std::span<const T> in, std::size_t n,
                            const std::vector<int>& perm)
{
    const int rank = static_cast<int>(perm.size());
    bool identity = true;
    for (int k = 0; k < rank; ++k) {
        identity = identity && perm[static_cast<std::size_t>(k)] == k;
    }
    if (identity) {
        return std::vector<T>(in.begin(), in.end());
    }
    const auto in_strides = strides(n, rank);
    std::vector<std::size_t> src_stride(static_cast<std::size_t>(rank));
    for (int k = 0; k < rank; ++k) {
        src_stride[static_cast<std::size_t>(k)] =
            in_strides[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    }
    std::vector<T> out(in.size());
    std::vector<std::size_t> digit(static_cast<std::size_t>(rank), 0);
    std::size_t src = 0;
    const std::size_t inner_stride = rank > 0 ? src_stride.back() : 0;
    std::size_t pos = 0;
    while (pos < out.size()) {
        // innermost output axis walks the source with a fixed stride
        std::size_t s = src;
        const std::size_t len = rank > 0 ? n : 1;
        for (std::size_t t = 0; t < len; ++t, s += inner_stride) {
            out[pos++] = in[s];
        }
        for (int k = rank - 1; k-- > 0;) {
            const auto ku = static_cast<std::size_t>(k);
            src += src_stride[ku];
            if (++digit[ku] < n) {
                break;
            }
            src -= src_stride[ku] * n;
            digit[ku] = 0;
        }
    }
    return out;
}

template <class T>
std::vector<T> permute_axes(const std::vector<T>& in, std::size_t n,
                            const std::vector<int>& perm)
{
    return permute_axes(std::span<const T>(in), n, perm);
}

}  // namespace cchaos::detail
