#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "cchaos/kernel.hpp"

namespace cchaos::testing {

inline SpacePtr random_space(std::size_t n, std::mt19937_64& rng, bool weighted = true)
{
    if (!weighted) {
        return Space::unit(n);
    }
    std::uniform_real_distribution<double> u(0.25, 2.0);
    std::vector<double> w(n);
    for (auto& x : w) {
        x = u(rng);
    }
    return Space::weighted(std::move(w));
}

/// Gaussian complex coefficients, symmetrized unless `raw`.
inline Kernel random_kernel(const SpacePtr& space, int p, int q, std::mt19937_64& rng,
                            bool raw = false)
{
    std::normal_distribution<double> g;
    std::size_t size = 1;
    for (int k = 0; k < p + q; ++k) {
        size *= space->n();
    }
    std::vector<cplx> c(size);
    for (auto& x : c) {
        x = {g(rng), g(rng)};
    }
    Kernel f(space, p, q, std::move(c));
    return raw ? f : symmetrize(f);
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 0.0)
{
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), abs_floor});
}

inline bool rel_close(cplx a, cplx b, double rel, double abs_floor = 0.0)
{
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), abs_floor});
}

/// Multi-index digits of a flat offset, most significant first.
inline std::vector<std::size_t> digits(std::size_t flat, std::size_t n, int rank)
{
    std::vector<std::size_t> d(static_cast<std::size_t>(rank));
    for (int k = rank; k-- > 0;) {
        d[static_cast<std::size_t>(k)] = flat % n;
        flat /= n;
    }
    return d;
}

inline std::size_t flatten(const std::vector<std::size_t>& d, std::size_t n)
{
    std::size_t flat = 0;
    for (std::size_t x : d) {
        flat = flat * n + x;
    }
    return flat;
}

/// Contraction straight from the coordinate definition, one output entry and
/// one contracted multi-index at a time.
inline Kernel contract_naive(const Kernel& f, const Kernel& g, int i, int j)
{
    const std::size_t n = f.n();
    const int a = f.p(), b = f.q(), c = g.p(), d = g.q();
    const int P = a + c - i - j, Q = b + d - i - j;
    Kernel out(f.space(), P, Q);
    std::size_t csize = 1;
    for (int k = 0; k < i + j; ++k) {
        csize *= n;
    }
    for (std::size_t o = 0; o < out.size(); ++o) {
        const auto od = digits(o, n, P + Q);
        // output: f free hol (a-i), g free hol (c-j), f free anti (b-j), g free anti (d-i)
        cplx acc{};
        for (std::size_t cidx = 0; cidx < csize; ++cidx) {
            const auto cd = digits(cidx, n, i + j);
            std::vector<std::size_t> fi, gi;
            double w = 1.0;
            for (int k = 0; k < a - i; ++k) fi.push_back(od[static_cast<std::size_t>(k)]);
            for (int k = 0; k < i; ++k) fi.push_back(cd[static_cast<std::size_t>(k)]);
            for (int k = 0; k < b - j; ++k) fi.push_back(od[static_cast<std::size_t>(a - i + c - j + k)]);
            for (int k = 0; k < j; ++k) fi.push_back(cd[static_cast<std::size_t>(i + k)]);
            for (int k = 0; k < c - j; ++k) gi.push_back(od[static_cast<std::size_t>(a - i + k)]);
            for (int k = 0; k < j; ++k) gi.push_back(cd[static_cast<std::size_t>(i + k)]);
            for (int k = 0; k < d - i; ++k) gi.push_back(od[static_cast<std::size_t>(P + b - j + k)]);
            for (int k = 0; k < i; ++k) gi.push_back(cd[static_cast<std::size_t>(k)]);
            for (std::size_t x : cd) w *= f.space()->weight(x);
            acc += f[flatten(fi, n)] * g[flatten(gi, n)] * w;
        }
        out[o] = acc;
    }
    return out;
}

/// Block symmetrization by explicit enumeration of both permutation groups.
inline Kernel symmetrize_naive(const Kernel& f)
{
    const std::size_t n = f.n();
    const int p = f.p(), q = f.q();
    std::vector<int> pp(static_cast<std::size_t>(p)), pq(static_cast<std::size_t>(q));
    std::iota(pp.begin(), pp.end(), 0);
    std::iota(pq.begin(), pq.end(), 0);
    Kernel out(f.space(), p, q);
    double count = 0.0;
    do {
        do {
            count += 1.0;
            for (std::size_t o = 0; o < f.size(); ++o) {
                const auto d = digits(o, n, p + q);
                std::vector<std::size_t> e(d.size());
                for (int k = 0; k < p; ++k) e[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(pp[static_cast<std::size_t>(k)])];
                for (int k = 0; k < q; ++k) e[static_cast<std::size_t>(p + k)] = d[static_cast<std::size_t>(p + pq[static_cast<std::size_t>(k)])];
                out[o] += f[flatten(e, n)];
            }
        } while (std::next_permutation(pq.begin(), pq.end()));
    } while (std::next_permutation(pp.begin(), pp.end()));
    out *= 1.0 / count;
    return out;
}

}  // namespace cchaos::testing
