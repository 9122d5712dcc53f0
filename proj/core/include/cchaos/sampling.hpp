#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cchaos/chaos.hpp"

namespace cchaos {

struct SampleBatch {
    std::vector<cplx> values;
    std::uint64_t seed = 0;
    std::string meta;
};

/// Reference Gaussian law. circular: CN(0, sigma_sq). bivariate: (Re, Im)
/// with covariance C = 1/2 [[sigma_sq + a, b], [b, sigma_sq - a]].
struct GaussianTarget {
    enum class Kind { circular, bivariate };
    Kind kind = Kind::circular;
    double sigma_sq = 1.0;
    double a = 0.0;
    double b = 0.0;

    static GaussianTarget circular(double sigma_sq);
    static GaussianTarget bivariate(double a, double b, double sigma_sq);
};

/// Exact-in-law draws of F. Sample s uses stream s of `seed`, drawing the
/// coordinates Z_1..Z_n of the isonormal process in order, so the batch is
/// bit-identical for every thread count.
SampleBatch sample_chaos(const ChaosVariable& F, std::size_t N, std::uint64_t seed,
                         unsigned threads = 0);

/// Draws F^1..F^d jointly (same Gaussian coordinates per sample); result[k]
/// holds component k.
std::vector<SampleBatch> sample_chaos_vector(const ChaosVector& F, std::size_t N,
                                             std::uint64_t seed, unsigned threads = 0);

SampleBatch sample_gaussian(const GaussianTarget& target, std::size_t N, std::uint64_t seed,
                            unsigned threads = 0);

/// CSV with "#"-prefixed header lines carrying seed and generator version,
/// then a "re,im" header row.
void write_batch_csv(const std::filesystem::path& path, const SampleBatch& batch);
SampleBatch read_batch_csv(const std::filesystem::path& path);

}  // namespace cchaos
