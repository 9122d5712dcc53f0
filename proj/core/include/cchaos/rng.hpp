#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

namespace cchaos {

/// Version tag written into batch headers; bump whenever the mapping from
/// (seed, stream, draw) to sample values changes.
inline constexpr std::string_view generator_version = "philox4x32-10/box-muller/v1";

/// Counter-based Philox4x32 with 10 rounds.
class Philox4x32 {
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    explicit Philox4x32(Key key) : key_(key) {}

    Counter operator()(Counter ctr) const;

  private:
    Key key_;
};

/// SplitMix64 finalizer, used to derive Philox keys from 64-bit seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream indexed by (seed, stream id). Draw k of a stream only
/// depends on (seed, stream, k), so disjoint streams can be consumed by any
/// number of threads with identical results.
class CounterStream {
  public:
    CounterStream(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform();

    /// Standard circular complex Gaussian: E|Z|^2 = 1, E Z^2 = 0.
    std::complex<double> complex_normal();

    /// Two independent standard real Gaussians.
    std::array<double, 2> normal_pair();

    std::uint64_t position() const { return draw_; }
    void seek(std::uint64_t draw) { draw_ = draw; have_spare_ = false; }

  private:
    Philox4x32::Counter block();

    Philox4x32 gen_;
    std::uint64_t stream_;
    std::uint64_t draw_ = 0;
    std::uint32_t spare_[2] = {0, 0};
    bool have_spare_ = false;
};

}  // namespace cchaos
