#include "cchaos/rng.hpp"

#include <cmath>
#include <numbers>

namespace cchaos {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double to_open_unit(std::uint32_t a, std::uint32_t b)
{
    const std::uint64_t bits = (static_cast<std::uint64_t>(a >> 5) << 26) | (b >> 6);
    return (static_cast<double>(bits) + 0.5) * 0x1p-53;
}

}  // namespace

Philox4x32::Counter Philox4x32::operator()(Counter c) const
{
    Key k = key_;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return c;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream)
    : gen_([seed] {
          const std::uint64_t k = splitmix64(seed);
          return Philox4x32::Key{static_cast<std::uint32_t>(k),
                                 static_cast<std::uint32_t>(k >> 32)};
      }()),
      stream_(stream)
{
}

Philox4x32::Counter CounterStream::block()
{
    const std::uint64_t d = draw_++;
    return gen_({static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32),
                 static_cast<std::uint32_t>(stream_),
                 static_cast<std::uint32_t>(stream_ >> 32)});
}

double CounterStream::uniform()
{
    if (have_spare_) {
        have_spare_ = false;
        return to_open_unit(spare_[0], spare_[1]);
    }
    const auto r = block();
    spare_[0] = r[2];
    spare_[1] = r[3];
    have_spare_ = true;
    return to_open_unit(r[0], r[1]);
}

std::complex<double> CounterStream::complex_normal()
{
    // one Philox block per draw keeps draw k tied to counter k
    have_spare_ = false;
    const auto r = block();
    const double u1 = to_open_unit(r[0], r[1]);
    const double u2 = to_open_unit(r[2], r[3]);
    const double rad = std::sqrt(-std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    return {rad * std::cos(th), rad * std::sin(th)};
}

std::array<double, 2> CounterStream::normal_pair()
{
    const std::complex<double> z = complex_normal();
    return {std::numbers::sqrt2 * z.real(), std::numbers::sqrt2 * z.imag()};
}

}  // namespace cchaos
