#include "cchaos/hermite.hpp"

#include <stdexcept>

namespace cchaos {

void hermite_table(int pmax, int qmax, std::complex<double> z, std::complex<double>* out)
{
    if (pmax < 0 || qmax < 0) {
        throw std::invalid_argument("hermite_table: negative degree");
    }
    const int w = qmax + 1;
    const std::complex<double> zb = std::conj(z);
    out[0] = 1.0;
    for (int b = 1; b <= qmax; ++b) {
        out[b] = zb * out[b - 1];
    }
    for (int a = 0; a < pmax; ++a) {
        for (int b = 0; b <= qmax; ++b) {
            std::complex<double> v = z * out[a * w + b];
            if (b > 0) {
                v -= 2.0 * b * out[a * w + b - 1];
            }
            out[(a + 1) * w + b] = v;
        }
    }
}

std::vector<std::complex<double>> hermite_table(int pmax, int qmax, std::complex<double> z)
{
    if (pmax < 0 || qmax < 0) {
        throw std::invalid_argument("hermite_table: negative degree");
    }
    std::vector<std::complex<double>> out(static_cast<std::size_t>((pmax + 1) * (qmax + 1)));
    hermite_table(pmax, qmax, z, out.data());
    return out;
}

std::complex<double> hermite_hl(int p, int q, std::complex<double> z)
{
    return hermite_table(p, q, z).back();
}

}  // namespace cchaos
