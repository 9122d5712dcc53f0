#pragma once

#include <complex>
#include <vector>

namespace cchaos {

/// Hermite-Laguerre-Ito polynomial H_{p,q}(z), normalized by
/// exp(lambda conj(z) + conj(lambda) z - 2 |lambda|^2)
///   = sum conj(lambda)^p lambda^q / (p! q!) H_{p,q}(z).
///
/// Evaluated with H_{p+1,q} = z H_{p,q} - 2q H_{p,q-1} and
/// H_{p,q+1} = conj(z) H_{p,q} - 2p H_{p-1,q}.
std::complex<double> hermite_hl(int p, int q, std::complex<double> z);

/// All H_{a,b}(z) for a <= pmax, b <= qmax, row-major over (pmax+1) x (qmax+1).
std::vector<std::complex<double>> hermite_table(int pmax, int qmax, std::complex<double> z);

/// In-place variant for hot loops; `out` must hold (pmax+1)(qmax+1) entries.
void hermite_table(int pmax, int qmax, std::complex<double> z, std::complex<double>* out);

}  // namespace cchaos
