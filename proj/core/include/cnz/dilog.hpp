#pragma once

#include <complex>

namespace cnz {

// Dilogarithm Li_2(z) on the principal branch, absolute accuracy ~1e-15.
// Power/Bernoulli series after inversion and reflection transforms.
std::complex<double> dilog(std::complex<double> z);

// Bloch-Wigner D(z) = Im(Li_2(z)) + arg(1-z) log|z|. Vanishes on the real
// line; z in {0, 1} is a domain error.
double bloch_wigner(std::complex<double> z);

// Rogers L(x) = Li_2(x) + (1/2) log(x) log(1-x) for x in (0,1).
double rogers(double x);

}  // namespace cnz
