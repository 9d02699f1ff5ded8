#pragma once

#include <complex>
#include <vector>

#include "latticeq/operators/state.hpp"

namespace latticeq::ops {

enum class FourierPath { automatic, dense, fast };

/// At or below this size the automatic path sums directly.
inline constexpr std::int64_t dense_fourier_limit = 4096;

/// u-coordinates to v-coordinates: d_p = (1/sqrt n) sum_r e^{-2 pi i h r p / n} c_r.
StateVector fourier_forward(const StateVector& s, FourierPath path = FourierPath::automatic);
/// v-coordinates back to u-coordinates: c_r = (1/sqrt n) sum_p e^{+2 pi i h r p / n} d_p.
StateVector fourier_inverse(const StateVector& s, FourierPath path = FourierPath::automatic);

/// Coordinates of v[p] over the u basis.
StateVector momentum_basis(const FiniteUniverse& u, std::int64_t p);

namespace detail {
/// In-place unnormalized DFT X_k = sum_j x_j e^{-2 pi i jk/N}: mixed radix for
/// small prime factors, Bluestein when a factor exceeds 64.
void fft(std::vector<std::complex<double>>& x);
void dft_direct(std::vector<std::complex<double>>& x);
}  // namespace detail

}  // namespace latticeq::ops
