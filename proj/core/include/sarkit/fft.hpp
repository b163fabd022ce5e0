#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "sarkit/complex_signal.hpp"

namespace sarkit {

// Thin wrappers over the FFT backend. Plan creation is serialized internally;
// execution is safe from multiple threads as long as each call uses its own
// buffers (these functions do).

/// Unnormalized forward DFT: X[n] = sum_k x[k] e^{-j2pi nk/K}.
std::vector<cplx> fft_forward(const std::vector<cplx>& x);

/// Unnormalized inverse DFT: x[k] = sum_n X[n] e^{+j2pi nk/K}.
std::vector<cplx> fft_backward(const std::vector<cplx>& x);

/// Chirp-z evaluation of y[k] = sum_{n=0}^{N-1} c[n] * e^{j*theta*n*k} for
/// k = 0..count-1, with theta an arbitrary angle. Bluestein's identity turns
/// the sum into a convolution computed with FFTs. Used for synthesizing
/// subcarrier sums on a sampling grid whose spacing is not 1/K of the tone
/// period (sampling-frequency-offset channels).
std::vector<cplx> czt_unit_circle(const std::vector<cplx>& c, double theta, std::size_t count);

}  // namespace sarkit
