#pragma once

#include <complex>
#include <vector>

namespace wignerlab::detail {

// In-place DFT, data length n. sign=+1 applies e^{+2 pi i m k / n} (FFTW
// backward), sign=-1 the conjugate. Unnormalized. Plans are cached per (n,
// sign) with FFTW_ESTIMATE so the planner never depends on timing; execution
// is thread-safe.
void fft(std::complex<double>* data, int n, int sign);

// Band-limited 2x refinement: input length n, output length 2n with
// out[2i] = a[i] exactly and odd samples by trigonometric interpolation
// (Nyquist bin split symmetrically). FFT-backed and direct-sum versions.
std::vector<std::complex<double>> upsample2(
    const std::vector<std::complex<double>>& a);
std::vector<std::complex<double>> upsample2_direct(
    const std::vector<std::complex<double>>& a);

}  // namespace wignerlab::detail
