#include "wignerlab/detail/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>

#include "wignerlab/error.hpp"
#include "wignerlab/sum.hpp"

namespace wignerlab::detail {

namespace {

std::mutex plan_mutex;

fftw_plan get_plan(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  const auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // In-place plan on a scratch buffer; FFTW_UNALIGNED lets fftw_execute_dft
  // run on any caller buffer later.
  std::vector<std::complex<double>> scratch(n);
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_1d(
      n, ptr, ptr, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw_degenerate("fftw plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void fft(std::complex<double>* data, int n, int sign) {
  fftw_plan plan = get_plan(n, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, ptr, ptr);
}

std::vector<std::complex<double>> upsample2(
    const std::vector<std::complex<double>>& a) {
  const int n = int(a.size());
  std::vector<std::complex<double>> c(a);
  fft(c.data(), n, -1);
  std::vector<std::complex<double>> spec(2 * n, 0.0);
  for (int f = 0; f < n / 2; ++f) spec[f] = c[f];
  spec[n / 2] = 0.5 * c[n / 2];
  spec[2 * n - n / 2] = 0.5 * c[n / 2];
  for (int f = n / 2 + 1; f < n; ++f) spec[n + f] = c[f];
  fft(spec.data(), 2 * n, +1);
  const double inv = 1.0 / n;
  for (auto& z : spec) z *= inv;
  for (int i = 0; i < n; ++i) spec[2 * i] = a[i];
  return spec;
}

std::vector<std::complex<double>> upsample2_direct(
    const std::vector<std::complex<double>>& a) {
  const int n = int(a.size());
  const double step = 2.0 * std::numbers::pi / n;
  std::vector<std::complex<double>> c(n);
  for (int f = 0; f < n; ++f) {
    KahanSumComplex s;
    for (int m = 0; m < n; ++m)
      s.add(a[m] * std::polar(1.0, -step * f * m));
    c[f] = s.value();
  }
  std::vector<std::complex<double>> out(2 * n);
  for (int s = 0; s < 2 * n; ++s) {
    KahanSumComplex acc;
    for (int f = 0; f < n / 2; ++f)
      acc.add(c[f] * std::polar(1.0, step * f * (0.5 * s)));
    acc.add(0.5 * c[n / 2] * std::polar(1.0, step * (n / 2) * (0.5 * s)));
    acc.add(0.5 * c[n / 2] * std::polar(1.0, -step * (n / 2) * (0.5 * s)));
    for (int f = n / 2 + 1; f < n; ++f)
      acc.add(c[f] * std::polar(1.0, step * (f - n) * (0.5 * s)));
    out[s] = acc.value() / double(n);
  }
  for (int i = 0; i < n; ++i) out[2 * i] = a[i];
  return out;
}

}  // namespace wignerlab::detail
