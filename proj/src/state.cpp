#include "wignerlab/state.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "wignerlab/error.hpp"
#include "wignerlab/sum.hpp"

namespace wignerlab {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^(-1/4)

double quadrature_norm(const WaveFunction& w) {
  KahanSum s;
  for (auto z : w.psi) s.add(std::norm(z));
  return std::sqrt(s.value() * w.grid.dx);
}

void renormalize(WaveFunction& w) {
  const double nrm = quadrature_norm(w);
  if (nrm <= 0.0 || !std::isfinite(nrm))
    throw_degenerate("state has zero or non-finite norm");
  for (auto& z : w.psi) z /= nrm;
  w.normalized = true;
}

void check_hbar(double hbar) {
  if (!std::isfinite(hbar) || hbar <= 0.0)
    throw_validation("hbar must be positive and finite");
}

}  // namespace

double boundary_decay_ratio(const WaveFunction& w) {
  double peak = 0.0;
  for (auto z : w.psi) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0.0;
  const double edge =
      std::max(std::abs(w.psi.front()), std::abs(w.psi.back()));
  return edge / peak;
}

void validate_wavefunction(const WaveFunction& w, const Tolerances& tol) {
  make_grid(w.grid.x0, w.grid.dx, w.grid.n);
  check_hbar(w.hbar);
  if (int(w.psi.size()) != w.grid.n)
    throw_validation("wavefunction sample count does not match grid");
  for (auto z : w.psi)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw_validation("wavefunction contains non-finite sample");
  const double ratio = boundary_decay_ratio(w);
  if (ratio > tol.decay_ratio)
    throw_validation("boundary decay violated: ratio " + fmt(ratio) +
                     " exceeds " + fmt(tol.decay_ratio) +
                     " (grid too narrow for this state)");
  if (w.normalized) {
    const double nrm = quadrature_norm(w);
    if (std::abs(nrm * nrm - 1.0) > tol.wfn_norm)
      throw_validation("state flagged normalized but |phi|^2 integrates to " +
                       std::to_string(nrm * nrm));
  }
}

WaveFunction harmonic_oscillator_state(int k, const SampleGrid1D& grid,
                                       double hbar, const Tolerances& tol) {
  check_hbar(hbar);
  if (k < 0 || k > tol.max_hermite_k)
    throw_validation("oscillator index k=" + std::to_string(k) +
                     " outside stable range [0, " +
                     std::to_string(tol.max_hermite_k) + "]");
  WaveFunction w{grid, hbar, std::vector<std::complex<double>>(grid.n), false};
  const double s = std::sqrt(hbar);
  const double amp = 1.0 / std::sqrt(s);
  for (int i = 0; i < grid.n; ++i) {
    const double xi = grid.coord(i) / s;
    double hm = kPiQuarterInv * std::exp(-0.5 * xi * xi);  // h_0
    double hp = 0.0;                                       // h_{m-1}
    for (int m = 0; m < k; ++m) {
      const double next = xi * std::sqrt(2.0 / (m + 1)) * hm -
                          std::sqrt(double(m) / (m + 1)) * hp;
      hp = hm;
      hm = next;
    }
    w.psi[i] = amp * hm;
  }
  renormalize(w);
  validate_wavefunction(w, tol);
  return w;
}

WaveFunction gaussian_state(double q0, double p0, double sigma,
                            const SampleGrid1D& grid, double hbar,
                            const Tolerances& tol) {
  check_hbar(hbar);
  if (!std::isfinite(q0) || !std::isfinite(p0))
    throw_validation("gaussian center must be finite");
  if (!std::isfinite(sigma) || sigma <= 0.0)
    throw_validation("gaussian width must be positive");
  WaveFunction w{grid, hbar, std::vector<std::complex<double>>(grid.n), false};
  const double amp = kPiQuarterInv / std::sqrt(sigma);
  for (int i = 0; i < grid.n; ++i) {
    const double u = grid.coord(i) - q0;
    const double mag = amp * std::exp(-u * u / (2.0 * sigma * sigma));
    const double phase = p0 * u / hbar;
    w.psi[i] = std::polar(mag, phase);
  }
  renormalize(w);
  validate_wavefunction(w, tol);
  return w;
}

std::complex<double> inner_product(const WaveFunction& a,
                                   const WaveFunction& b) {
  if (!(a.grid == b.grid) || a.hbar != b.hbar)
    throw_validation("inner_product: states live on different grids");
  if (a.psi.size() != b.psi.size())
    throw_validation("inner_product: sample count mismatch");
  KahanSumComplex s;
  for (size_t i = 0; i < a.psi.size(); ++i)
    s.add(std::conj(a.psi[i]) * b.psi[i]);
  return s.value() * a.grid.dx;
}

WaveFunction superpose_wavefunctions(const WaveFunction& phi1,
                                     const WaveFunction& phi2,
                                     std::complex<double> a1,
                                     std::complex<double> a2,
                                     const Tolerances& tol) {
  if (!(phi1.grid == phi2.grid) || phi1.hbar != phi2.hbar)
    throw_validation("superpose_wavefunctions: grid or hbar mismatch");
  const double csum = std::norm(a1) + std::norm(a2);
  if (std::abs(csum - 1.0) > tol.coeff_constraint)
    throw_validation("superposition coefficients violate |a1|^2+|a2|^2=1: " +
                     fmt(csum));
  const double overlap = std::abs(inner_product(phi1, phi2));
  if (overlap > tol.input_orthogonality)
    throw_validation("superposition inputs are not orthogonal: |<1|2>| = " +
                     fmt(overlap));
  WaveFunction out{phi1.grid, phi1.hbar,
                   std::vector<std::complex<double>>(phi1.psi.size()), true};
  for (size_t i = 0; i < out.psi.size(); ++i)
    out.psi[i] = a1 * phi1.psi[i] + a2 * phi2.psi[i];
  const double nrm = quadrature_norm(out);
  if (std::abs(nrm * nrm - 1.0) > tol.wfn_norm)
    throw_validation("superposed state norm deviates: " +
                     std::to_string(nrm * nrm));
  validate_wavefunction(out, tol);
  return out;
}

}  // namespace wignerlab
