#pragma once

#include <complex>
#include <vector>

#include "wignerlab/grid.hpp"
#include "wignerlab/tolerances.hpp"

namespace wignerlab {

struct WaveFunction {
  SampleGrid1D grid;
  double hbar = 1.0;
  std::vector<std::complex<double>> psi;
  bool normalized = false;
};

// max boundary |psi| relative to max |psi|
double boundary_decay_ratio(const WaveFunction& w);

// checks sample count, finiteness, decay, and (when flagged) the norm
void validate_wavefunction(const WaveFunction& w,
                           const Tolerances& tol = default_tolerances());

WaveFunction harmonic_oscillator_state(
    int k, const SampleGrid1D& grid, double hbar,
    const Tolerances& tol = default_tolerances());

WaveFunction gaussian_state(double q0, double p0, double sigma,
                            const SampleGrid1D& grid, double hbar,
                            const Tolerances& tol = default_tolerances());

std::complex<double> inner_product(const WaveFunction& a,
                                   const WaveFunction& b);

WaveFunction superpose_wavefunctions(
    const WaveFunction& phi1, const WaveFunction& phi2,
    std::complex<double> a1, std::complex<double> a2,
    const Tolerances& tol = default_tolerances());

}  // namespace wignerlab
