#pragma once

namespace wignerlab {

// Every numeric gate in the library reads from one of these. Defaults are the
// documented contract; the CLI can override individual entries via config.
struct Tolerances {
  // Hilbert-space side
  double wfn_norm = 1e-9;            // |integral |phi|^2 dx - 1| for normalized states
  double decay_ratio = 1e-9;         // boundary |phi| relative to max |phi|
  int max_hermite_k = 30;            // recurrence stability bound
  double kernel_hermitian = 1e-12;   // max-abs |K - K^dagger| for flagged kernels
  double input_orthogonality = 1e-8; // |<phi1|phi2>| gate for superposing states
  double coeff_constraint = 1e-12;   // | |a1|^2 + |a2|^2 - 1 |

  // Transforms
  double imag_residual = 1e-10;      // forward transform imaginary part, hermitian input
  double quantize_hermitian = 1e-10; // hermiticity of quantized real symbols
  double wigner_norm = 1e-6;         // |integral W - 1| for flagged Wigner functions
  double purity_gate = 1e-3;         // relative purity gate before reconstruction
  double marginal_floor = 1e-8;      // minimum admissible anchor marginal
  double recon_norm = 1e-6;          // reconstruction output norm check
  double marginal_snap = 1e-2;       // off-grid warning at |x - snapped| > snap*dx

  // Verification checks
  double check_purity_rel = 1e-3;
  double check_norm_abs = 1e-4;
  double check_orthogonality_abs = 1e-4;  // scaled by 1/(2 pi hbar) at the call site

  // Superposition
  double t_total_floor = 1e-12;      // degenerate-superposition gate on integral of T
  double result_constraint = 1e-6;   // |c1|^2 m1(x1) + |c2|^2 m2(x2) = 1
  int oracle_max_n = 48;             // direct triple-integral size cap

  // Symmetry and factorization
  double unitary_defect = 1e-10;     // max-abs |U U^dagger - I|
  double skew_defect = 1e-10;        // max-abs |kernel + transpose|
  double factorizable_rms = 2e-1;    // calibrated on seeded good/bad generators
  int residual_samples = 200;        // quadruples per residual estimate
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace wignerlab
