#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wignerlab/grid.hpp"
#include "wignerlab/parallel.hpp"
#include "wignerlab/state.hpp"
#include "wignerlab/tolerances.hpp"
#include "wignerlab/verify.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

// Request for combining two orthogonal pure-state Wigner functions. Anchors
// left unset are resolved to the marginal peaks.
struct SuperpositionSpec {
  double A = 1.0;
  double B = 1.0;
  double epsilon = 0.0;  // reduced mod 2 pi on input, with a warning
  std::optional<double> x1;
  std::optional<double> x2;
};

struct PairReport {
  std::vector<CheckReport> checks;  // orthogonality, purity_1/2, norm_1/2
  bool passed = false;
};

struct SuperpositionResult {
  WignerFunction W;
  double T_total = 0.0;
  double c1_abs = 0.0;
  double c2_abs = 0.0;
  std::complex<double> c1;  // real nonnegative by convention
  std::complex<double> c2;  // |c2| e^{-i epsilon}
  double x1_used = 0.0;
  double x2_used = 0.0;
  std::vector<CheckReport> checks;  // purity, norm, coefficient constraint
};

// Orthogonality, purity, and normalization gates for a candidate input pair.
// Mismatched grids are a hard error; check failures are reported and make the
// downstream operations refuse the pair.
PairReport validate_pair(const WignerFunction& w1, const WignerFunction& w2,
                         const Tolerances& tol = default_tolerances());

// marginal peaks of both inputs, ties to the smaller q index
std::pair<double, double> choose_anchors(
    const WignerFunction& w1, const WignerFunction& w2,
    const Tolerances& tol = default_tolerances());

double reduce_epsilon(double epsilon,
                      std::vector<std::string>* warnings = nullptr);

// Oracle path: the literal triple integral over (p1, p2, y) by rectangle-rule
// summation, with half-step q arguments resolved by band-limited refinement
// and zero outside the domain. O(n^3) per output point, so the grid is capped
// at tol.oracle_max_n. subsample > 1 thins every summation axis and scales
// the measure to match.
RealField2D cross_term_direct(const WignerFunction& w1,
                              const WignerFunction& w2,
                              const SuperpositionSpec& spec, int subsample = 1,
                              Exec exec = Exec::parallel,
                              const Tolerances& tol = default_tolerances());

// Production path: assemble the two rank-one cross kernels from anchored
// products and forward-transform, O(n^2 log n).
RealField2D cross_term_fast(const WignerFunction& w1, const WignerFunction& w2,
                            const SuperpositionSpec& spec,
                            Exec exec = Exec::parallel,
                            const Tolerances& tol = default_tolerances());

// T = A^2 m1(x1) W1 + B^2 m2(x2) W2 + cross, normalized by its integral.
SuperpositionResult superpose_wigner(const WignerFunction& w1,
                                     const WignerFunction& w2,
                                     const SuperpositionSpec& spec,
                                     Exec exec = Exec::parallel,
                                     const Tolerances& tol =
                                         default_tolerances(),
                                     std::vector<std::string>* warnings =
                                         nullptr);

// phi = c1 g1 + c2 g2 from the anchored products of the inputs, renormalized
WaveFunction recover_hilbert_superposition(
    const SuperpositionResult& result, const WignerFunction& w1,
    const WignerFunction& w2, const Tolerances& tol = default_tolerances());

// Every factor-th q-row and the central n/factor p-columns; dp is unchanged,
// so the result lives on the conjugate grid of the coarsened q axis. The
// normalization flag is dropped because the p tail is truncated.
WignerFunction downsample_wigner(const WignerFunction& w, int factor);

}  // namespace wignerlab
