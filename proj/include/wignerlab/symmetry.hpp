#pragma once

#include <Eigen/Dense>

#include "wignerlab/grid.hpp"
#include "wignerlab/kernel.hpp"
#include "wignerlab/tolerances.hpp"

namespace wignerlab {

// Heisenberg-Weyl element: translation by a in q and b in p.
struct GroupElementHW {
  double a = 0.0;
  double b = 0.0;
};

// out(q, p) = f(q + a, p - b). On-grid shifts (integer multiples of dx / dp,
// snapped within 1e-9 steps) are exact sample moves; fractional shifts fall
// back to bilinear interpolation. Points pulled from outside the domain are
// zero.
RealField2D act_heisenberg_weyl(const RealField2D& f, GroupElementHW g);

// out(q, p) = f(q, -p). Exact index permutation; the boundary row p = -p_max
// has no mirror sample and maps to zero.
RealField2D act_time_reversal(const RealField2D& f);

// Hilbert-side conjugation U A U^dagger. U must be unitary within
// tol.unitary_defect; hermiticity of A is preserved and revalidated.
OperatorKernel conjugation_action(const Eigen::MatrixXcd& u,
                                  const OperatorKernel& a,
                                  const Tolerances& tol = default_tolerances());

// circular shift by `steps` samples: (U psi)[i] = psi[(i - steps) mod n]
Eigen::MatrixXcd translation_unitary(const SampleGrid1D& g, int steps);

// diag(e^{i b x_i / hbar})
Eigen::MatrixXcd modulation_unitary(const SampleGrid1D& g, double b,
                                    double hbar);

}  // namespace wignerlab
