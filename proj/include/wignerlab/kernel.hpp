#pragma once

#include <Eigen/Dense>

#include "wignerlab/grid.hpp"
#include "wignerlab/state.hpp"
#include "wignerlab/tolerances.hpp"

namespace wignerlab {

// Integral-operator kernel sampled on the coordinate grid:
// entry (i, j) = A_K(x_i, x_j).
struct OperatorKernel {
  SampleGrid1D grid;
  double hbar = 1.0;
  Eigen::MatrixXcd k;
  bool hermitian = false;
};

double hermiticity_defect(const Eigen::MatrixXcd& m);

OperatorKernel make_kernel(const SampleGrid1D& grid, double hbar,
                           Eigen::MatrixXcd k, bool hermitian,
                           const Tolerances& tol = default_tolerances());

// rank-one kernel phi(x_i) * conj(phi(x_j)) of a normalized state
OperatorKernel density_kernel(const WaveFunction& phi,
                              const Tolerances& tol = default_tolerances());

}  // namespace wignerlab
