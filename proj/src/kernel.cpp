#include "wignerlab/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "wignerlab/error.hpp"

namespace wignerlab {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

OperatorKernel make_kernel(const SampleGrid1D& grid, double hbar,
                           Eigen::MatrixXcd k, bool hermitian,
                           const Tolerances& tol) {
  make_grid(grid.x0, grid.dx, grid.n);
  if (!std::isfinite(hbar) || hbar <= 0.0)
    throw_validation("hbar must be positive and finite");
  if (k.rows() != grid.n || k.cols() != grid.n)
    throw_validation("kernel matrix is " + std::to_string(k.rows()) + "x" +
                     std::to_string(k.cols()) + ", grid wants " +
                     std::to_string(grid.n));
  if (!k.allFinite()) throw_validation("kernel contains non-finite entry");
  if (hermitian) {
    const double defect = hermiticity_defect(k);
    if (defect > tol.kernel_hermitian)
      throw_validation("kernel flagged hermitian but defect is " +
                       fmt(defect));
  }
  return OperatorKernel{grid, hbar, std::move(k), hermitian};
}

OperatorKernel density_kernel(const WaveFunction& phi, const Tolerances& tol) {
  validate_wavefunction(phi, tol);
  if (!phi.normalized)
    throw_validation("density kernel requires a normalized state");
  const int n = phi.grid.n;
  Eigen::MatrixXcd k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      k(i, j) = phi.psi[i] * std::conj(phi.psi[j]);
  return OperatorKernel{phi.grid, phi.hbar, std::move(k), true};
}

}  // namespace wignerlab
