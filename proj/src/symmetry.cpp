#include "wignerlab/symmetry.hpp"

#include <cmath>
#include <cstdio>
#include <complex>
#include <string>

#include "wignerlab/error.hpp"

namespace wignerlab {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// fractional shifts closer than this many samples to a lattice point are
// treated as exact moves
constexpr double kSnapSteps = 1e-9;

bool near_integer(double x) {
  return std::abs(x - std::round(x)) < kSnapSteps;
}

}  // namespace

RealField2D act_heisenberg_weyl(const RealField2D& f, GroupElementHW g) {
  validate_field(f);
  if (!std::isfinite(g.a) || !std::isfinite(g.b))
    throw_validation("group element has non-finite translation");
  const int nq = f.grid.q.n;
  const int np = f.grid.p.n;
  const double si = g.a / f.grid.q.dx;   // source row offset
  const double sk = -g.b / f.grid.p.dx;  // source column offset
  RealField2D out = make_field(f.grid);

  if (near_integer(si) && near_integer(sk)) {
    const int di = int(std::lround(si));
    const int dk = int(std::lround(sk));
    for (int i = 0; i < nq; ++i) {
      const int ii = i + di;
      if (ii < 0 || ii >= nq) continue;
      for (int k = 0; k < np; ++k) {
        const int kk = k + dk;
        if (kk >= 0 && kk < np) out.at(i, k) = f.at(ii, kk);
      }
    }
    return out;
  }

  auto sample = [&](int i, int k) {
    return (i >= 0 && i < nq && k >= 0 && k < np) ? f.at(i, k) : 0.0;
  };
  for (int i = 0; i < nq; ++i) {
    const double x = i + si;
    const int i0 = int(std::floor(x));
    const double fx = x - i0;
    for (int k = 0; k < np; ++k) {
      const double y = k + sk;
      const int k0 = int(std::floor(y));
      const double fy = y - k0;
      out.at(i, k) = (1.0 - fx) * (1.0 - fy) * sample(i0, k0) +
                     fx * (1.0 - fy) * sample(i0 + 1, k0) +
                     (1.0 - fx) * fy * sample(i0, k0 + 1) +
                     fx * fy * sample(i0 + 1, k0 + 1);
    }
  }
  return out;
}

RealField2D act_time_reversal(const RealField2D& f) {
  validate_field(f);
  const int np = f.grid.p.n;
  RealField2D out = make_field(f.grid);
  for (int i = 0; i < f.grid.q.n; ++i) {
    out.at(i, 0) = 0.0;  // p = -p_max has no mirror sample
    for (int k = 1; k < np; ++k) out.at(i, k) = f.at(i, np - k);
  }
  return out;
}

OperatorKernel conjugation_action(const Eigen::MatrixXcd& u,
                                  const OperatorKernel& a,
                                  const Tolerances& tol) {
  if (u.rows() != a.grid.n || u.cols() != a.grid.n)
    throw_validation("conjugation matrix is " + std::to_string(u.rows()) +
                     "x" + std::to_string(u.cols()) + ", kernel wants " +
                     std::to_string(a.grid.n));
  const Eigen::MatrixXcd gram =
      u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  const double defect = gram.cwiseAbs().maxCoeff();
  if (defect > tol.unitary_defect)
    throw_validation("conjugation matrix is not unitary, defect " +
                     fmt(defect));
  Eigen::MatrixXcd m = u * a.k * u.adjoint();
  if (a.hermitian) {
    const double herm = hermiticity_defect(m);
    if (herm > tol.unitary_defect)
      throw_validation("conjugation broke hermiticity, defect " +
                       fmt(herm));
    m = ((m + m.adjoint()) / 2.0).eval();
  }
  return OperatorKernel{a.grid, a.hbar, std::move(m), a.hermitian};
}

Eigen::MatrixXcd translation_unitary(const SampleGrid1D& g, int steps) {
  make_grid(g.x0, g.dx, g.n);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(g.n, g.n);
  for (int i = 0; i < g.n; ++i) {
    const int j = ((i - steps) % g.n + g.n) % g.n;
    u(i, j) = 1.0;
  }
  return u;
}

Eigen::MatrixXcd modulation_unitary(const SampleGrid1D& g, double b,
                                    double hbar) {
  make_grid(g.x0, g.dx, g.n);
  if (!std::isfinite(b)) throw_validation("modulation parameter not finite");
  if (!std::isfinite(hbar) || hbar <= 0.0)
    throw_validation("hbar must be positive and finite");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(g.n, g.n);
  for (int i = 0; i < g.n; ++i)
    u(i, i) = std::polar(1.0, b * g.coord(i) / hbar);
  return u;
}

}  // namespace wignerlab
