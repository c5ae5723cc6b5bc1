#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wignerlab {

// Uniform coordinate lattice: sample i sits at x0 + i*dx, i in [0, n).
struct SampleGrid1D {
  double x0 = 0.0;
  double dx = 1.0;
  int n = 0;

  double coord(int i) const noexcept { return x0 + i * dx; }
  double length() const noexcept { return n * dx; }
  bool operator==(const SampleGrid1D&) const = default;
};

SampleGrid1D make_grid(double x0, double dx, int n);

// Coordinate grid plus its conjugate momentum grid. The momentum spacing
// dp = pi*hbar/(n*dx) comes from the half-step transform bandwidth; p = 0 is
// always the sample at index n/2.
struct PhaseGrid {
  SampleGrid1D q;
  SampleGrid1D p;
  double hbar = 1.0;

  bool operator==(const PhaseGrid&) const = default;
};

PhaseGrid make_conjugate_grid(const SampleGrid1D& qgrid, double hbar);

// Real scalar field over a PhaseGrid, row-major with q as the slow index.
struct RealField2D {
  PhaseGrid grid;
  std::vector<double> v;

  double& at(int iq, int ip) noexcept { return v[size_t(iq) * grid.p.n + ip]; }
  double at(int iq, int ip) const noexcept {
    return v[size_t(iq) * grid.p.n + ip];
  }
};

RealField2D make_field(const PhaseGrid& grid);
void validate_field(const RealField2D& f);

double integrate_1d(std::span<const double> values, const SampleGrid1D& grid);
std::complex<double> integrate_1d(std::span<const std::complex<double>> values,
                                  const SampleGrid1D& grid);
double integrate_2d(const RealField2D& field);

double max_abs(std::span<const double> values) noexcept;
double max_abs(std::span<const std::complex<double>> values) noexcept;

}  // namespace wignerlab
