#include "wignerlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wignerlab/error.hpp"
#include "wignerlab/sum.hpp"

namespace wignerlab {

SampleGrid1D make_grid(double x0, double dx, int n) {
  if (!std::isfinite(x0)) throw_validation("grid x0 must be finite");
  if (!std::isfinite(dx) || dx <= 0.0)
    throw_validation("grid dx must be positive and finite");
  if (n < 8) throw_validation("grid needs n >= 8, got n=" + std::to_string(n));
  if (n % 2 != 0)
    throw_validation("grid needs even n, got n=" + std::to_string(n));
  return SampleGrid1D{x0, dx, n};
}

PhaseGrid make_conjugate_grid(const SampleGrid1D& qgrid, double hbar) {
  make_grid(qgrid.x0, qgrid.dx, qgrid.n);  // revalidate
  if (!std::isfinite(hbar) || hbar <= 0.0)
    throw_validation("hbar must be positive and finite");
  const double dp = std::numbers::pi * hbar / (qgrid.n * qgrid.dx);
  SampleGrid1D pgrid{-(qgrid.n / 2) * dp, dp, qgrid.n};
  return PhaseGrid{qgrid, pgrid, hbar};
}

RealField2D make_field(const PhaseGrid& grid) {
  RealField2D f{grid, {}};
  f.v.assign(size_t(grid.q.n) * grid.p.n, 0.0);
  return f;
}

void validate_field(const RealField2D& f) {
  if (f.v.size() != size_t(f.grid.q.n) * f.grid.p.n)
    throw_validation("field value count does not match grid");
  for (double x : f.v)
    if (!std::isfinite(x)) throw_validation("field contains non-finite value");
}

double integrate_1d(std::span<const double> values, const SampleGrid1D& grid) {
  if (int(values.size()) != grid.n)
    throw_validation("integrate_1d: array length does not match grid");
  return sum_ordered(values) * grid.dx;
}

std::complex<double> integrate_1d(std::span<const std::complex<double>> values,
                                  const SampleGrid1D& grid) {
  if (int(values.size()) != grid.n)
    throw_validation("integrate_1d: array length does not match grid");
  return sum_ordered(values) * grid.dx;
}

double integrate_2d(const RealField2D& field) {
  validate_field(field);
  return sum_ordered(std::span<const double>(field.v)) * field.grid.q.dx *
         field.grid.p.dx;
}

double max_abs(std::span<const double> values) noexcept {
  double m = 0.0;
  for (double x : values) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(std::span<const std::complex<double>> values) noexcept {
  double m = 0.0;
  for (auto x : values) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace wignerlab
