#pragma once

#include "wignerlab/grid.hpp"
#include "wignerlab/tolerances.hpp"

namespace wignerlab {

enum class Provenance { constructed, superposed, loaded };

struct WignerFunction {
  RealField2D f;
  Provenance provenance = Provenance::constructed;
  bool normalized = false;

  const PhaseGrid& grid() const noexcept { return f.grid; }
  double hbar() const noexcept { return f.grid.hbar; }
};

void validate_wigner(const WignerFunction& w,
                     const Tolerances& tol = default_tolerances());

// plain rectangle-rule overlap integral of two fields on the same grid
double field_overlap(const RealField2D& a, const RealField2D& b);

inline double wigner_purity(const WignerFunction& w) {
  return field_overlap(w.f, w.f);
}

}  // namespace wignerlab
