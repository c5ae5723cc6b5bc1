#pragma once

#include <string>

#include "wignerlab/grid.hpp"
#include "wignerlab/tolerances.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

enum class ToleranceMode { absolute, relative };

// One gate result. passed means |measured - expected| <= tolerance, taken
// relative to |expected| when mode says so.
struct CheckReport {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  ToleranceMode mode = ToleranceMode::absolute;
  bool passed = false;
};

CheckReport make_check(std::string name, double measured, double expected,
                       double tolerance, ToleranceMode mode);

// {"name":...,"measured":...,"expected":...,"tol":...,"passed":...}
std::string to_json_line(const CheckReport& r);

// integral of W^2 against 1/(2 pi hbar), relative tolerance
CheckReport check_purity(const WignerFunction& w,
                         const Tolerances& tol = default_tolerances());

// integral of W against 1, absolute tolerance
CheckReport check_norm(const WignerFunction& w,
                       const Tolerances& tol = default_tolerances());

// integral of W1 W2 against 0, absolute tolerance scaled by 1/(2 pi hbar)
CheckReport check_orthogonality(const WignerFunction& w1,
                                const WignerFunction& w2,
                                const Tolerances& tol = default_tolerances());

// the squared state overlap implied by a field overlap: 2 pi hbar * integral
double implied_overlap_sq(const WignerFunction& w1, const WignerFunction& w2);

struct FieldMetrics {
  double max_abs = 0.0;
  double l2 = 0.0;
  double rel_l2 = 0.0;  // l2 normalized by the l2 size of the first field
};

FieldMetrics compare_fields(const RealField2D& a, const RealField2D& b);

}  // namespace wignerlab
