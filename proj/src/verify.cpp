#include "wignerlab/verify.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "json.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/sum.hpp"

namespace wignerlab {

CheckReport make_check(std::string name, double measured, double expected,
                       double tolerance, ToleranceMode mode) {
  const double bound = (mode == ToleranceMode::relative)
                           ? tolerance * std::abs(expected)
                           : tolerance;
  const bool passed = std::abs(measured - expected) <= bound;
  return CheckReport{std::move(name), measured, expected, tolerance, mode,
                     passed};
}

std::string to_json_line(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["measured"] = r.measured;
  j["expected"] = r.expected;
  j["tol"] = r.tolerance;
  j["passed"] = r.passed;
  return j.dump();
}

CheckReport check_purity(const WignerFunction& w, const Tolerances& tol) {
  const double expected = 1.0 / (2.0 * std::numbers::pi * w.hbar());
  return make_check("purity", wigner_purity(w), expected, tol.check_purity_rel,
                    ToleranceMode::relative);
}

CheckReport check_norm(const WignerFunction& w, const Tolerances& tol) {
  return make_check("norm", integrate_2d(w.f), 1.0, tol.check_norm_abs,
                    ToleranceMode::absolute);
}

CheckReport check_orthogonality(const WignerFunction& w1,
                                const WignerFunction& w2,
                                const Tolerances& tol) {
  const double scale = 2.0 * std::numbers::pi * w1.hbar();
  return make_check("orthogonality", field_overlap(w1.f, w2.f), 0.0,
                    tol.check_orthogonality_abs / scale,
                    ToleranceMode::absolute);
}

double implied_overlap_sq(const WignerFunction& w1, const WignerFunction& w2) {
  return 2.0 * std::numbers::pi * w1.hbar() * field_overlap(w1.f, w2.f);
}

FieldMetrics compare_fields(const RealField2D& a, const RealField2D& b) {
  validate_field(a);
  validate_field(b);
  if (!(a.grid == b.grid))
    throw_validation("compare_fields requires matching phase grids");
  const double cell = a.grid.q.dx * a.grid.p.dx;
  FieldMetrics m;
  KahanSum diff2, ref2;
  for (size_t i = 0; i < a.v.size(); ++i) {
    const double d = a.v[i] - b.v[i];
    m.max_abs = std::max(m.max_abs, std::abs(d));
    diff2.add(d * d);
    ref2.add(a.v[i] * a.v[i]);
  }
  m.l2 = std::sqrt(diff2.value() * cell);
  const double ref = std::sqrt(ref2.value() * cell);
  m.rel_l2 = (ref > 0.0) ? m.l2 / ref : (m.l2 > 0.0 ? INFINITY : 0.0);
  return m;
}

}  // namespace wignerlab
