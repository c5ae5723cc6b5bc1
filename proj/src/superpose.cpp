#include "wignerlab/superpose.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "wignerlab/error.hpp"
#include "wignerlab/sum.hpp"
#include "wignerlab/transforms.hpp"

namespace wignerlab {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ResolvedSpec {
  double a = 0.0, b = 0.0, epsilon = 0.0;
  int i1 = 0, i2 = 0;       // anchor sample indices
  double x1 = 0.0, x2 = 0.0;
  double m1 = 0.0, m2 = 0.0;  // anchor marginals
};

void require_pair(const WignerFunction& w1, const WignerFunction& w2,
                  const Tolerances& tol) {
  const PairReport report = validate_pair(w1, w2, tol);
  if (report.passed) return;
  std::string failing;
  for (const auto& c : report.checks)
    if (!c.passed) failing += (failing.empty() ? "" : ", ") + c.name;
  throw_validation("input pair rejected: " + failing);
}

int resolve_anchor(const RealField2D& f, const std::vector<double>& prof,
                   std::optional<double> x, const Tolerances& tol,
                   std::vector<std::string>* warnings, const char* what) {
  if (!x.has_value()) return auto_anchor_index(f, tol);
  const int i = snap_index(f.grid.q, *x, tol, warnings, what);
  if (prof[i] < tol.marginal_floor)
    throw_degenerate(std::string(what) + ": marginal at " +
                     fmt(*x) + " is below the floor");
  return i;
}

ResolvedSpec resolve(const WignerFunction& w1, const WignerFunction& w2,
                     const SuperpositionSpec& spec, const Tolerances& tol,
                     std::vector<std::string>* warnings) {
  if (!(std::isfinite(spec.A) && std::isfinite(spec.B)) || spec.A < 0.0 ||
      spec.B < 0.0)
    throw_validation("amplitudes must be finite and nonnegative");
  if (spec.A == 0.0 && spec.B == 0.0)
    throw_validation("amplitudes must not both vanish");
  ResolvedSpec r;
  r.a = spec.A;
  r.b = spec.B;
  r.epsilon = reduce_epsilon(spec.epsilon, warnings);
  const auto prof1 = marginal_profile(w1.f);
  const auto prof2 = marginal_profile(w2.f);
  r.i1 = resolve_anchor(w1.f, prof1, spec.x1, tol, warnings, "anchor x1");
  r.i2 = resolve_anchor(w2.f, prof2, spec.x2, tol, warnings, "anchor x2");
  r.x1 = w1.grid().q.coord(r.i1);
  r.x2 = w2.grid().q.coord(r.i2);
  r.m1 = prof1[r.i1];
  r.m2 = prof2[r.i2];
  return r;
}

RealField2D cross_fast_impl(const WignerFunction& w1, const WignerFunction& w2,
                            const ResolvedSpec& r, Exec exec) {
  RealField2D out = make_field(w1.grid());
  if (r.a * r.b == 0.0) return out;
  const auto g1 = anchored_product(w1.f, r.i1, exec);
  const auto g2 = anchored_product(w2.f, r.i2, exec);
  const auto f = cross_transform(g1, g2, w1.grid().q, Method::fft, exec);
  const std::complex<double> phase = std::polar(1.0, r.epsilon);
  const double scale = r.a * r.b / (kPi * w1.hbar());
  for (size_t idx = 0; idx < out.v.size(); ++idx)
    out.v[idx] = scale * (phase * f[idx]).real();
  return out;
}

}  // namespace

PairReport validate_pair(const WignerFunction& w1, const WignerFunction& w2,
                         const Tolerances& tol) {
  if (!(w1.grid() == w2.grid()))
    throw_validation("superposition inputs must share one phase grid");
  PairReport r;
  auto add = [&](CheckReport c, const char* suffix) {
    c.name += suffix;
    r.checks.push_back(std::move(c));
  };
  add(check_orthogonality(w1, w2, tol), "");
  add(check_purity(w1, tol), "_1");
  add(check_purity(w2, tol), "_2");
  add(check_norm(w1, tol), "_1");
  add(check_norm(w2, tol), "_2");
  r.passed = true;
  for (const auto& c : r.checks) r.passed = r.passed && c.passed;
  return r;
}

std::pair<double, double> choose_anchors(const WignerFunction& w1,
                                         const WignerFunction& w2,
                                         const Tolerances& tol) {
  return {w1.grid().q.coord(auto_anchor_index(w1.f, tol)),
          w2.grid().q.coord(auto_anchor_index(w2.f, tol))};
}

double reduce_epsilon(double epsilon, std::vector<std::string>* warnings) {
  if (!std::isfinite(epsilon)) throw_validation("epsilon must be finite");
  if (epsilon >= 0.0 && epsilon < kTwoPi) return epsilon;
  double r = std::fmod(epsilon, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (warnings)
    warnings->push_back("epsilon reduced mod 2pi to " + std::to_string(r));
  return r;
}

RealField2D cross_term_direct(const WignerFunction& w1,
                              const WignerFunction& w2,
                              const SuperpositionSpec& spec, int subsample,
                              Exec exec, const Tolerances& tol) {
  require_pair(w1, w2, tol);
  const int n = w1.grid().q.n;
  if (n > tol.oracle_max_n)
    throw_validation("direct cross term is capped at n = " +
                     std::to_string(tol.oracle_max_n));
  if (subsample < 1 || n % subsample != 0)
    throw_validation("subsample factor must divide the grid size");
  const ResolvedSpec r = resolve(w1, w2, spec, tol, nullptr);

  RealField2D out = make_field(w1.grid());
  if (r.a * r.b == 0.0) return out;

  const SampleGrid1D& qg = w1.grid().q;
  const SampleGrid1D& pg = w1.grid().p;
  const double hbar = w1.hbar();
  const int s = subsample;
  // each retained sample stands for s steps on every axis
  const double measure = (2.0 * qg.dx) * pg.dx * pg.dx * s * s * s;
  const double scale = r.a * r.b / (kPi * hbar);

  // half-step q arguments resolved by band-limited refinement, evaluated with
  // direct sums so the oracle stays off the fft path; zero outside the domain
  const auto up1 = upsample_rows(w1.f, Method::quadrature);
  const auto up2 = upsample_rows(w2.f, Method::quadrature);
  auto wval = [&](const std::vector<double>& up, int row, int kp) -> double {
    if (row < 0 || row > 2 * n - 2) return 0.0;
    return up[size_t(row) * n + kp];
  };

  parallel_for(n, exec, [&](int i) {
    const double q = qg.coord(i);
    for (int k = 0; k < n; ++k) {
      const double p = pg.coord(k);
      KahanSum acc;
      for (int j = -n / 2; j < n / 2; j += s) {
        const double y = 2.0 * j * qg.dx;
        const int s1 = i - j + r.i1;  // rows of (q - y/2 + x1)/2 and partner
        const int s2 = i + j + r.i2;
        for (int k1 = 0; k1 < n; k1 += s) {
          const double p1 = pg.coord(k1);
          const double v1 = wval(up1, s1, k1);
          if (v1 == 0.0) continue;
          for (int k2 = 0; k2 < n; k2 += s) {
            const double p2 = pg.coord(k2);
            const double v2 = wval(up2, s2, k2);
            if (v2 == 0.0) continue;
            const double arg =
                r.epsilon + ((2.0 * p - p1 - p2) * 0.5 * y + (p1 - p2) * q -
                             p1 * r.x1 + p2 * r.x2) /
                                hbar;
            acc.add(v1 * v2 * std::cos(arg));
          }
        }
      }
      out.at(i, k) = scale * measure * acc.value();
    }
  });
  return out;
}

RealField2D cross_term_fast(const WignerFunction& w1, const WignerFunction& w2,
                            const SuperpositionSpec& spec, Exec exec,
                            const Tolerances& tol) {
  require_pair(w1, w2, tol);
  return cross_fast_impl(w1, w2, resolve(w1, w2, spec, tol, nullptr), exec);
}

SuperpositionResult superpose_wigner(const WignerFunction& w1,
                                     const WignerFunction& w2,
                                     const SuperpositionSpec& spec, Exec exec,
                                     const Tolerances& tol,
                                     std::vector<std::string>* warnings) {
  require_pair(w1, w2, tol);
  const ResolvedSpec r = resolve(w1, w2, spec, tol, warnings);

  RealField2D t = cross_fast_impl(w1, w2, r, exec);
  const double d1 = r.a * r.a * r.m1;
  const double d2 = r.b * r.b * r.m2;
  for (size_t idx = 0; idx < t.v.size(); ++idx)
    t.v[idx] += d1 * w1.f.v[idx] + d2 * w2.f.v[idx];

  const double total = integrate_2d(t);
  if (!(total > tol.t_total_floor))
    throw_degenerate("superposition integral " + fmt(total) +
                     " is not positive");
  for (double& v : t.v) v /= total;

  SuperpositionResult res{WignerFunction{std::move(t), Provenance::superposed,
                                         true},
                          total,
                          r.a / std::sqrt(total),
                          r.b / std::sqrt(total),
                          {},
                          {},
                          r.x1,
                          r.x2,
                          {}};
  res.c1 = res.c1_abs;
  res.c2 = std::polar(res.c2_abs, -r.epsilon);

  res.checks.push_back(check_purity(res.W, tol));
  res.checks.push_back(check_norm(res.W, tol));
  const double constraint =
      res.c1_abs * res.c1_abs * r.m1 + res.c2_abs * res.c2_abs * r.m2;
  res.checks.push_back(make_check("coefficient_constraint", constraint, 1.0,
                                  tol.result_constraint,
                                  ToleranceMode::absolute));
  for (const auto& c : res.checks)
    if (!c.passed)
      throw_validation("superposition output failed the " + c.name +
                       " check: measured " + fmt(c.measured));
  return res;
}

WaveFunction recover_hilbert_superposition(const SuperpositionResult& result,
                                           const WignerFunction& w1,
                                           const WignerFunction& w2,
                                           const Tolerances& tol) {
  if (!(w1.grid() == w2.grid()))
    throw_validation("superposition inputs must share one phase grid");
  const int i1 = snap_index(w1.grid().q, result.x1_used, tol);
  const int i2 = snap_index(w2.grid().q, result.x2_used, tol);
  const auto g1 = anchored_product(w1.f, i1, Exec::parallel);
  const auto g2 = anchored_product(w2.f, i2, Exec::parallel);

  WaveFunction out{w1.grid().q, w1.hbar(),
                   std::vector<std::complex<double>>(g1.size()), false};
  for (size_t i = 0; i < g1.size(); ++i)
    out.psi[i] = result.c1 * g1[i] + result.c2 * g2[i];

  KahanSum norm2;
  for (auto z : out.psi) norm2.add(std::norm(z));
  const double nrm = norm2.value() * out.grid.dx;
  if (std::abs(nrm - 1.0) > tol.recon_norm)
    throw_validation("recovered state norm " + std::to_string(nrm) +
                     " deviates beyond tolerance");
  const double inv = 1.0 / std::sqrt(nrm);
  for (auto& z : out.psi) z *= inv;
  out.normalized = true;
  validate_wavefunction(out, tol);
  return out;
}

WignerFunction downsample_wigner(const WignerFunction& w, int factor) {
  validate_field(w.f);
  const int n = w.grid().q.n;
  if (factor < 1 || n % factor != 0)
    throw_validation("downsample factor must divide the grid size");
  const int m = n / factor;
  if (m < 8 || m % 2 != 0)
    throw_validation("downsampled grid would be too small");
  const SampleGrid1D coarse_q = make_grid(w.grid().q.x0,
                                          w.grid().q.dx * factor, m);
  RealField2D out = make_field(make_conjugate_grid(coarse_q, w.hbar()));
  const int p_off = n / 2 - m / 2;  // keep the central band, dp unchanged
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      out.at(i, k) = w.f.at(i * factor, k + p_off);
  return WignerFunction{std::move(out), w.provenance, false};
}

}  // namespace wignerlab
