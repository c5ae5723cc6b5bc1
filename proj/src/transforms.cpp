#include "wignerlab/transforms.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "wignerlab/detail/fft.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/sum.hpp"

namespace wignerlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// multiply by e^{-i pi d / 2} exactly (quarter turns stay in {1,-i,-1,i})
std::complex<double> quarter_turn(std::complex<double> z, long d) {
  switch (((d % 4) + 4) % 4) {
    case 0: return z;
    case 1: return {z.imag(), -z.real()};
    case 2: return -z;
    default: return {-z.imag(), z.real()};
  }
}

// kernel row i in FFT layout: g_m = (-1)^m A_K(x_{i-j(m)}, x_{i+j(m)}),
// j(m) = m for m < n/2 and m - n otherwise; out-of-range samples are zero
template <class KernelAt>
void fill_row(int i, int n, const KernelAt& at,
              std::vector<std::complex<double>>& g) {
  for (int m = 0; m < n; ++m) {
    const int j = (m < n / 2) ? m : m - n;
    const int lo = i - j, hi = i + j;
    std::complex<double> f = 0.0;
    if (lo >= 0 && lo < n && hi >= 0 && hi < n) f = at(lo, hi);
    g[m] = (m % 2 == 0) ? f : -f;
  }
}

template <class KernelAt>
void forward_rows(int n, double dx, Method method, Exec exec,
                  const KernelAt& at,
                  std::vector<std::complex<double>>& out) {
  const double scale = 2.0 * dx;
  if (method == Method::fft) {
    parallel_for(n, exec, [&](int i) {
      std::vector<std::complex<double>> g(n);
      fill_row(i, n, at, g);
      detail::fft(g.data(), n, +1);
      for (int k = 0; k < n; ++k) out[size_t(i) * n + k] = scale * g[k];
    });
    return;
  }
  // reference path: literal quadrature over y with per-term phases
  parallel_for(n, exec, [&](int i) {
    for (int k = 0; k < n; ++k) {
      KahanSumComplex acc;
      for (int j = -n / 2; j < n / 2; ++j) {
        const int lo = i - j, hi = i + j;
        if (lo < 0 || lo >= n || hi < 0 || hi >= n) continue;
        const double theta = 2.0 * kPi * j * (k - n / 2.0) / n;
        acc.add(at(lo, hi) * std::polar(1.0, theta));
      }
      out[size_t(i) * n + k] = scale * acc.value();
    }
  });
}

RealField2D collapse_to_real(const PhaseGrid& pg,
                             const std::vector<std::complex<double>>& field,
                             double imag_tol, const char* what) {
  double resid = 0.0;
  for (auto z : field) resid = std::max(resid, std::abs(z.imag()));
  if (resid > imag_tol)
    throw_validation(std::string(what) + ": imaginary residual " +
                     fmt(resid) +
                     " exceeds tolerance (input not hermitian?)");
  RealField2D out = make_field(pg);
  for (size_t idx = 0; idx < field.size(); ++idx)
    out.v[idx] = field[idx].real();
  return out;
}

}  // namespace

std::vector<double> upsample_rows(const RealField2D& a, Method method) {
  const int n = a.grid.q.n;
  std::vector<double> up(size_t(2 * n) * n);
  for (int k = 0; k < n; ++k) {
    std::vector<std::complex<double>> col(n);
    for (int i = 0; i < n; ++i) col[i] = a.at(i, k);
    const auto fine = (method == Method::fft) ? detail::upsample2(col)
                                              : detail::upsample2_direct(col);
    for (int s = 0; s < 2 * n; ++s) up[size_t(s) * n + k] = fine[s].real();
  }
  return up;
}

double field_overlap(const RealField2D& a, const RealField2D& b) {
  validate_field(a);
  validate_field(b);
  if (!(a.grid == b.grid))
    throw_validation("field_overlap requires matching phase grids");
  KahanSum acc;
  for (size_t idx = 0; idx < a.v.size(); ++idx) acc.add(a.v[idx] * b.v[idx]);
  return acc.value() * a.grid.q.dx * a.grid.p.dx;
}

void validate_wigner(const WignerFunction& w, const Tolerances& tol) {
  validate_field(w.f);
  if (w.normalized) {
    KahanSum acc;
    for (double x : w.f.v) acc.add(x);
    const double total = acc.value() * w.grid().q.dx * w.grid().p.dx;
    if (std::abs(total - 1.0) > tol.wigner_norm)
      throw_validation("wigner function integrates to " +
                       fmt(total) + ", expected 1");
  }
}

RealField2D weyl_wigner_forward(const OperatorKernel& a, Method method,
                                Exec exec, const Tolerances& tol) {
  return weyl_wigner_forward(a, make_conjugate_grid(a.grid, a.hbar), method,
                             exec, tol);
}

RealField2D weyl_wigner_forward(const OperatorKernel& a, const PhaseGrid& pg,
                                Method method, Exec exec,
                                const Tolerances& tol) {
  if (!(pg == make_conjugate_grid(a.grid, a.hbar)))
    throw_validation("phase grid is not conjugate to the kernel grid");
  const int n = a.grid.n;
  std::vector<std::complex<double>> field(size_t(n) * n);
  auto at = [&](int lo, int hi) { return a.k(lo, hi); };
  forward_rows(n, a.grid.dx, method, exec, at, field);
  return collapse_to_real(pg, field, tol.imag_residual, "weyl_wigner_forward");
}

OperatorKernel weyl_quantize(const RealField2D& a, Method method, Exec exec,
                             const Tolerances& tol) {
  validate_field(a);
  const int n = a.grid.q.n;
  const double dp = a.grid.p.dx;
  const double hbar = a.grid.hbar;
  const double scale = dp / (2.0 * kPi * hbar);
  const std::vector<double> up = upsample_rows(a, method);

  Eigen::MatrixXcd k(n, n);
  if (method == Method::fft) {
    // one zero-padded transform per anti-diagonal s = u + v
    parallel_for(2 * n - 1, exec, [&](int s) {
      std::vector<std::complex<double>> h(2 * n, 0.0);
      for (int kk = 0; kk < n; ++kk) h[kk] = up[size_t(s) * n + kk];
      detail::fft(h.data(), 2 * n, +1);
      const int ulo = std::max(0, s - (n - 1));
      const int uhi = std::min(n - 1, s);
      for (int u = ulo; u <= uhi; ++u) {
        const int v = s - u;
        const int d = u - v;
        const std::complex<double> sum = h[(d + 2 * n) % (2 * n)];
        k(u, v) = scale * quarter_turn(sum, d);
      }
    });
  } else {
    parallel_for(2 * n - 1, exec, [&](int s) {
      const int ulo = std::max(0, s - (n - 1));
      const int uhi = std::min(n - 1, s);
      for (int u = ulo; u <= uhi; ++u) {
        const int v = s - u;
        const int d = u - v;
        KahanSumComplex acc;
        for (int kk = 0; kk < n; ++kk) {
          const double theta = kPi * (kk - n / 2.0) * d / n;
          acc.add(up[size_t(s) * n + kk] * std::polar(1.0, theta));
        }
        k(u, v) = scale * acc.value();
      }
    });
  }

  // symmetrize: real symbols quantize to hermitian kernels
  const double defect = hermiticity_defect(k);
  if (defect > tol.quantize_hermitian)
    throw_validation("quantized kernel hermiticity defect " +
                     fmt(defect));
  Eigen::MatrixXcd sym = 0.5 * (k + k.adjoint());
  return OperatorKernel{a.grid.q, hbar, std::move(sym), true};
}

WignerFunction wigner_from_wavefunction(const WaveFunction& phi, Method method,
                                        Exec exec, const Tolerances& tol) {
  validate_wavefunction(phi, tol);
  if (!phi.normalized)
    throw_validation("wigner_from_wavefunction requires a normalized state");
  const PhaseGrid pg = make_conjugate_grid(phi.grid, phi.hbar);
  const int n = phi.grid.n;
  std::vector<std::complex<double>> field(size_t(n) * n);
  const double norm = 1.0 / (2.0 * kPi * phi.hbar);
  auto at = [&](int lo, int hi) {
    return phi.psi[lo] * std::conj(phi.psi[hi]);
  };
  forward_rows(n, phi.grid.dx, method, exec, at, field);
  RealField2D f = collapse_to_real(pg, field, tol.imag_residual,
                                   "wigner_from_wavefunction");
  for (double& x : f.v) x *= norm;
  WignerFunction w{std::move(f), Provenance::constructed, true};
  validate_wigner(w, tol);
  return w;
}

std::vector<std::complex<double>> cross_transform(
    const std::vector<std::complex<double>>& g1,
    const std::vector<std::complex<double>>& g2, const SampleGrid1D& g,
    Method method, Exec exec) {
  if (int(g1.size()) != g.n || int(g2.size()) != g.n)
    throw_validation("cross_transform: sample count does not match the grid");
  std::vector<std::complex<double>> field(size_t(g.n) * g.n);
  auto at = [&](int lo, int hi) { return g1[lo] * std::conj(g2[hi]); };
  forward_rows(g.n, g.dx, method, exec, at, field);
  return field;
}

std::vector<std::complex<double>> anchored_product(const RealField2D& w,
                                                   int anchor_index,
                                                   Exec exec) {
  validate_field(w);
  const int n = w.grid.q.n;
  if (anchor_index < 0 || anchor_index >= n)
    throw_validation("anchor index out of range");
  const double dp = w.grid.p.dx;
  const std::vector<double> up = upsample_rows(w, Method::fft);
  std::vector<std::complex<double>> g(n);
  parallel_for(n, exec, [&](int i) {
    const int s = i + anchor_index;  // midpoint row on the half-step lattice
    KahanSumComplex acc;
    for (int k = 0; k < n; ++k) {
      const double theta = kPi * (k - n / 2.0) * (i - anchor_index) / n;
      acc.add(up[size_t(s) * n + k] * std::polar(1.0, theta));
    }
    g[i] = acc.value() * dp;
  });
  return g;
}

std::vector<double> marginal_profile(const RealField2D& f) {
  const int n = f.grid.q.n;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    KahanSum row;
    for (int k = 0; k < f.grid.p.n; ++k) row.add(f.at(i, k));
    out[i] = row.value() * f.grid.p.dx;
  }
  return out;
}

int auto_anchor_index(const RealField2D& f, const Tolerances& tol) {
  const auto prof = marginal_profile(f);
  int best = 0;
  for (int i = 1; i < int(prof.size()); ++i)
    if (prof[i] > prof[best]) best = i;
  if (prof[best] < tol.marginal_floor)
    throw_degenerate("no sample with marginal above " +
                     fmt(tol.marginal_floor) +
                     " (degenerate field)");
  return best;
}

int snap_index(const SampleGrid1D& g, double x, const Tolerances& tol,
               std::vector<std::string>* warnings, const char* what) {
  if (!std::isfinite(x)) throw_validation("non-finite coordinate");
  long j = std::lround((x - g.x0) / g.dx);
  j = std::max(0l, std::min(long(g.n - 1), j));
  const double off = std::abs(x - g.coord(int(j)));
  if (off > tol.marginal_snap * g.dx && warnings)
    warnings->push_back(std::string(what) + ": coordinate " +
                        fmt(x) + " snapped to grid sample " +
                        fmt(g.coord(int(j))));
  return int(j);
}

double marginal(const WignerFunction& w, double x, const Tolerances& tol,
                std::vector<std::string>* warnings) {
  validate_field(w.f);
  const int i = snap_index(w.grid().q, x, tol, warnings, "marginal");
  KahanSum row;
  for (int k = 0; k < w.grid().p.n; ++k) row.add(w.f.at(i, k));
  return row.value() * w.grid().p.dx;
}

WaveFunction reconstruct_wavefunction(const WignerFunction& w,
                                      std::optional<double> x0,
                                      const Tolerances& tol,
                                      std::vector<std::string>* warnings) {
  validate_wigner(w, tol);
  const double hbar = w.hbar();
  const double pur = wigner_purity(w) * 2.0 * kPi * hbar;
  if (std::abs(pur - 1.0) > tol.purity_gate)
    throw_validation("reconstruction requires a pure state: 2*pi*hbar*purity "
                     "= " + fmt(pur));

  const auto prof = marginal_profile(w.f);
  int anchor;
  if (x0.has_value()) {
    anchor = snap_index(w.grid().q, *x0, tol, warnings, "reconstruct anchor");
    if (prof[anchor] < 0.0 && std::abs(prof[anchor]) > tol.marginal_floor)
      throw_degenerate("marginal at anchor is negative (corrupted field)");
    if (prof[anchor] < tol.marginal_floor)
      throw_degenerate("marginal at anchor " + fmt(*x0) +
                       " is below " + fmt(tol.marginal_floor));
  } else {
    anchor = auto_anchor_index(w.f, tol);
  }

  const auto g = anchored_product(w.f, anchor, Exec::parallel);
  const std::complex<double> ga = g[anchor];
  if (std::abs(ga.imag()) > 1e-6 * std::abs(ga) || ga.real() <= 0.0)
    throw_degenerate("anchored product at the anchor is not positive "
                     "(corrupted field)");
  const double root = std::sqrt(ga.real());

  WaveFunction out{w.grid().q, hbar,
                   std::vector<std::complex<double>>(g.size()), false};
  for (size_t i = 0; i < g.size(); ++i) out.psi[i] = g[i] / root;

  KahanSum norm2;
  for (auto z : out.psi) norm2.add(std::norm(z));
  const double nrm = norm2.value() * out.grid.dx;
  if (std::abs(nrm - 1.0) > tol.recon_norm)
    throw_validation("reconstructed state norm " + fmt(nrm) +
                     " deviates beyond tolerance");
  const double inv = 1.0 / std::sqrt(nrm);
  for (auto& z : out.psi) z *= inv;
  out.normalized = true;
  validate_wavefunction(out, tol);
  return out;
}

}  // namespace wignerlab
