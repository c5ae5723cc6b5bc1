#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "wignerlab/error.hpp"
#include "wignerlab/kernel.hpp"
#include "wignerlab/state.hpp"
#include "wignerlab/sum.hpp"
#include "wignerlab/transforms.hpp"
#include "wignerlab/wigner.hpp"

using namespace wignerlab;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInvPi = 0.3183098861837907;        // frozen oracle
constexpr double kInvTwoPi = 0.15915494309189535;    // frozen oracle
constexpr double kInvSqrtPi = 0.5641895835477563;    // frozen oracle

SampleGrid1D default_qgrid() { return make_grid(-8.0, 1.0 / 16.0, 256); }

// coarse grid with the same span, for quadrature cross-checks
SampleGrid1D coarse_qgrid() { return make_grid(-8.0, 0.25, 64); }

double max_abs_diff(const RealField2D& a, const RealField2D& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.v.size(); ++i)
    m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

// Laguerre closed form for oscillator states, L_0 = 1, L_1(z) = 1 - z
double oscillator_wigner(int k, double q, double p, double hbar) {
  const double z = 2.0 * (q * q + p * p) / hbar;
  const double lag = (k == 0) ? 1.0 : 1.0 - z;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign / (kPi * hbar) * lag * std::exp(-z / 2.0);
}
}  // namespace

TEST_CASE("ground state transforms to the frozen gaussian field") {
  const auto g = default_qgrid();
  const auto phi = harmonic_oscillator_state(0, g, 1.0);
  const auto w = wigner_from_wavefunction(phi);
  CHECK(w.normalized);
  CHECK(w.f.at(128, 128) == doctest::Approx(kInvPi).epsilon(1e-10));
  double worst = 0.0;
  for (int i = 0; i < 256; ++i)
    for (int k = 0; k < 256; ++k) {
      const double q = w.grid().q.coord(i);
      const double p = w.grid().p.coord(k);
      worst = std::max(worst,
                       std::abs(w.f.at(i, k) - oscillator_wigner(0, q, p, 1.0)));
    }
  CHECK(worst <= 1e-6);
}

TEST_CASE("first excited state matches its closed form and is negative at the origin") {
  const auto g = default_qgrid();
  const auto phi = harmonic_oscillator_state(1, g, 1.0);
  const auto w = wigner_from_wavefunction(phi);
  CHECK(w.f.at(128, 128) == doctest::Approx(-kInvPi).epsilon(1e-5));
  double worst = 0.0;
  for (int i = 0; i < 256; ++i)
    for (int k = 0; k < 256; ++k) {
      const double q = w.grid().q.coord(i);
      const double p = w.grid().p.coord(k);
      worst = std::max(worst,
                       std::abs(w.f.at(i, k) - oscillator_wigner(1, q, p, 1.0)));
    }
  CHECK(worst <= 1e-6);
}

TEST_CASE("displaced gaussian transforms to the shifted gaussian field") {
  const auto g = default_qgrid();
  const double p0 = kPi / 2.0;  // 8 p-grid steps
  const auto phi = gaussian_state(0.5, p0, 1.0, g, 1.0);
  const auto w = wigner_from_wavefunction(phi);
  double worst = 0.0;
  for (int i = 0; i < 256; ++i)
    for (int k = 0; k < 256; ++k) {
      const double q = w.grid().q.coord(i) - 0.5;
      const double p = w.grid().p.coord(k) - p0;
      worst = std::max(
          worst, std::abs(w.f.at(i, k) - kInvPi * std::exp(-q * q - p * p)));
    }
  CHECK(worst <= 1e-6);
}

TEST_CASE("unnormalized forward of the ground density peaks at 2") {
  const auto g = default_qgrid();
  const auto rho = density_kernel(harmonic_oscillator_state(0, g, 1.0));
  const auto f = weyl_wigner_forward(rho);
  CHECK(f.at(128, 128) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("zero kernel transforms to the zero field") {
  const auto g = coarse_qgrid();
  OperatorKernel zero{g, 1.0, Eigen::MatrixXcd::Zero(64, 64), true};
  const auto f = weyl_wigner_forward(zero);
  for (double v : f.v) CHECK(v == 0.0);
}

TEST_CASE("fft and quadrature forward paths agree") {
  const auto g = coarse_qgrid();
  const auto rho = density_kernel(harmonic_oscillator_state(2, g, 1.0));
  const auto fast = weyl_wigner_forward(rho, Method::fft);
  const auto slow = weyl_wigner_forward(rho, Method::quadrature, Exec::serial);
  CHECK(max_abs_diff(fast, slow) <= 1e-10);
}

TEST_CASE("serial and parallel forward paths are bitwise identical") {
  const auto g = coarse_qgrid();
  const auto rho = density_kernel(harmonic_oscillator_state(3, g, 1.0));
  const auto a = weyl_wigner_forward(rho, Method::fft, Exec::parallel);
  const auto b = weyl_wigner_forward(rho, Method::fft, Exec::serial);
  for (size_t i = 0; i < a.v.size(); ++i) CHECK(a.v[i] == b.v[i]);
}

TEST_CASE("p-sums reproduce the position marginal sample by sample") {
  const auto g = default_qgrid();
  for (int k : {0, 1, 5}) {
    const auto phi = harmonic_oscillator_state(k, g, 1.0);
    const auto w = wigner_from_wavefunction(phi);
    const auto prof = marginal_profile(w.f);
    double worst = 0.0;
    for (int i = 0; i < 256; ++i)
      worst = std::max(worst, std::abs(prof[i] - std::norm(phi.psi[i])));
    CHECK(worst <= 1e-13);
  }
}

TEST_CASE("wigner functions integrate to one and have purity 1/(2 pi hbar)") {
  for (double hbar : {0.5, 1.0, 2.0}) {
    const auto g = make_grid(-12.0, 3.0 / 32.0, 256);  // room for hbar = 2
    const auto phi = harmonic_oscillator_state(2, g, hbar);
    const auto w = wigner_from_wavefunction(phi);
    CHECK(std::abs(integrate_2d(w.f) - 1.0) <= 1e-12);
    const double purity = wigner_purity(w);
    CHECK(purity == doctest::Approx(kInvTwoPi / hbar).epsilon(1e-6));
  }
}

TEST_CASE("global phases are invisible, quarter turns exactly so") {
  const auto g = default_qgrid();
  const auto phi = harmonic_oscillator_state(2, g, 1.0);
  const auto w = wigner_from_wavefunction(phi);

  WaveFunction rot = phi;  // multiply by i: swap and negate, no rounding
  for (auto& z : rot.psi) z *= std::complex<double>(0.0, 1.0);
  const auto wi = wigner_from_wavefunction(rot);
  CHECK(max_abs_diff(w.f, wi.f) == 0.0);

  WaveFunction gen = phi;
  for (auto& z : gen.psi) z *= std::polar(1.0, 0.7);
  const auto wg = wigner_from_wavefunction(gen);
  CHECK(max_abs_diff(w.f, wg.f) <= 1e-13);
}

TEST_CASE("non-hermitian kernels are rejected by the imaginary-residual gate") {
  const auto g = coarse_qgrid();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(64, 64);
  m(0, 2) = 1.0;  // no (2,0) partner
  OperatorKernel bad{g, 1.0, std::move(m), false};
  CHECK_THROWS_AS(weyl_wigner_forward(bad), Error);
  try {
    weyl_wigner_forward(bad);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
  }
}

TEST_CASE("quantizing the constant symbol gives the half-band identity kernel") {
  const auto g = default_qgrid();
  const PhaseGrid pg = make_conjugate_grid(g, 1.0);
  RealField2D one = make_field(pg);
  for (double& v : one.v) v = 1.0;
  const auto k = weyl_quantize(one);
  CHECK(k.hermitian);
  const double dp = pg.p.dx;
  for (int u : {0, 100, 255})
    CHECK(std::abs(k.k(u, u) - 1.0 / (2.0 * g.dx)) <= 1e-9);
  // even separations vanish, odd ones carry the band-edge tail
  CHECK(std::abs(k.k(10, 12)) <= 1e-9);
  CHECK(std::abs(k.k(40, 44)) <= 1e-9);
  const double tail1 = dp / (2.0 * kPi) / std::sin(kPi / 512.0);
  CHECK(std::abs(k.k(10, 11)) == doctest::Approx(tail1).epsilon(1e-9));
  const double tail3 = dp / (2.0 * kPi) / std::sin(3.0 * kPi / 512.0);
  CHECK(std::abs(k.k(10, 13)) == doctest::Approx(tail3).epsilon(1e-9));
}

TEST_CASE("quantizing the position symbol puts the coordinates on the diagonal") {
  const auto g = default_qgrid();
  const PhaseGrid pg = make_conjugate_grid(g, 1.0);
  RealField2D ramp = make_field(pg);
  for (int i = 0; i < 256; ++i)
    for (int kk = 0; kk < 256; ++kk) ramp.at(i, kk) = g.coord(i);
  const auto k = weyl_quantize(ramp);
  for (int u : {0, 60, 128, 200, 255})
    CHECK(std::abs(k.k(u, u) - g.coord(u) / (2.0 * g.dx)) <= 1e-8);
  CHECK(std::abs(k.k(128, 128)) <= 1e-8);  // x = 0 row
}

TEST_CASE("quantize inverts the forward transform on smooth kernels") {
  const auto g = default_qgrid();
  for (int kk : {0, 1}) {
    const auto rho = density_kernel(harmonic_oscillator_state(kk, g, 1.0));
    const auto field = weyl_wigner_forward(rho);
    const auto back = weyl_quantize(field);
    double worst = 0.0;
    for (int u = 0; u < 256; ++u)
      for (int v = 0; v < 256; ++v)
        worst = std::max(worst, std::abs(back.k(u, v) - rho.k(u, v)));
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("quantize fft and quadrature paths agree on a small grid") {
  const auto g = make_grid(-4.0, 0.25, 32);
  RealField2D field = make_field(make_conjugate_grid(g, 1.0));
  for (int i = 0; i < 32; ++i)
    for (int kk = 0; kk < 32; ++kk) {
      const double q = field.grid.q.coord(i);
      const double p = field.grid.p.coord(kk);
      field.at(i, kk) = std::exp(-q * q - p * p);
    }
  const auto fast = weyl_quantize(field, Method::fft);
  const auto slow = weyl_quantize(field, Method::quadrature, Exec::serial);
  double worst = 0.0;
  for (int u = 0; u < 32; ++u)
    for (int v = 0; v < 32; ++v)
      worst = std::max(worst, std::abs(fast.k(u, v) - slow.k(u, v)));
  CHECK(worst <= 1e-10);
}

TEST_CASE("forward rejects a mismatched phase grid") {
  const auto g = coarse_qgrid();
  const auto rho = density_kernel(harmonic_oscillator_state(0, g, 1.0));
  PhaseGrid wrong = make_conjugate_grid(g, 1.0);
  wrong.p.dx *= 2.0;
  CHECK_THROWS_AS(weyl_wigner_forward(rho, wrong), Error);
}

TEST_CASE("anchored products factor into state values") {
  const auto g = default_qgrid();
  const auto phi = gaussian_state(0.5, kPi / 2.0, 1.0, g, 1.0);
  const auto w = wigner_from_wavefunction(phi);
  const int a = 136;  // x = 0.5
  const auto prod = anchored_product(w.f, a);
  double worst = 0.0;
  for (int i = 0; i < 256; ++i)
    worst = std::max(
        worst, std::abs(prod[i] - phi.psi[i] * std::conj(phi.psi[a])));
  CHECK(worst <= 1e-12);
  CHECK_THROWS_AS(anchored_product(w.f, -1), Error);
  CHECK_THROWS_AS(anchored_product(w.f, 256), Error);
}

TEST_CASE("reconstruction round trips the ground state with an automatic anchor") {
  const auto g = default_qgrid();
  const auto phi = harmonic_oscillator_state(0, g, 1.0);
  const auto w = wigner_from_wavefunction(phi);
  CHECK(auto_anchor_index(w.f) == 128);  // marginal peak at x = 0
  const auto rec = reconstruct_wavefunction(w);
  const auto ov = inner_product(rec, phi);
  CHECK(std::norm(ov) >= 1.0 - 1e-12);
  CHECK(rec.psi[128].real() > 0.0);
  CHECK(std::abs(rec.psi[128].imag()) <= 1e-14);
}

TEST_CASE("odd-state reconstruction picks the negative-side peak and flips sign") {
  const auto g = default_qgrid();
  const auto phi = harmonic_oscillator_state(1, g, 1.0);
  const auto w = wigner_from_wavefunction(phi);
  CHECK(auto_anchor_index(w.f) == 112);  // x = -1 wins the tie over x = +1
  const auto rec = reconstruct_wavefunction(w);
  CHECK(std::norm(inner_product(rec, phi)) >= 1.0 - 1e-10);
  CHECK(rec.psi[112].real() > 0.0);  // phase fixed at the anchor, so rec = -phi
  CHECK(phi.psi[112].real() < 0.0);
}

TEST_CASE("reconstruction at an explicit anchor recovers superposed states") {
  const auto g = default_qgrid();
  const auto p0 = harmonic_oscillator_state(0, g, 1.0);
  const auto p1 = harmonic_oscillator_state(1, g, 1.0);
  const auto mix = superpose_wavefunctions(
      p0, p1, 0.7745966692414834,
      std::polar(std::sqrt(0.4), 1.1));
  const auto w = wigner_from_wavefunction(mix);
  std::vector<std::string> warnings;
  const auto rec = reconstruct_wavefunction(w, 0.5, default_tolerances(),
                                            &warnings);
  CHECK(warnings.empty());  // 0.5 sits on the grid
  CHECK(std::norm(inner_product(rec, mix)) >= 1.0 - 1e-10);
}

TEST_CASE("anchors snap to the grid with a warning when off-sample") {
  const auto g = default_qgrid();
  const auto phi = harmonic_oscillator_state(0, g, 1.0);
  const auto w = wigner_from_wavefunction(phi);
  std::vector<std::string> warnings;
  const auto rec = reconstruct_wavefunction(w, 0.007, default_tolerances(),
                                            &warnings);
  CHECK(warnings.size() == 1);
  CHECK(std::norm(inner_product(rec, phi)) >= 1.0 - 1e-12);
  warnings.clear();
  CHECK(marginal(w, 0.0, default_tolerances(), &warnings) ==
        doctest::Approx(kInvSqrtPi).epsilon(1e-12));
  CHECK(warnings.empty());
}

TEST_CASE("reconstruction refuses anchors where the state vanishes") {
  const auto g = default_qgrid();
  const auto phi = harmonic_oscillator_state(1, g, 1.0);
  const auto w = wigner_from_wavefunction(phi);
  try {
    reconstruct_wavefunction(w, 0.0);  // node of the odd state
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }
}

TEST_CASE("reconstruction rejects mixed states at the purity gate") {
  const auto g = default_qgrid();
  const auto w0 = wigner_from_wavefunction(harmonic_oscillator_state(0, g, 1.0));
  const auto w1 = wigner_from_wavefunction(harmonic_oscillator_state(1, g, 1.0));
  RealField2D half = w0.f;
  for (size_t i = 0; i < half.v.size(); ++i)
    half.v[i] = 0.5 * (w0.f.v[i] + w1.f.v[i]);
  WignerFunction mixed{std::move(half), Provenance::loaded, true};
  CHECK(2.0 * kPi * wigner_purity(mixed) == doctest::Approx(0.5).epsilon(1e-6));
  try {
    reconstruct_wavefunction(mixed);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
  }
}

TEST_CASE("auto anchor refuses an empty field") {
  const auto g = coarse_qgrid();
  const auto zero = make_field(make_conjugate_grid(g, 1.0));
  try {
    auto_anchor_index(zero);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }
}

TEST_CASE("round trips hold away from hbar = 1") {
  for (double hbar : {0.5, 2.0}) {
    const auto g = make_grid(-12.0, 3.0 / 32.0, 256);
    const auto phi = harmonic_oscillator_state(1, g, hbar);
    const auto w = wigner_from_wavefunction(phi);
    const auto rec = reconstruct_wavefunction(w);
    CHECK(std::norm(inner_product(rec, phi)) >= 1.0 - 1e-10);
    double worst = 0.0;
    for (int i = 0; i < 256; ++i)
      for (int k = 0; k < 256; ++k) {
        const double q = w.grid().q.coord(i);
        const double p = w.grid().p.coord(k);
        worst = std::max(
            worst, std::abs(w.f.at(i, k) - oscillator_wigner(1, q, p, hbar)));
      }
    CHECK(worst <= 1e-6);
  }
}
