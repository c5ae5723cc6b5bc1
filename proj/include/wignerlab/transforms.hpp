#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "wignerlab/grid.hpp"
#include "wignerlab/kernel.hpp"
#include "wignerlab/parallel.hpp"
#include "wignerlab/state.hpp"
#include "wignerlab/tolerances.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

// fft is the production path; quadrature is the independent reference used by
// dual-path tests and the bench command.
enum class Method { fft, quadrature };

// W(A)(q,p) = integral A_K(q - y/2, q + y/2) e^{i p y / hbar} dy on the
// conjugate grid (y sampled at even multiples of dx). Output is real; the
// imaginary residual must stay below tol.imag_residual for hermitian input.
RealField2D weyl_wigner_forward(const OperatorKernel& a,
                                Method method = Method::fft,
                                Exec exec = Exec::parallel,
                                const Tolerances& tol = default_tolerances());
RealField2D weyl_wigner_forward(const OperatorKernel& a, const PhaseGrid& pg,
                                Method method = Method::fft,
                                Exec exec = Exec::parallel,
                                const Tolerances& tol = default_tolerances());

// W^{-1}(A)_K(x,y) = (2 pi hbar)^{-1} integral A([x+y]/2, p) e^{i p (x-y) /
// hbar} dp; midpoints off the coordinate grid are resolved by trigonometric
// refinement of A along q.
OperatorKernel weyl_quantize(const RealField2D& a, Method method = Method::fft,
                             Exec exec = Exec::parallel,
                             const Tolerances& tol = default_tolerances());

WignerFunction wigner_from_wavefunction(
    const WaveFunction& phi, Method method = Method::fft,
    Exec exec = Exec::parallel, const Tolerances& tol = default_tolerances());

// g(x) = integral W([x + x_anchor]/2, p) e^{i p (x - x_anchor) / hbar} dp,
// the anchored product phi(x) phi*(x_anchor), unnormalized.
std::vector<std::complex<double>> anchored_product(const RealField2D& w,
                                                   int anchor_index,
                                                   Exec exec = Exec::serial);

// F(q,p) = integral g1(q - y/2) conj(g2(q + y/2)) e^{i p y / hbar} dy for two
// sampled anchored products; complex-valued, feeds the superposition cross
// term.
std::vector<std::complex<double>> cross_transform(
    const std::vector<std::complex<double>>& g1,
    const std::vector<std::complex<double>>& g2, const SampleGrid1D& g,
    Method method = Method::fft, Exec exec = Exec::parallel);

// band-limited 2x refinement along q: 2n rows of n columns, row s sampling
// q = x0 + s dx / 2; even rows copy the input exactly
std::vector<double> upsample_rows(const RealField2D& a,
                                  Method method = Method::fft);

std::vector<double> marginal_profile(const RealField2D& f);

// nearest sample index, clamped; warns when the request is off-grid by more
// than tol.marginal_snap * dx
int snap_index(const SampleGrid1D& g, double x,
               const Tolerances& tol = default_tolerances(),
               std::vector<std::string>* warnings = nullptr,
               const char* what = "coordinate");

// argmax of the marginal profile, smallest index on ties; throws degenerate
// when no sample clears tol.marginal_floor
int auto_anchor_index(const RealField2D& f,
                      const Tolerances& tol = default_tolerances());

double marginal(const WignerFunction& w, double x,
                const Tolerances& tol = default_tolerances(),
                std::vector<std::string>* warnings = nullptr);

// x0 = nullopt selects the anchor automatically from the marginal peak
WaveFunction reconstruct_wavefunction(
    const WignerFunction& w, std::optional<double> x0 = std::nullopt,
    const Tolerances& tol = default_tolerances(),
    std::vector<std::string>* warnings = nullptr);

}  // namespace wignerlab
