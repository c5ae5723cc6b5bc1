#pragma once

#include <cstdint>
#include <vector>

#include "wignerlab/grid.hpp"
#include "wignerlab/kernel.hpp"
#include "wignerlab/tolerances.hpp"
#include "wignerlab/transforms.hpp"

namespace wignerlab {

// One sparse matrix element of a phase-space generator: density value of
// alpha at row point (x_iq, p_ip), column point (x_iq2, p_ip2). Quadrature
// weights dq*dp are applied at summation sites, never stored in values.
struct SparseEntry {
  int iq = 0;
  int ip = 0;
  int iq2 = 0;
  int ip2 = 0;
  double value = 0.0;
};

struct PhaseSpaceGenerator {
  PhaseGrid grid;
  std::vector<SparseEntry> entries;
  bool skew = true;  // checked against tol.skew_defect at construction
};

// max over stored pairs of |alpha(z, z') + alpha(z', z)| (duplicates summed)
double skew_defect(const PhaseSpaceGenerator& gen);

PhaseSpaceGenerator make_generator(const PhaseGrid& grid,
                                   std::vector<SparseEntry> entries,
                                   bool skew = true,
                                   const Tolerances& tol =
                                       default_tolerances());

// Second-order central differences, zero-padded at the boundary so the
// stencil pairs cancel exactly under transposition.
PhaseSpaceGenerator dq_generator(const PhaseGrid& grid);   // d/dq
PhaseSpaceGenerator dp_generator(const PhaseGrid& grid);   // -d/dp
PhaseSpaceGenerator rotation_generator(const PhaseGrid& grid);  // p d/dq - q d/dp

// `pairs` random off-diagonal couplings antisymmetrized by construction;
// deterministic for a fixed seed.
PhaseSpaceGenerator random_skew_generator(const PhaseGrid& grid, uint64_t seed,
                                          int pairs = 64);

// Generator kernel rewritten in the rotated arguments of the R transform:
// R(q, p, q', p') = alpha([q'-q]/2, [p'+p]/2, [q'+q]/2, [p'-p]/2). Each alpha
// entry becomes a point mass at difference coordinates (Q, P) sitting on the
// integer sum planes (sq, sp) of its index pairs.
struct RKernelEntry {
  double qdiff = 0.0;  // x_iq2 - x_iq
  double pdiff = 0.0;  // p_ip - p_ip2
  int sq = 0;          // iq + iq2
  int sp = 0;          // ip + ip2
  double value = 0.0;
};

std::vector<RKernelEntry> r_kernel(const PhaseSpaceGenerator& gen);

// RMS over seeded quadruples (q, p, q', p') of the factorization identity
// residual; small iff the generator is a symmetry-representation direction.
double factorizability_residual(const PhaseSpaceGenerator& gen, int samples,
                                uint64_t seed);

// A(q, p) = c + hbar * integral sin[(q p' + p q') / hbar] R(q', p', q, p)
// dq' dp', evaluated by sparse summation over the R entries.
RealField2D generator_symbol(const PhaseSpaceGenerator& gen, double c);

// Weyl quantization of a generator symbol (hermitian operator kernel).
OperatorKernel quantize_generator(const RealField2D& a,
                                  Method method = Method::fft,
                                  Exec exec = Exec::parallel,
                                  const Tolerances& tol =
                                      default_tolerances());

}  // namespace wignerlab
