#include "wignerlab/factorize.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>

#include "wignerlab/error.hpp"
#include "wignerlab/parallel.hpp"
#include "wignerlab/sum.hpp"

namespace wignerlab {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

uint64_t pair_key(int iq, int ip, int iq2, int ip2, int n) {
  const uint64_t row = uint64_t(iq) * n + ip;
  const uint64_t col = uint64_t(iq2) * n + ip2;
  return row * uint64_t(n) * uint64_t(n) + col;
}

void check_entry_range(const SparseEntry& e, int nq, int np) {
  if (e.iq < 0 || e.iq >= nq || e.iq2 < 0 || e.iq2 >= nq || e.ip < 0 ||
      e.ip >= np || e.ip2 < 0 || e.ip2 >= np)
    throw_validation("generator entry index out of range");
  if (!std::isfinite(e.value))
    throw_validation("generator entry value not finite");
}

// R entries grouped by their sum planes; the tent weights touch at most a
// 4x4 block of planes per evaluation point.
struct SliceIndex {
  const PhaseGrid* grid = nullptr;
  int max_plane = 0;
  std::unordered_map<uint64_t, std::vector<RKernelEntry>> buckets;

  static uint64_t key(int sq, int sp) {
    return (uint64_t(uint32_t(sq)) << 32) | uint32_t(sp);
  }
};

SliceIndex build_slice_index(const PhaseSpaceGenerator& gen,
                             std::vector<RKernelEntry> entries) {
  SliceIndex idx;
  idx.grid = &gen.grid;
  idx.max_plane = 2 * gen.grid.q.n - 2;
  for (auto& e : entries)
    idx.buckets[SliceIndex::key(e.sq, e.sp)].push_back(e);
  return idx;
}

double tent(double t) {
  const double a = std::abs(t);
  return a >= 2.0 ? 0.0 : (2.0 - a) / 4.0;
}

// integral sin[(wu p' + wv q') / hbar] R(q', p', c, d) dq' dp' by sparse
// summation; the tents spread each integer sum plane over its neighbors so
// that off-lattice (c, d) interpolate smoothly.
double slice_integral(const SliceIndex& idx, double wu, double wv, double c,
                      double d) {
  const PhaseGrid& g = *idx.grid;
  const double t1 = (c - 2.0 * g.q.x0) / g.q.dx;
  const double t2 = (d - 2.0 * g.p.x0) / g.p.dx;
  const int sq_lo = std::max(0, int(std::ceil(t1 - 2.0)));
  const int sq_hi = std::min(idx.max_plane, int(std::floor(t1 + 2.0)));
  const int sp_lo = std::max(0, int(std::ceil(t2 - 2.0)));
  const int sp_hi = std::min(idx.max_plane, int(std::floor(t2 + 2.0)));
  KahanSum acc;
  for (int sq = sq_lo; sq <= sq_hi; ++sq) {
    const double wq = tent(t1 - sq);
    if (wq == 0.0) continue;
    for (int sp = sp_lo; sp <= sp_hi; ++sp) {
      const double wp = tent(t2 - sp);
      if (wp == 0.0) continue;
      const auto it = idx.buckets.find(SliceIndex::key(sq, sp));
      if (it == idx.buckets.end()) continue;
      for (const RKernelEntry& e : it->second)
        acc.add(e.value * std::sin((wu * e.pdiff + wv * e.qdiff) / g.hbar) *
                wq * wp);
    }
  }
  return 4.0 * g.q.dx * g.p.dx * acc.value();
}

double stencil_scale(const PhaseGrid& g) {
  return 1.0 / (g.q.dx * g.p.dx);
}

}  // namespace

double skew_defect(const PhaseSpaceGenerator& gen) {
  const int n = gen.grid.q.n;
  std::unordered_map<uint64_t, double> acc;
  acc.reserve(gen.entries.size() * 2);
  for (const SparseEntry& e : gen.entries)
    acc[pair_key(e.iq, e.ip, e.iq2, e.ip2, n)] += e.value;
  double worst = 0.0;
  for (const auto& [key, val] : acc) {
    const uint64_t nn = uint64_t(n) * uint64_t(n);
    const uint64_t swapped = (key % nn) * nn + key / nn;
    const auto it = acc.find(swapped);
    const double partner = it == acc.end() ? 0.0 : it->second;
    worst = std::max(worst, std::abs(val + partner));
  }
  return worst;
}

PhaseSpaceGenerator make_generator(const PhaseGrid& grid,
                                   std::vector<SparseEntry> entries,
                                   bool skew, const Tolerances& tol) {
  if (grid.q.n != grid.p.n)
    throw_validation("generator grid must be conjugate square");
  for (const SparseEntry& e : entries)
    check_entry_range(e, grid.q.n, grid.p.n);
  PhaseSpaceGenerator gen{grid, std::move(entries), skew};
  if (skew) {
    const double defect = skew_defect(gen);
    if (defect > tol.skew_defect)
      throw_validation("generator is not skew-adjoint, defect " +
                       fmt(defect));
  }
  return gen;
}

PhaseSpaceGenerator dq_generator(const PhaseGrid& grid) {
  const int n = grid.q.n;
  const double c0 = stencil_scale(grid) / (2.0 * grid.q.dx);
  std::vector<SparseEntry> entries;
  entries.reserve(size_t(2) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i + 1 < n) entries.push_back({i, j, i + 1, j, c0});
      if (i - 1 >= 0) entries.push_back({i, j, i - 1, j, -c0});
    }
  return make_generator(grid, std::move(entries));
}

PhaseSpaceGenerator dp_generator(const PhaseGrid& grid) {
  const int n = grid.q.n;
  const double c0 = stencil_scale(grid) / (2.0 * grid.p.dx);
  std::vector<SparseEntry> entries;
  entries.reserve(size_t(2) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j + 1 < n) entries.push_back({i, j, i, j + 1, -c0});
      if (j - 1 >= 0) entries.push_back({i, j, i, j - 1, c0});
    }
  return make_generator(grid, std::move(entries));
}

PhaseSpaceGenerator rotation_generator(const PhaseGrid& grid) {
  const int n = grid.q.n;
  const double cq = stencil_scale(grid) / (2.0 * grid.q.dx);
  const double cp = stencil_scale(grid) / (2.0 * grid.p.dx);
  std::vector<SparseEntry> entries;
  entries.reserve(size_t(4) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double pj = grid.p.coord(j);
      const double qi = grid.q.coord(i);
      if (i + 1 < n) entries.push_back({i, j, i + 1, j, pj * cq});
      if (i - 1 >= 0) entries.push_back({i, j, i - 1, j, -pj * cq});
      if (j + 1 < n) entries.push_back({i, j, i, j + 1, -qi * cp});
      if (j - 1 >= 0) entries.push_back({i, j, i, j - 1, qi * cp});
    }
  return make_generator(grid, std::move(entries));
}

PhaseSpaceGenerator random_skew_generator(const PhaseGrid& grid, uint64_t seed,
                                          int pairs) {
  if (pairs < 1) throw_validation("random generator needs at least one pair");
  const int n = grid.q.n;
  const double c0 = stencil_scale(grid) / (2.0 * grid.q.dx);
  std::mt19937_64 rng(seed);
  auto unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  // indices drawn from the central half of each axis so the kernel overlaps
  // the region the residual probes
  auto draw_index = [&] {
    return n / 4 + std::min(n / 2 - 1, int(unit() * (n / 2)));
  };
  std::vector<SparseEntry> entries;
  entries.reserve(size_t(2) * pairs);
  for (int k = 0; k < pairs; ++k) {
    int iq = draw_index(), ip = draw_index();
    int iq2 = draw_index(), ip2 = draw_index();
    while (iq == iq2 && ip == ip2) {
      iq2 = draw_index();
      ip2 = draw_index();
    }
    const double v = (2.0 * unit() - 1.0) * c0;
    entries.push_back({iq, ip, iq2, ip2, v});
    entries.push_back({iq2, ip2, iq, ip, -v});
  }
  return make_generator(grid, std::move(entries));
}

std::vector<RKernelEntry> r_kernel(const PhaseSpaceGenerator& gen) {
  std::vector<RKernelEntry> out;
  out.reserve(gen.entries.size());
  for (const SparseEntry& e : gen.entries) {
    check_entry_range(e, gen.grid.q.n, gen.grid.p.n);
    out.push_back({(e.iq2 - e.iq) * gen.grid.q.dx,
                   (e.ip - e.ip2) * gen.grid.p.dx, e.iq + e.iq2, e.ip + e.ip2,
                   e.value});
  }
  return out;
}

double factorizability_residual(const PhaseSpaceGenerator& gen, int samples,
                                uint64_t seed) {
  if (samples < 1) throw_validation("residual needs at least one sample");
  const SliceIndex idx = build_slice_index(gen, r_kernel(gen));
  const double p_max = -gen.grid.p.x0;
  const double h = std::min(gen.grid.q.length() / 4.0, p_max / 2.0);
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    return (2.0 * double(rng() >> 11) * 0x1.0p-53 - 1.0) * h;
  };
  KahanSum sq_sum;
  for (int s = 0; s < samples; ++s) {
    const double q = draw(), p = draw(), q2 = draw(), p2 = draw();
    const double lhs = slice_integral(idx, q, p, q2, p2);
    const double mq = (q + q2) / 2.0, mp = (p + p2) / 2.0;
    const double hq = (q2 - q) / 2.0, hp = (p2 - p) / 2.0;
    const double rhs1 = slice_integral(idx, mq, mp, mq, mp);
    const double rhs2 = slice_integral(idx, hq, hp, hq, hp);
    const double r = lhs - rhs1 + rhs2;
    sq_sum.add(r * r);
  }
  return std::sqrt(sq_sum.value() / samples);
}

RealField2D generator_symbol(const PhaseSpaceGenerator& gen, double c) {
  if (!std::isfinite(c)) throw_validation("symbol constant not finite");
  const SliceIndex idx = build_slice_index(gen, r_kernel(gen));
  const PhaseGrid& g = gen.grid;
  RealField2D out = make_field(g);
  for (int i = 0; i < g.q.n; ++i) {
    const double q = g.q.coord(i);
    for (int k = 0; k < g.p.n; ++k) {
      const double p = g.p.coord(k);
      out.at(i, k) = c + g.hbar * slice_integral(idx, q, p, q, p);
    }
  }
  return out;
}

OperatorKernel quantize_generator(const RealField2D& a, Method method,
                                  Exec exec, const Tolerances& tol) {
  validate_field(a);
  return weyl_quantize(a, method, exec, tol);
}

}  // namespace wignerlab
