#pragma once

#include <cstdint>
#include <string>

#include "wignerlab/grid.hpp"
#include "wignerlab/tolerances.hpp"

namespace wignerlab {

// Run-wide settings shared by every command. Flags override config-file
// values, which override these defaults.
struct RunConfig {
  double hbar = 1.0;
  SampleGrid1D grid{-8.0, 1.0 / 16.0, 256};
  Tolerances tol;
  std::uint64_t seed = 42;
  int oracle_n = 32;  // direct-path grid, capped at tol.oracle_max_n
};

// Named access to the tolerance fields, for config files and overrides.
// Unknown names and non-positive values are validation errors.
void set_tolerance(Tolerances& tol, const std::string& name, double value);

// Partial JSON config: any of hbar, grid {x0,dx,n}, seed, oracle_n,
// tolerances {name: value}. Absent keys keep their current values.
void apply_config_file(RunConfig& cfg, const std::string& path);

void validate_run_config(const RunConfig& cfg);

}  // namespace wignerlab
