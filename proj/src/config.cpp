#include "wignerlab/config.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "wignerlab/error.hpp"

namespace wignerlab {

using json = nlohmann::ordered_json;

namespace {

void set_int(int& field, const std::string& name, double value) {
  double r = std::round(value);
  if (std::abs(value - r) > 0.0 || r < 1.0 || r > 1e9)
    throw_validation("tolerance \"" + name + "\" must be a positive integer");
  field = int(r);
}

double checked(const std::string& name, double value) {
  if (!std::isfinite(value) || value <= 0.0)
    throw_validation("tolerance \"" + name + "\" must be positive");
  return value;
}

}  // namespace

void set_tolerance(Tolerances& tol, const std::string& name, double value) {
  checked(name, value);
  if (name == "wfn_norm") tol.wfn_norm = value;
  else if (name == "decay_ratio") tol.decay_ratio = value;
  else if (name == "max_hermite_k") set_int(tol.max_hermite_k, name, value);
  else if (name == "kernel_hermitian") tol.kernel_hermitian = value;
  else if (name == "input_orthogonality") tol.input_orthogonality = value;
  else if (name == "coeff_constraint") tol.coeff_constraint = value;
  else if (name == "imag_residual") tol.imag_residual = value;
  else if (name == "quantize_hermitian") tol.quantize_hermitian = value;
  else if (name == "wigner_norm") tol.wigner_norm = value;
  else if (name == "purity_gate") tol.purity_gate = value;
  else if (name == "marginal_floor") tol.marginal_floor = value;
  else if (name == "recon_norm") tol.recon_norm = value;
  else if (name == "marginal_snap") tol.marginal_snap = value;
  else if (name == "check_purity_rel") tol.check_purity_rel = value;
  else if (name == "check_norm_abs") tol.check_norm_abs = value;
  else if (name == "check_orthogonality_abs") tol.check_orthogonality_abs = value;
  else if (name == "t_total_floor") tol.t_total_floor = value;
  else if (name == "result_constraint") tol.result_constraint = value;
  else if (name == "oracle_max_n") set_int(tol.oracle_max_n, name, value);
  else if (name == "unitary_defect") tol.unitary_defect = value;
  else if (name == "skew_defect") tol.skew_defect = value;
  else if (name == "factorizable_rms") tol.factorizable_rms = value;
  else if (name == "residual_samples") set_int(tol.residual_samples, name, value);
  else throw_validation("unknown tolerance name \"" + name + "\"");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw_io(path + ": " + e.what());
  }
  if (!j.is_object()) throw_validation(path + ": top level is not an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "hbar") {
      if (!v.is_number()) throw_validation(path + ": hbar not a number");
      cfg.hbar = v.get<double>();
    } else if (key == "grid") {
      if (!v.is_object()) throw_validation(path + ": grid not an object");
      SampleGrid1D g = cfg.grid;
      if (v.contains("x0")) g.x0 = v["x0"].get<double>();
      if (v.contains("dx")) g.dx = v["dx"].get<double>();
      if (v.contains("n")) {
        if (!v["n"].is_number_integer())
          throw_validation(path + ": grid n not an integer");
        g.n = v["n"].get<int>();
      }
      cfg.grid = g;
    } else if (key == "seed") {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw_validation(path + ": seed must be a nonnegative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "oracle_n") {
      if (!v.is_number_integer())
        throw_validation(path + ": oracle_n not an integer");
      cfg.oracle_n = v.get<int>();
    } else if (key == "tolerances") {
      if (!v.is_object())
        throw_validation(path + ": tolerances not an object");
      for (auto t = v.begin(); t != v.end(); ++t) {
        if (!t.value().is_number())
          throw_validation(path + ": tolerance \"" + t.key() +
                           "\" not a number");
        set_tolerance(cfg.tol, t.key(), t.value().get<double>());
      }
    } else {
      throw_validation(path + ": unknown config key \"" + key + "\"");
    }
  }
}

void validate_run_config(const RunConfig& cfg) {
  if (!std::isfinite(cfg.hbar) || cfg.hbar <= 0.0)
    throw_validation("hbar must be positive and finite");
  make_grid(cfg.grid.x0, cfg.grid.dx, cfg.grid.n);
  make_grid(0.0, 1.0, cfg.oracle_n);  // even, >= 8
  if (cfg.oracle_n > cfg.tol.oracle_max_n)
    throw_validation("oracle_n exceeds oracle_max_n (" +
                     std::to_string(cfg.tol.oracle_max_n) + ")");
}

}  // namespace wignerlab
