#pragma once

#include <string>
#include <vector>

#include "wignerlab/factorize.hpp"
#include "wignerlab/kernel.hpp"
#include "wignerlab/state.hpp"
#include "wignerlab/superpose.hpp"
#include "wignerlab/tolerances.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab {

// File open / JSON syntax problems throw ErrorKind::io; semantically invalid
// content (wrong format tag, length mismatches, grid violations, non-finite
// numbers) throws ErrorKind::validation. Writers emit a fixed key order so
// identical inputs produce byte-identical files.

WaveFunction read_wfn(const std::string& path,
                      const Tolerances& tol = default_tolerances());
void write_wfn(const std::string& path, const WaveFunction& w);

WignerFunction read_wig(const std::string& path,
                        const Tolerances& tol = default_tolerances());
void write_wig(const std::string& path, const WignerFunction& w);

struct SupRequest {
  SuperpositionSpec spec;
  std::string w1;
  std::string w2;
};

SupRequest read_sup(const std::string& path);

struct GenRequest {
  std::string kind;  // dq | dp | rotation | sparse
  std::vector<SparseEntry> entries;
};

GenRequest read_gen(const std::string& path);
void write_gen(const std::string& path, const GenRequest& req);

void write_kernel(const std::string& path, const OperatorKernel& k);

// header "q,p,w", one %.17g row per sample, q slow
void write_field_csv(const std::string& path, const RealField2D& f);

std::string format_g17(double x);

}  // namespace wignerlab
