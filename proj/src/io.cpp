#include "wignerlab/io.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wignerlab/error.hpp"

namespace wignerlab {

using json = nlohmann::ordered_json;

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw_io(path + ": " + e.what());
  }
  if (!j.is_object()) throw_validation(path + ": top level is not an object");
  return j;
}

const json& require(const json& j, const std::string& key,
                    const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw_validation(path + ": missing key \"" + key + "\"");
  return *it;
}

double require_number(const json& j, const std::string& key,
                      const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number()) throw_validation(path + ": \"" + key + "\" not a number");
  return v.get<double>();
}

int require_int(const json& j, const std::string& key,
                const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number_integer())
    throw_validation(path + ": \"" + key + "\" not an integer");
  return v.get<int>();
}

std::string require_string(const json& j, const std::string& key,
                           const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_string()) throw_validation(path + ": \"" + key + "\" not a string");
  return v.get<std::string>();
}

void require_format(const json& j, const std::string& tag,
                    const std::string& path) {
  if (require_string(j, "format", path) != tag)
    throw_validation(path + ": format is not \"" + tag + "\"");
}

std::vector<double> require_number_array(const json& j, const std::string& key,
                                         size_t len, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_array()) throw_validation(path + ": \"" + key + "\" not an array");
  if (v.size() != len)
    throw_validation(path + ": \"" + key + "\" has " +
                     std::to_string(v.size()) + " entries, expected " +
                     std::to_string(len));
  std::vector<double> out(len);
  for (size_t i = 0; i < len; ++i) {
    if (!v[i].is_number())
      throw_validation(path + ": \"" + key + "\" entry " + std::to_string(i) +
                       " not a number");
    out[i] = v[i].get<double>();
    if (!std::isfinite(out[i]))
      throw_validation(path + ": \"" + key + "\" entry " + std::to_string(i) +
                       " not finite");
  }
  return out;
}

SampleGrid1D require_grid(const json& j, const std::string& key,
                          const std::string& path) {
  const json& g = require(j, key, path);
  if (!g.is_object())
    throw_validation(path + ": \"" + key + "\" not an object");
  return make_grid(require_number(g, "x0", path), require_number(g, "dx", path),
                   require_int(g, "n", path));
}

double require_hbar(const json& j, const std::string& path) {
  double hbar = require_number(j, "hbar", path);
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw_validation(path + ": hbar must be positive");
  return hbar;
}

json grid_json(const SampleGrid1D& g) {
  return json{{"x0", g.x0}, {"dx", g.dx}, {"n", g.n}};
}

void dump_to(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw_io("cannot open " + path + " for writing");
  out << j.dump() << "\n";
  if (!out) throw_io("write failed on " + path);
}

}  // namespace

WaveFunction read_wfn(const std::string& path, const Tolerances& tol) {
  json j = parse_file(path);
  require_format(j, "wfn-v1", path);
  WaveFunction w;
  w.hbar = require_hbar(j, path);
  w.grid = require_grid(j, "grid", path);
  auto re = require_number_array(j, "re", size_t(w.grid.n), path);
  auto im = require_number_array(j, "im", size_t(w.grid.n), path);
  w.psi.resize(w.grid.n);
  for (int i = 0; i < w.grid.n; ++i) w.psi[i] = {re[i], im[i]};
  double norm = 0.0;
  for (const auto& z : w.psi) norm += std::norm(z);
  norm *= w.grid.dx;
  w.normalized = std::abs(norm - 1.0) <= tol.wfn_norm;
  return w;
}

void write_wfn(const std::string& path, const WaveFunction& w) {
  json j;
  j["format"] = "wfn-v1";
  j["hbar"] = w.hbar;
  j["grid"] = grid_json(w.grid);
  std::vector<double> re(w.psi.size()), im(w.psi.size());
  for (size_t i = 0; i < w.psi.size(); ++i) {
    re[i] = w.psi[i].real();
    im[i] = w.psi[i].imag();
  }
  j["re"] = re;
  j["im"] = im;
  dump_to(path, j);
}

WignerFunction read_wig(const std::string& path, const Tolerances& tol) {
  json j = parse_file(path);
  require_format(j, "wig-v1", path);
  double hbar = require_hbar(j, path);
  SampleGrid1D qgrid = require_grid(j, "qgrid", path);
  SampleGrid1D pfile = require_grid(j, "pgrid", path);
  PhaseGrid grid = make_conjugate_grid(qgrid, hbar);
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
  };
  if (pfile.n != grid.p.n || !close(pfile.x0, grid.p.x0) ||
      !close(pfile.dx, grid.p.dx))
    throw_validation(path + ": pgrid is not conjugate to qgrid");
  WignerFunction w;
  w.f.grid = grid;
  w.f.v = require_number_array(j, "values",
                               size_t(grid.q.n) * size_t(grid.p.n), path);
  w.provenance = Provenance::loaded;
  double total = integrate_2d(w.f);
  w.normalized = std::abs(total - 1.0) <= tol.wigner_norm;
  return w;
}

void write_wig(const std::string& path, const WignerFunction& w) {
  json j;
  j["format"] = "wig-v1";
  j["hbar"] = w.hbar();
  j["qgrid"] = grid_json(w.grid().q);
  j["pgrid"] = grid_json(w.grid().p);
  j["values"] = w.f.v;
  dump_to(path, j);
}

SupRequest read_sup(const std::string& path) {
  json j = parse_file(path);
  require_format(j, "sup-v1", path);
  SupRequest req;
  req.spec.A = require_number(j, "A", path);
  req.spec.B = require_number(j, "B", path);
  req.spec.epsilon = require_number(j, "epsilon", path);
  auto anchor = [&](const std::string& key) -> std::optional<double> {
    const json& v = require(j, key, path);
    if (v.is_string()) {
      if (v.get<std::string>() != "auto")
        throw_validation(path + ": \"" + key + "\" must be a number or \"auto\"");
      return std::nullopt;
    }
    if (!v.is_number())
      throw_validation(path + ": \"" + key + "\" must be a number or \"auto\"");
    return v.get<double>();
  };
  req.spec.x1 = anchor("x1");
  req.spec.x2 = anchor("x2");
  req.w1 = require_string(j, "w1", path);
  req.w2 = require_string(j, "w2", path);
  return req;
}

GenRequest read_gen(const std::string& path) {
  json j = parse_file(path);
  require_format(j, "gen-v1", path);
  GenRequest req;
  req.kind = require_string(j, "kind", path);
  if (req.kind != "dq" && req.kind != "dp" && req.kind != "rotation" &&
      req.kind != "sparse")
    throw_validation(path + ": unknown generator kind \"" + req.kind + "\"");
  bool has_entries = j.contains("entries");
  if (req.kind == "sparse" && !has_entries)
    throw_validation(path + ": kind \"sparse\" requires \"entries\"");
  if (req.kind != "sparse" && has_entries)
    throw_validation(path + ": \"entries\" is only valid for kind \"sparse\"");
  if (!has_entries) return req;
  const json& ents = j["entries"];
  if (!ents.is_array()) throw_validation(path + ": \"entries\" not an array");
  req.entries.reserve(ents.size());
  for (size_t e = 0; e < ents.size(); ++e) {
    const json& row = ents[e];
    if (!row.is_array() || row.size() != 5)
      throw_validation(path + ": entry " + std::to_string(e) +
                       " is not [iq,ip,iq2,ip2,value]");
    for (int c = 0; c < 4; ++c)
      if (!row[c].is_number_integer())
        throw_validation(path + ": entry " + std::to_string(e) +
                         " index " + std::to_string(c) + " not an integer");
    if (!row[4].is_number() || !std::isfinite(row[4].get<double>()))
      throw_validation(path + ": entry " + std::to_string(e) +
                       " value not finite");
    req.entries.push_back({row[0].get<int>(), row[1].get<int>(),
                           row[2].get<int>(), row[3].get<int>(),
                           row[4].get<double>()});
  }
  return req;
}

void write_gen(const std::string& path, const GenRequest& req) {
  json j;
  j["format"] = "gen-v1";
  j["kind"] = req.kind;
  if (req.kind == "sparse") {
    json ents = json::array();
    for (const auto& e : req.entries)
      ents.push_back(json::array({e.iq, e.ip, e.iq2, e.ip2, e.value}));
    j["entries"] = std::move(ents);
  }
  dump_to(path, j);
}

void write_kernel(const std::string& path, const OperatorKernel& k) {
  json j;
  j["format"] = "ker-v1";
  j["hbar"] = k.hbar;
  j["grid"] = grid_json(k.grid);
  j["hermitian"] = k.hermitian;
  size_t nn = size_t(k.grid.n) * size_t(k.grid.n);
  std::vector<double> re(nn), im(nn);
  for (int i = 0; i < k.grid.n; ++i)
    for (int c = 0; c < k.grid.n; ++c) {
      re[size_t(i) * k.grid.n + c] = k.k(i, c).real();
      im[size_t(i) * k.grid.n + c] = k.k(i, c).imag();
    }
  j["re"] = re;
  j["im"] = im;
  dump_to(path, j);
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_field_csv(const std::string& path, const RealField2D& f) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw_io("cannot open " + path + " for writing");
  out << "q,p,w\n";
  for (int iq = 0; iq < f.grid.q.n; ++iq)
    for (int ip = 0; ip < f.grid.p.n; ++ip)
      out << format_g17(f.grid.q.coord(iq)) << ','
          << format_g17(f.grid.p.coord(ip)) << ',' << format_g17(f.at(iq, ip))
          << '\n';
  if (!out) throw_io("write failed on " + path);
}

}  // namespace wignerlab
