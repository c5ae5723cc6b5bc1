#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "wignerlab/factorize.hpp"
#include "wignerlab/grid.hpp"
#include "wignerlab/io.hpp"
#include "wignerlab/wigner.hpp"

using namespace wignerlab;
using njson = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("wignerlab_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// run the binary inside the scratch dir so default output names land there
RunResult run(const std::string& args) {
  const char* bin = std::getenv("WIGNERLAB_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "WIGNERLAB_BIN must point at the binary");
  const fs::path outf = scratch_dir() / "stdout.txt";
  const fs::path errf = scratch_dir() / "stderr.txt";
  const std::string cmd = "cd " + scratch_dir().string() + " && " + bin + " " +
                          args + " >" + outf.string() + " 2>" + errf.string();
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(outf);
  r.err = slurp(errf);
  return r;
}

fs::path at(const std::string& name) { return scratch_dir() / name; }

// first stdout JSON line whose "name" matches
njson find_check(const std::string& out, const std::string& name) {
  std::istringstream ss(out);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] != '{') continue;
    njson j = njson::parse(line, nullptr, false);
    if (!j.is_discarded() && j.contains("name") && j["name"] == name) return j;
  }
  FAIL("no check line named ", name, " in:\n", out);
  return {};
}

}  // namespace

TEST_CASE("state generation writes a valid file with passing diagnostics") {
  auto r = run("state hermite 0 --out phi0.wfn.json");
  REQUIRE(r.exit_code == 0);
  CHECK(find_check(r.out, "norm")["passed"] == true);
  CHECK(find_check(r.out, "decay")["passed"] == true);

  const WaveFunction w = read_wfn(at("phi0.wfn.json").string());
  CHECK(w.grid.n == 256);
  CHECK(w.hbar == 1.0);
  CHECK(w.normalized);
  double norm = 0.0;
  for (const auto& z : w.psi) norm += std::norm(z);
  CHECK(std::abs(norm * w.grid.dx - 1.0) <= 1e-9);
}

TEST_CASE("state: unstable oscillator index exits 2") {
  CHECK(run("state hermite 40 --out nope.json").exit_code == 2);
  CHECK_FALSE(fs::exists(at("nope.json")));
}

TEST_CASE("state: revalidating a written file round-trips byte-identically") {
  REQUIRE(run("state hermite 2 --out phi2.wfn.json").exit_code == 0);
  REQUIRE(run("state file phi2.wfn.json --out phi2copy.wfn.json").exit_code ==
          0);
  CHECK(slurp(at("phi2.wfn.json")) == slurp(at("phi2copy.wfn.json")));
}

TEST_CASE("gaussian state puts the Wigner peak at its center cell") {
  REQUIRE(run("state gaussian 1.0 0.5 1.0 --out g.wfn.json").exit_code == 0);
  REQUIRE(run("wigner g.wfn.json --out g.wig.json").exit_code == 0);
  const WignerFunction w = read_wig(at("g.wig.json").string());
  size_t best = 0;
  for (size_t i = 0; i < w.f.v.size(); ++i)
    if (w.f.v[i] > w.f.v[best]) best = i;
  const int iq = int(best) / w.grid().p.n;
  const int ip = int(best) % w.grid().p.n;
  CHECK(std::abs(w.grid().q.coord(iq) - 1.0) <= w.grid().q.dx);
  CHECK(std::abs(w.grid().p.coord(ip) - 0.5) <= w.grid().p.dx);
}

TEST_CASE("wigner reports the ground-state purity and writes CSV") {
  REQUIRE(run("state hermite 0 --out phi0.wfn.json").exit_code == 0);
  auto r = run("wigner phi0.wfn.json --out w0.wig.json --csv w0.csv");
  REQUIRE(r.exit_code == 0);
  auto purity = find_check(r.out, "purity");
  CHECK(std::abs(purity["measured"].get<double>() - 0.159155) <= 1e-4);
  CHECK(find_check(r.out, "norm")["passed"] == true);

  std::ifstream csv(at("w0.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "q,p,w");
  size_t rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 256u * 256u);
}

TEST_CASE("wigner dual methods agree to 1e-10 at n=64") {
  REQUIRE(run("state hermite 1 --grid -8,0.25,64 --out s64.wfn.json")
              .exit_code == 0);
  REQUIRE(run("wigner s64.wfn.json --method fft --out f64.wig.json")
              .exit_code == 0);
  REQUIRE(run("wigner s64.wfn.json --method quadrature --out q64.wig.json")
              .exit_code == 0);
  const WignerFunction a = read_wig(at("f64.wig.json").string());
  const WignerFunction b = read_wig(at("q64.wig.json").string());
  double worst = 0.0;
  for (size_t i = 0; i < a.f.v.size(); ++i)
    worst = std::max(worst, std::abs(a.f.v[i] - b.f.v[i]));
  CHECK(worst <= 1e-10);
}

TEST_CASE("wigner: unreadable and unparseable inputs exit 1") {
  std::ofstream(at("empty.json")) << "";
  CHECK(run("wigner empty.json --out x.json").exit_code == 1);
  CHECK(run("wigner no_such_file.json --out x.json").exit_code == 1);
}

TEST_CASE("superpose: equal-weight request passes checks and is deterministic") {
  REQUIRE(run("state hermite 0 --out phi0.wfn.json").exit_code == 0);
  REQUIRE(run("state hermite 1 --out phi1.wfn.json").exit_code == 0);
  REQUIRE(run("wigner phi0.wfn.json --out w0.wig.json").exit_code == 0);
  REQUIRE(run("wigner phi1.wfn.json --out w1.wig.json").exit_code == 0);
  std::ofstream(at("eq.sup.json"))
      << R"({"format":"sup-v1","A":0.7071067811865476,"B":0.7071067811865476,)"
      << R"("epsilon":0.0,"x1":"auto","x2":"auto",)"
      << R"("w1":"w0.wig.json","w2":"w1.wig.json"})";
  auto r = run("superpose eq.sup.json --out s1.wig.json --report r1.json");
  REQUIRE(r.exit_code == 0);
  CHECK(find_check(r.out, "purity")["passed"] == true);
  CHECK(find_check(r.out, "norm")["passed"] == true);
  CHECK(find_check(r.out, "coefficient_constraint")["passed"] == true);

  njson rep = njson::parse(slurp(at("r1.json")));
  CHECK(rep["c1_abs"].get<double>() > 0.0);
  CHECK(rep["T_total"].get<double>() > 0.0);

  auto r2 = run("superpose eq.sup.json --out s2.wig.json --report r2.json");
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(at("s1.wig.json")) == slurp(at("s2.wig.json")));
  CHECK(slurp(at("r1.json")) == slurp(at("r2.json")));
}

TEST_CASE("superpose: identical inputs are rejected with exit 2") {
  REQUIRE(run("state hermite 0 --out phi0.wfn.json").exit_code == 0);
  REQUIRE(run("wigner phi0.wfn.json --out w0.wig.json").exit_code == 0);
  std::ofstream(at("same.sup.json"))
      << R"({"format":"sup-v1","A":0.7071067811865476,"B":0.7071067811865476,)"
      << R"("epsilon":0.0,"x1":"auto","x2":"auto",)"
      << R"("w1":"w0.wig.json","w2":"w0.wig.json"})";
  auto r = run("superpose same.sup.json --out dup.wig.json");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("orthogonality") != std::string::npos);
}

TEST_CASE("superpose: epsilon outside [0, 2pi) warns and proceeds") {
  REQUIRE(run("state hermite 0 --out phi0.wfn.json").exit_code == 0);
  REQUIRE(run("state hermite 1 --out phi1.wfn.json").exit_code == 0);
  REQUIRE(run("wigner phi0.wfn.json --out w0.wig.json").exit_code == 0);
  REQUIRE(run("wigner phi1.wfn.json --out w1.wig.json").exit_code == 0);
  std::ofstream(at("e7.sup.json"))
      << R"({"format":"sup-v1","A":0.7071067811865476,"B":0.7071067811865476,)"
      << R"("epsilon":7.0,"x1":"auto","x2":"auto",)"
      << R"("w1":"w0.wig.json","w2":"w1.wig.json"})";
  auto r = run("superpose e7.sup.json --out e7.wig.json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.find("epsilon reduced mod 2pi to 0.716815") != std::string::npos);
  njson rep = njson::parse(slurp(at("superpose.report.json")));
  CHECK(std::abs(rep["epsilon"].get<double>() - 0.7168146928204138) <= 1e-15);
}

TEST_CASE("superpose --oracle prints the direct-path comparison") {
  REQUIRE(run("state hermite 0 --out phi0.wfn.json").exit_code == 0);
  REQUIRE(run("state hermite 1 --out phi1.wfn.json").exit_code == 0);
  REQUIRE(run("wigner phi0.wfn.json --out w0.wig.json").exit_code == 0);
  REQUIRE(run("wigner phi1.wfn.json --out w1.wig.json").exit_code == 0);
  std::ofstream(at("eq.sup.json"))
      << R"({"format":"sup-v1","A":0.7071067811865476,"B":0.7071067811865476,)"
      << R"("epsilon":0.0,"x1":"auto","x2":"auto",)"
      << R"("w1":"w0.wig.json","w2":"w1.wig.json"})";
  auto r = run("superpose eq.sup.json --oracle --out so.wig.json");
  REQUIRE(r.exit_code == 0);
  auto oracle = find_check(r.out, "oracle_cross_max_abs");
  CHECK(oracle["measured"].get<double>() <= 2e-3);

  // oracle_n must divide the input grid
  CHECK(run("superpose eq.sup.json --oracle --oracle-n 48 --out x.json")
            .exit_code == 2);
}

TEST_CASE("reconstruct: round trip against the reference state") {
  REQUIRE(run("state hermite 0 --out phi0.wfn.json").exit_code == 0);
  REQUIRE(run("wigner phi0.wfn.json --out w0.wig.json").exit_code == 0);
  auto r = run("reconstruct w0.wig.json --reference phi0.wfn.json "
               "--out rec0.wfn.json");
  REQUIRE(r.exit_code == 0);
  auto fid = find_check(r.out, "fidelity");
  CHECK(fid["measured"].get<double>() >= 1.0 - 1e-8);
}

TEST_CASE("reconstruct: anchor on the node of an odd state exits 3") {
  REQUIRE(run("state hermite 1 --out phi1.wfn.json").exit_code == 0);
  REQUIRE(run("wigner phi1.wfn.json --out w1.wig.json").exit_code == 0);
  CHECK(run("reconstruct w1.wig.json --x0 0 --out bad.json").exit_code == 3);
  CHECK(run("reconstruct w1.wig.json --x0 elsewhere --out bad.json")
            .exit_code == 1);
}

TEST_CASE("reconstruct and verify: mixed-state input exits 2") {
  REQUIRE(run("state hermite 0 --out phi0.wfn.json").exit_code == 0);
  REQUIRE(run("state hermite 1 --out phi1.wfn.json").exit_code == 0);
  REQUIRE(run("wigner phi0.wfn.json --out w0.wig.json").exit_code == 0);
  REQUIRE(run("wigner phi1.wfn.json --out w1.wig.json").exit_code == 0);
  WignerFunction a = read_wig(at("w0.wig.json").string());
  const WignerFunction b = read_wig(at("w1.wig.json").string());
  for (size_t i = 0; i < a.f.v.size(); ++i)
    a.f.v[i] = 0.5 * a.f.v[i] + 0.5 * b.f.v[i];
  write_wig(at("mixed.wig.json").string(), a);
  CHECK(run("reconstruct mixed.wig.json --out m.json").exit_code == 2);

  auto r = run("verify mixed.wig.json");
  CHECK(r.exit_code == 2);
  CHECK(find_check(r.out, "purity")["passed"] == false);
}

TEST_CASE("verify accepts a pure pair and reports orthogonality") {
  REQUIRE(run("state hermite 0 --out phi0.wfn.json").exit_code == 0);
  REQUIRE(run("state hermite 1 --out phi1.wfn.json").exit_code == 0);
  REQUIRE(run("wigner phi0.wfn.json --out w0.wig.json").exit_code == 0);
  REQUIRE(run("wigner phi1.wfn.json --out w1.wig.json").exit_code == 0);
  auto r = run("verify w0.wig.json w1.wig.json");
  REQUIRE(r.exit_code == 0);
  CHECK(find_check(r.out, "purity_1")["passed"] == true);
  CHECK(find_check(r.out, "purity_2")["passed"] == true);
  CHECK(find_check(r.out, "orthogonality")["passed"] == true);
}

TEST_CASE("factorize: named generators report factorizable with good fits") {
  std::ofstream(at("dq.gen.json")) << R"({"format":"gen-v1","kind":"dq"})";
  auto r = run("factorize dq.gen.json --out dq.ker.json --csv dq.sym.csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"verdict\":\"factorizable\"") != std::string::npos);
  auto slope = find_check(r.out, "dq_slope");
  CHECK(std::abs(slope["measured"].get<double>() - 1.0) <= 1e-2);

  std::ofstream(at("rot.gen.json"))
      << R"({"format":"gen-v1","kind":"rotation"})";
  auto r2 = run("factorize rot.gen.json --out rot.ker.json --csv rot.sym.csv");
  REQUIRE(r2.exit_code == 0);
  CHECK(find_check(r2.out, "rotation_fit_rel")["measured"].get<double>() <=
        2e-2);

  // the quantized kernel file is self-consistent
  njson k = njson::parse(slurp(at("dq.ker.json")));
  CHECK(k["format"] == "ker-v1");
  CHECK(k["hermitian"] == true);
  CHECK(k["re"].size() == 256u * 256u);
}

TEST_CASE("factorize: seeded random skew kernel is flagged not factorizable") {
  const PhaseGrid pg = make_conjugate_grid(make_grid(-4.0, 0.125, 64), 1.0);
  const PhaseSpaceGenerator gen = random_skew_generator(pg, 1);
  write_gen(at("rand.gen.json").string(), GenRequest{"sparse", gen.entries});
  auto r = run("factorize rand.gen.json --grid -4,0.125,64 "
               "--out rand.ker.json --csv rand.sym.csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"verdict\":\"not factorizable\"") != std::string::npos);
  CHECK(find_check(r.out, "factorizability_rms")["measured"].get<double>() >
        0.2);

  std::ofstream(at("bad.gen.json"))
      << R"({"format":"gen-v1","kind":"dq","entries":[[1,1,1,2,0.5]]})";
  CHECK(run("factorize bad.gen.json --out x.json").exit_code == 2);
}

TEST_CASE("bench asserts agreement and writes the timing table") {
  auto r = run("bench --sizes 32 --out bench.csv");
  REQUIRE(r.exit_code == 0);
  std::ifstream csv(at("bench.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "n,task,method,seconds,max_abs_diff");
  std::vector<std::string> rows;
  for (std::string line; std::getline(csv, line);) rows.push_back(line);
  REQUIRE(rows.size() == 4);  // wigner fft/quadrature + cross fast/direct
  CHECK(rows[0].rfind("32,wigner,fft,", 0) == 0);
  CHECK(rows[3].rfind("32,cross,direct,", 0) == 0);
}

TEST_CASE("config file applies and explicit flags override it") {
  std::ofstream(at("cfg.json"))
      << R"({"hbar": 2.0, "grid": {"x0": -12.0, "dx": 0.09375, "n": 256},)"
      << R"( "tolerances": {"check_norm_abs": 0.001}})";
  REQUIRE(run("state hermite 0 --config cfg.json --out c.wfn.json")
              .exit_code == 0);
  njson a = njson::parse(slurp(at("c.wfn.json")));
  CHECK(a["hbar"].get<double>() == 2.0);
  CHECK(a["grid"]["x0"].get<double>() == -12.0);

  REQUIRE(run("state hermite 0 --config cfg.json --hbar 0.5 --out o.wfn.json")
              .exit_code == 0);
  CHECK(njson::parse(slurp(at("o.wfn.json")))["hbar"].get<double>() == 0.5);

  CHECK(run("state hermite 0 --config missing.json --out x.json").exit_code ==
        1);
  std::ofstream(at("badkey.json")) << R"({"tolerances": {"no_such": 1.0}})";
  CHECK(run("state hermite 0 --config badkey.json --out x.json").exit_code ==
        2);
}

TEST_CASE("argument errors exit 1, help exits 0") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("state hermite").exit_code == 1);      // missing k
  CHECK(run("nonsense").exit_code == 1);           // unknown command
  CHECK(run("state hermite 0 --grid banana --out x.json").exit_code == 1);
  CHECK(run("wigner w.json --method sideways --out x.json").exit_code == 1);
}

TEST_CASE("repeated runs produce byte-identical artifacts") {
  REQUIRE(run("state gaussian 0.25 -0.5 1.0 --out d1.wfn.json").exit_code ==
          0);
  REQUIRE(run("state gaussian 0.25 -0.5 1.0 --out d2.wfn.json").exit_code ==
          0);
  CHECK(slurp(at("d1.wfn.json")) == slurp(at("d2.wfn.json")));

  REQUIRE(run("wigner d1.wfn.json --out dw1.wig.json --csv dc1.csv")
              .exit_code == 0);
  REQUIRE(run("wigner d1.wfn.json --out dw2.wig.json --csv dc2.csv")
              .exit_code == 0);
  CHECK(slurp(at("dw1.wig.json")) == slurp(at("dw2.wig.json")));
  CHECK(slurp(at("dc1.csv")) == slurp(at("dc2.csv")));

  std::ofstream(at("fq.gen.json")) << R"({"format":"gen-v1","kind":"dp"})";
  REQUIRE(run("factorize fq.gen.json --out fk1.json --csv fs1.csv").exit_code ==
          0);
  REQUIRE(run("factorize fq.gen.json --out fk2.json --csv fs2.csv").exit_code ==
          0);
  CHECK(slurp(at("fk1.json")) == slurp(at("fk2.json")));
  CHECK(slurp(at("fs1.csv")) == slurp(at("fs2.csv")));
}
