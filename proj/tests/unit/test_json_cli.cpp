#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "nonrev/cli.hpp"
#include "nonrev/json_io.hpp"

using namespace nonrev;
using namespace nonrev::testing;

namespace {

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::filesystem::path write_chain(const std::string& name,
                                  const ChainSpec& spec) {
  return write_temp(name, dump_json(chain_to_json(spec)));
}

struct CliResult {
  int code;
  Json report;
  std::string raw;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  CliResult res{code, Json(), out.str()};
  if (!res.raw.empty() && (res.raw[0] == '{' || res.raw[0] == '['))
    res.report = Json::parse(res.raw);
  return res;
}

}  // namespace

TEST_CASE("chain JSON round trip preserves rates exactly") {
  std::mt19937_64 rng(241);
  for (int trial = 0; trial < 5; ++trial) {
    const ChainSpec spec = random_chain(rng, 3 + trial);
    const ChainSpec back = chain_from_json(chain_to_json(spec));
    CHECK(back.rates == spec.rates);  // bitwise, via 17-digit serialization
  }
}

TEST_CASE("edge field JSON accepts either orientation") {
  const ChainSpec spec = make_r3();
  const EdgeSet support = edge_set(spec);
  const Json j = Json::parse(R"({"edges": [[1, 0, -0.25], [1, 2, 0.5]]})");
  const EdgeField field = edge_field_from_json(j, support);
  CHECK(field.at(0, 1) == 0.25);
  CHECK(field.at(1, 2) == 0.5);
  CHECK(field.at(0, 2) == 0.0);

  const EdgeField again =
      edge_field_from_json(edge_field_to_json(field), support);
  CHECK(again.values == field.values);
}

TEST_CASE("edge field JSON rejects entries off the support") {
  Matrix r = Matrix::Zero(3, 3);
  r(0, 1) = r(1, 0) = 1.0;
  r(1, 2) = r(2, 1) = 1.0;
  const EdgeSet support = edge_set(ChainSpec(std::move(r)));
  const Json j = Json::parse(R"({"edges": [[0, 2, 1.0]]})");
  CHECK_THROWS_AS(edge_field_from_json(j, support), InvalidSpec);
}

TEST_CASE("grid model JSON round trip") {
  const GridModel model = constant_ring(8, 0.75, 1.25);
  const GridModel back = grid_from_json(grid_to_json(model));
  CHECK(back.n_cells == 8);
  CHECK(back.drift == model.drift);
  CHECK(back.diffusion == model.diffusion);
}

TEST_CASE("reports serialize floats with 17 significant digits") {
  Json j;
  j["third"] = 1.0 / 3.0;
  const std::string dumped = dump_json(j);
  CHECK(dumped.find("0.33333333333333331") != std::string::npos);

  Json nested = Json::parse(R"({"a": [1.5, 2], "b": {"c": true}})");
  CHECK(dump_json(nested) == R"({"a":[1.5,2],"b":{"c":true}})");
}

TEST_CASE("cli: validate reports the asymmetric-support flag with exit 0") {
  const auto path = write_temp(
      "nonrev_bad.json",
      R"({"states": ["a", "b"], "rates": [[0, 1, 1.0]]})");
  const CliResult res = run({"validate", path.string()});
  CHECK(res.code == 0);
  CHECK(res.report["support_symmetric"] == false);
  CHECK(res.report["ok"] == false);
}

TEST_CASE("cli: stationary on the two-state chain") {
  const auto path = write_chain("nonrev_c2.json", make_c2());
  const CliResult res = run({"stationary", path.string()});
  CHECK(res.code == 0);
  CHECK(res.report["pi"][0].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(res.report["ok"] == true);
}

TEST_CASE("cli: entropy-split with the dual iso force on the ring") {
  const auto path = write_chain("nonrev_r3.json", make_r3());
  const CliResult res = run({"entropy-split", path.string(), "--rho",
                             "stationary", "--iso", "dual"});
  CHECK(res.code == 0);
  CHECK(res.report["entropy_production"].get<double>() ==
        doctest::Approx(2.0 * std::log(2.0)));
  CHECK(res.report["defect"].get<double>() <= 1e-9);
  CHECK(res.report["ok"] == true);
}

TEST_CASE("cli: dv-rate at a non-stationary density is positive") {
  const auto path = write_chain("nonrev_c2b.json", make_c2());
  const CliResult res =
      run({"dv-rate", path.string(), "--rho", "uniform"});
  CHECK(res.code == 0);
  CHECK(res.report["value"].get<double>() > 0.0);
  CHECK(res.report["two_route_defect"].get<double>() <= 1e-8);
}

TEST_CASE("cli: adjoint report is self-certifying") {
  const auto path = write_chain("nonrev_r3b.json", make_r3());
  const CliResult res = run({"adjoint", path.string()});
  CHECK(res.code == 0);
  CHECK(res.report["involution_defect"].get<double>() <= 1e-10);
  CHECK(res.report["dissipation_equality_defect"].get<double>() <= 1e-10);
  CHECK(res.report["representation_sweep"]["max_defect"].get<double>() <=
        1e-12);
}

TEST_CASE("cli: decompose emits the split report schema") {
  const auto path = write_chain("nonrev_r3c.json", make_r3());
  const CliResult res = run({"decompose", path.string(), "--edges", "0",
                             "--flux", "physical"});
  CHECK(res.code == 0);
  CHECK(res.report.contains("lagrangian"));
  CHECK(res.report["parts"].size() == 2);
  CHECK(res.report["sum_defect"].get<double>() <= 1e-8);
  CHECK(res.report["measured_pairing_coefficient"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cli: hamiltonian diagnostics for both kinds") {
  const auto path = write_chain("nonrev_r3d.json", make_r3());
  for (const std::string kind : {"edge", "state"}) {
    const CliResult res = run({"hamiltonian", path.string(), "--rho",
                               "uniform", "--kind", kind});
    CHECK(res.code == 0);
    CHECK(res.report["ok"] == true);
  }
}

TEST_CASE("cli: simulate with a fixed seed is reproducible") {
  const auto path = write_chain("nonrev_r3e.json", make_r3());
  const CliResult a = run({"simulate", path.string(), "--t-end", "100",
                           "--seed", "5"});
  const CliResult b = run({"simulate", path.string(), "--t-end", "100",
                           "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.raw == b.raw);
  CHECK(a.report["analytic"]["entropy_production_at_pi"].get<double>() ==
        doctest::Approx(2.0 * std::log(2.0)));
}

TEST_CASE("cli: fp-demo on a small constant-drift ring") {
  const CliResult res =
      run({"fp-demo", "--cells", "32", "--drift", "1.0"});
  CHECK(res.code == 0);
  CHECK(res.report["split_check"]["defect_dv_lemma"].get<double>() <= 1e-8);
  CHECK(res.report["force_split"]["recompose_defect"].get<double>() <= 1e-12);
  CHECK(res.report["ok"] == true);
}

TEST_CASE("cli: iso-family two-edge move reports the level defect") {
  const auto path = write_chain("nonrev_r3f.json", make_r3());
  const CliResult res =
      run({"iso-family", path.string(), "--iso", "two-edge", "--e1", "0",
           "--e2", "1", "--delta", "0.05"});
  CHECK(res.code == 0);
  CHECK(res.report["level_set_defect"].get<double>() <= 1e-10);
}

TEST_CASE("cli: forces report carries the edgewise identity defect") {
  const auto path = write_chain("nonrev_r3h.json", make_r3());
  const CliResult res = run({"forces", path.string(), "--rho", "stationary"});
  CHECK(res.code == 0);
  CHECK(res.report["entropy_production"].get<double>() ==
        doctest::Approx(2.0 * std::log(2.0)));
  CHECK(res.report["flux_identity_defect"].get<double>() <= 1e-12);
  CHECK(res.report["ok"] == true);
}

TEST_CASE("cli: decompose accepts an edge-field flux file") {
  const auto chain = write_chain("nonrev_r3i.json", make_r3());
  const auto flux_file = write_temp(
      "nonrev_flux.json",
      R"({"edges": [[0, 1, 0.2], [1, 2, -0.1], [0, 2, 0.05]]})");
  const CliResult res = run({"decompose", chain.string(), "--edges", "0,1",
                             "--flux", flux_file.string()});
  CHECK(res.code == 0);
  CHECK(res.report["sum_defect"].get<double>() <= 1e-8);
}

TEST_CASE("cli: fp-demo reads a grid model file") {
  const GridModel model = constant_ring(24, 0.5, 1.0);
  const auto path =
      write_temp("nonrev_grid.json", dump_json(grid_to_json(model)));
  const CliResult res = run({"fp-demo", "--model", path.string()});
  CHECK(res.code == 0);
  CHECK(res.report["n_cells"] == 24);
  CHECK(res.report["cfl_flagged"] == false);
}

TEST_CASE("cli: iso-family flip selector and tolerance override") {
  const auto path = write_chain("nonrev_r3j.json", make_r3());
  const CliResult res =
      run({"iso-family", path.string(), "--iso", "flip", "--flip-edges",
           "0,2", "--tol", "1e-6"});
  CHECK(res.code == 0);
  CHECK(res.report["tolerance"].get<double>() == 1e-6);
  CHECK(res.report["level_set_defect"].get<double>() == 0.0);
  const double f01 = res.report["force"][0][2].get<double>();
  const double iso01 = res.report["force_iso"][0][2].get<double>();
  CHECK(iso01 == -f01);
}

TEST_CASE("cli: numerical failures exit 1 with an error object") {
  Matrix r = Matrix::Zero(4, 4);
  r(0, 1) = r(1, 0) = 1.0;
  r(2, 3) = r(3, 2) = 1.0;
  const auto path = write_chain("nonrev_disc.json", ChainSpec(std::move(r)));
  const CliResult res = run({"stationary", path.string()});
  CHECK(res.code == 1);
  CHECK(res.report["error"]["type"] == "SingularSystem");
}

TEST_CASE("cli: usage errors exit 2") {
  std::ostringstream out, err;
  CHECK(run_cli({"no-such-command"}, out, err) == 2);
  CHECK(run_cli({}, out, err) == 2);
  CHECK(run_cli({"stationary"}, out, err) == 2);  // missing input
}

TEST_CASE("cli: NONREV_SEED environment override") {
  const auto path = write_chain("nonrev_r3g.json", make_r3());
  setenv("NONREV_SEED", "123", 1);
  const CliResult with_env = run({"simulate", path.string(), "--t-end", "50",
                                  "--seed", "5"});
  unsetenv("NONREV_SEED");
  const CliResult direct = run({"simulate", path.string(), "--t-end", "50",
                                "--seed", "123"});
  CHECK(with_env.report["replicas"][0]["n_jumps"] ==
        direct.report["replicas"][0]["n_jumps"]);
}
