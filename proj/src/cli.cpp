#include "nonrev/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <random>
#include <sstream>

#include "nonrev/duality.hpp"
#include "nonrev/fokker_planck.hpp"
#include "nonrev/gillespie.hpp"
#include "nonrev/json_io.hpp"
#include "nonrev/variational.hpp"

namespace nonrev {

namespace {

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Json edge_triplets(const EdgeField& field) {
  return edge_field_to_json(field)["edges"];
}

// --rho accepts "stationary", "uniform", or a density file.
Density resolve_density(const std::string& arg, const ChainSpec& spec) {
  if (arg == "stationary") return stationary(spec);
  if (arg == "uniform") return uniform_density(spec.n_states());
  return density_from_json(load_json_file(arg));
}

std::vector<int> parse_index_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

struct CommonOptions {
  std::string input;
  std::string rho = "stationary";
  double tol = 0.0;  // 0 = per-command default
  bool pretty = false;
};

double tolerance_or(const CommonOptions& common, double fallback) {
  return common.tol > 0.0 ? common.tol : fallback;
}

void emit(std::ostream& out, const Json& report, bool pretty) {
  out << dump_json(report, pretty) << "\n";
}

// ---------------------------------------------------------------------------

Json cmd_validate(const CommonOptions& common) {
  const ChainSpec spec = load_chain(common.input);
  const ValidationReport rep = validate(spec);
  Json j;
  j["command"] = "validate";
  j["n_states"] = rep.n_states;
  j["rates_nonnegative"] = rep.rates_nonnegative;
  j["support_symmetric"] = rep.support_symmetric;
  Json asym = Json::array();
  for (const auto& [x, y] : rep.asymmetric_edges)
    asym.push_back(Json::array({x, y}));
  j["asymmetric_edges"] = std::move(asym);
  j["irreducible"] = rep.irreducible;
  j["n_strongly_connected_components"] = rep.n_strongly_connected_components;
  j["ok"] = rep.ok();
  return j;
}

Json cmd_stationary(const CommonOptions& common) {
  const ChainSpec spec = load_chain(common.input);
  const Density pi = stationary(spec);
  const Matrix w = generator(spec);
  const double tol = tolerance_or(common, 1e-12);
  const double residual =
      (w * pi.values).cwiseAbs().maxCoeff() / w.cwiseAbs().maxCoeff();
  Json j;
  j["command"] = "stationary";
  j["pi"] = vector_to_json(pi.values);
  j["relative_residual"] = residual;
  j["tolerance"] = tol;
  j["ok"] = residual <= tol;
  return j;
}

Json cmd_forces(const CommonOptions& common) {
  const ChainSpec spec = load_chain(common.input);
  const Density rho = resolve_density(common.rho, spec);
  const auto [mob, force] = mobility_force(spec, rho);
  const EdgeField j_field = flux(mob, force);
  const double tol = tolerance_or(common, 1e-12);

  // Flux identity a sinh(F/2) = rho(x) r_xy - rho(y) r_yx, edge by edge.
  double identity_defect = 0.0;
  for (int e = 0; e < j_field.size(); ++e) {
    const auto [x, y] = j_field.support.edge(e);
    const double direct = rho(x) * spec.rate(x, y) - rho(y) * spec.rate(y, x);
    identity_defect =
        std::max(identity_defect, std::abs(j_field.values(e) - direct));
  }

  Json j;
  j["command"] = "forces";
  j["rho"] = vector_to_json(rho.values);
  j["mobility"] = edge_triplets(EdgeField(mob.support, mob.values));
  j["force"] = edge_triplets(force);
  j["flux"] = edge_triplets(j_field);
  j["entropy_production"] = entropy_production(j_field, force);
  j["psi_star_of_force"] = psi_star(mob, force);
  j["flux_identity_defect"] = identity_defect;
  j["tolerance"] = tol;
  j["ok"] = identity_defect <= tol;
  return j;
}

struct IsoOptions {
  std::string mode = "dual";
  std::string flip_edges;
  int perturbed_edge = 0;
  int balancing_edge = 1;
  double delta = 0.1;
};

EdgeField build_iso_force(const ChainSpec& spec, const Density& rho,
                          const IsoOptions& iso) {
  const auto [mob, force] = mobility_force(spec, rho);
  if (iso.mode == "dual")
    return iso_force_family(mob, force, ProvidedForce{dual_force(spec, rho)});
  if (iso.mode == "identity")
    return iso_force_family(mob, force, FlipEdges{});
  if (iso.mode == "flip-all") {
    std::vector<int> all(force.size());
    for (int e = 0; e < force.size(); ++e) all[e] = e;
    return iso_force_family(mob, force, FlipEdges{std::move(all)});
  }
  if (iso.mode == "flip")
    return iso_force_family(mob, force,
                            FlipEdges{parse_index_list(iso.flip_edges)});
  if (iso.mode == "two-edge")
    return iso_force_family(
        mob, force,
        TwoEdgeMove{iso.perturbed_edge, iso.balancing_edge, iso.delta});
  throw InvalidSpec("unknown iso selector: " + iso.mode);
}

Json cmd_entropy_split(const CommonOptions& common, const IsoOptions& iso) {
  const ChainSpec spec = load_chain(common.input);
  const Density rho = resolve_density(common.rho, spec);
  const EdgeField force_iso = build_iso_force(spec, rho, iso);
  const EntropyDecomposition dec = entropy_decomposition(spec, rho, force_iso);
  const double tol = tolerance_or(common, 1e-9);

  Json j;
  j["command"] = "entropy-split";
  j["iso_selector"] = iso.mode;
  j["entropy_production"] = dec.entropy_production;
  j["term1"] = dec.term1;
  j["term2"] = dec.term2;
  j["defect"] = dec.defect;
  j["level_set_defect"] = dec.level_set_defect;
  j["force_iso"] = edge_triplets(force_iso);
  j["tolerance"] = tol;
  j["ok"] = dec.defect <= tol && dec.term1 >= -1e-12 && dec.term2 >= -1e-12;
  return j;
}

Json cmd_adjoint(const CommonOptions& common) {
  const ChainSpec spec = load_chain(common.input);
  const Density rho = resolve_density(common.rho, spec);
  const ChainSpec adj = adjoint_chain(spec);
  const ChainSpec back = adjoint_chain(adj);
  const double involution_defect =
      (back.rates - spec.rates).cwiseAbs().maxCoeff();
  const double tol = tolerance_or(common, 1e-10);

  const auto [mob, force] = mobility_force(spec, rho);
  const EdgeField fstar = dual_force(spec, rho);
  const double dissipation_defect =
      std::abs(psi_star(mob, force) - psi_star(mob, fstar));

  // Representation sweep: the adjoint operator must not depend on the
  // reference measure.
  std::mt19937_64 rng(7u);
  std::uniform_real_distribution<double> unif(0.2, 2.0);
  double sweep_defect = 0.0;
  const int n_refs = 10;
  for (int k = 0; k < n_refs; ++k) {
    Vector mu(spec.n_states());
    for (int x = 0; x < spec.n_states(); ++x) mu(x) = unif(rng);
    mu /= mu.sum();
    sweep_defect = std::max(
        sweep_defect, representation(spec, Density(mu)).reconstruction_defect);
  }

  Json j;
  j["command"] = "adjoint";
  j["adjoint_rates"] = chain_to_json(adj)["rates"];
  j["pi"] = vector_to_json(stationary(spec).values);
  j["involution_defect"] = involution_defect;
  j["dual_force"] = edge_triplets(fstar);
  j["dissipation_equality_defect"] = dissipation_defect;
  j["representation_sweep"] = Json{{"n_references", n_refs},
                                   {"max_defect", sweep_defect}};
  j["tolerance"] = tol;
  j["ok"] = involution_defect <= tol && dissipation_defect <= tol &&
            sweep_defect <= tol;
  return j;
}

Json cmd_iso_family(const CommonOptions& common, const IsoOptions& iso) {
  const ChainSpec spec = load_chain(common.input);
  const Density rho = resolve_density(common.rho, spec);
  const auto [mob, force] = mobility_force(spec, rho);
  const EdgeField force_iso = build_iso_force(spec, rho, iso);
  const double tol = tolerance_or(common, 1e-10);
  const double defect = std::abs(psi_star(mob, force_iso) - psi_star(mob, force));

  Json j;
  j["command"] = "iso-family";
  j["iso_selector"] = iso.mode;
  j["force"] = edge_triplets(force);
  j["force_iso"] = edge_triplets(force_iso);
  j["psi_star_level"] = psi_star(mob, force);
  j["level_set_defect"] = defect;
  j["tolerance"] = tol;
  j["ok"] = defect <= tol;
  return j;
}

Json cmd_hamiltonian(const CommonOptions& common, const std::string& kind) {
  const ChainSpec spec = load_chain(common.input);
  const Density rho = resolve_density(common.rho, spec);
  const double tol = tolerance_or(common, 1e-10);
  std::mt19937_64 rng(11u);
  std::normal_distribution<double> normal(0.0, 1.0);

  Json j;
  j["command"] = "hamiltonian";
  j["kind"] = kind;

  const HamiltonianHandle edge = hamiltonian_from_psi(spec, rho);
  const HamiltonianHandle state = hamiltonian_from_generator(spec, rho);
  const auto [mob, force] = mobility_force(spec, rho);
  const EdgeField j_phys = flux(mob, force);

  if (kind == "edge") {
    j["value_at_zero"] = edge.value(Vector::Zero(edge.dim));
    const Vector g0 = edge.gradient(Vector::Zero(edge.dim));
    j["grad_zero_vs_flux_defect"] = (g0 - j_phys.values).cwiseAbs().maxCoeff();

    double recovery_defect = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      Vector xi(edge.dim);
      for (int e = 0; e < edge.dim; ++e) xi(e) = normal(rng);
      const EdgeField xi_field(force.support, xi);
      const double recovered = recover_psi_star(edge, force, xi_field);
      recovery_defect = std::max(
          recovery_defect, std::abs(recovered - psi_star(mob, xi_field)));
    }
    j["psi_star_recovery_defect"] = recovery_defect;
    j["ok"] = j["grad_zero_vs_flux_defect"].get<double>() <= tol &&
              recovery_defect <= tol;
  } else if (kind == "state") {
    j["value_at_zero"] = state.value(Vector::Zero(state.dim));
    double contraction_defect = 0.0;
    double gauge_defect = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      Vector xi(state.dim);
      for (int x = 0; x < state.dim; ++x) xi(x) = normal(rng);
      const EdgeField grad_xi = edge_gradient(force.support, xi);
      contraction_defect =
          std::max(contraction_defect,
                   std::abs(state.value(xi) - edge.value(grad_xi.values)));
      gauge_defect = std::max(
          gauge_defect,
          std::abs(state.value(xi) -
                   state.value(Vector(xi.array() + normal(rng)))));
    }
    j["contraction_defect"] = contraction_defect;
    j["gauge_invariance_defect"] = gauge_defect;
    j["ok"] = contraction_defect <= tol && gauge_defect <= tol;
  } else {
    throw InvalidSpec("unknown Hamiltonian kind: " + kind);
  }
  j["tolerance"] = tol;
  return j;
}

Json cmd_dv_rate(const CommonOptions& common) {
  const ChainSpec spec = load_chain(common.input);
  const Density rho = resolve_density(common.rho, spec);
  const DonskerVaradhanResult dv = donsker_varadhan(spec, rho);
  const double tol = tolerance_or(common, 1e-8);

  Json j;
  j["command"] = "dv-rate";
  j["value"] = dv.value;
  j["value_u_form"] = dv.value_u_form;
  j["two_route_defect"] = dv.defect;
  j["residual"] = dv.residual;
  j["xi_star"] = vector_to_json(dv.xi_star);
  j["tolerance"] = tol;
  j["ok"] = dv.defect <= tol && dv.value >= -1e-10;
  return j;
}

Json split_report_to_json(const SplitReport& report) {
  Json parts = Json::array();
  for (const SplitPart* part : {&report.part1, &report.part2}) {
    Json p;
    p["value"] = part->value;
    p["flux_argument"] = vector_to_json(part->flux_argument);
    parts.push_back(std::move(p));
  }
  Json j;
  j["lagrangian"] = report.lagrangian;
  j["parts"] = std::move(parts);
  j["xi_prime"] = vector_to_json(report.xi_prime);
  j["residual"] = report.residual;
  j["sum_defect"] = report.sum_defect;
  if (report.measured_pairing_coefficient)
    j["measured_pairing_coefficient"] = *report.measured_pairing_coefficient;
  else
    j["measured_pairing_coefficient"] = nullptr;
  return j;
}

Json cmd_decompose(const CommonOptions& common, const std::string& edges_csv,
                   const std::string& flux_arg) {
  const ChainSpec spec = load_chain(common.input);
  const Density rho = resolve_density(common.rho, spec);
  const auto [mob, force] = mobility_force(spec, rho);
  const double tol = tolerance_or(common, 1e-8);

  std::vector<int> subset = parse_index_list(edges_csv);
  if (subset.empty()) subset.push_back(0);
  std::vector<int> complement;
  for (int e = 0; e < mob.size(); ++e)
    if (std::find(subset.begin(), subset.end(), e) == subset.end())
      complement.push_back(e);

  const HamiltonianHandle h1 = edge_subset_hamiltonian(mob, force, subset);
  const HamiltonianHandle h2 = edge_subset_hamiltonian(mob, force, complement);

  Vector j_vec;
  if (flux_arg == "physical")
    j_vec = flux(mob, force).values;
  else if (flux_arg == "zero")
    j_vec = Vector::Zero(mob.size());
  else
    j_vec = edge_field_from_json(load_json_file(flux_arg), mob.support).values;

  const SplitReport report = decompose(h1, h2, j_vec);
  Json j = split_report_to_json(report);
  j["command"] = "decompose";
  j["edge_subset"] = Json(subset);
  j["tolerance"] = tol;
  j["ok"] = report.sum_defect <= tol && report.part1.value >= -1e-10 &&
            report.part2.value >= -1e-10;
  return j;
}

struct FpOptions {
  std::string model_file;
  int cells = 64;
  double drift = 1.0;
  double diffusion = 1.0;
  bool study = false;
};

Json grid_split_to_json(const GridSplitReport& report) {
  Json j;
  j["dv_value"] = report.dv_value;
  j["lemma_value"] = report.lemma_value;
  j["quadratic_value"] = report.quadratic_value;
  j["defect_dv_lemma"] = report.defect_dv_lemma;
  j["defect_lemma_quadratic"] = report.defect_lemma_quadratic;
  j["orthogonality_defect"] = report.orthogonality_defect;
  j["residual"] = report.residual;
  return j;
}

Json cmd_fp_demo(const CommonOptions& common, const FpOptions& fp) {
  GridModel model = fp.model_file.empty()
                        ? constant_ring(fp.cells, fp.drift, fp.diffusion)
                        : load_grid(fp.model_file);
  const double tol = tolerance_or(common, 1e-8);

  const DiscretizeResult disc = discretize(model);
  Density rho;
  if (common.rho == "stationary")
    rho = stationary(disc.chain);
  else if (common.rho == "bump")
    rho = bump_density(model.n_cells);
  else if (common.rho == "uniform")
    rho = uniform_density(model.n_cells);
  else
    rho = density_from_json(load_json_file(common.rho));

  const GridForceSplit split = grid_force_split(model, rho);
  const Vector recompose =
      split.symmetric_part + split.antisymmetric_part - split.force;
  // F_A must not depend on the density it is evaluated with.
  const GridForceSplit split_at_mu =
      grid_force_split(model, stationary(disc.chain));
  const double rho_independence =
      (split.antisymmetric_part - split_at_mu.antisymmetric_part)
          .cwiseAbs()
          .maxCoeff();

  Json j;
  j["command"] = "fp-demo";
  j["n_cells"] = model.n_cells;
  j["cfl_flagged"] = disc.cfl_flagged;
  j["max_cell_peclet"] = disc.max_cell_peclet;
  j["mu"] = vector_to_json(stationary(disc.chain).values);
  j["dual_drift"] = vector_to_json(dual_drift(model));
  Json fs;
  fs["force"] = vector_to_json(split.force);
  fs["symmetric_part"] = vector_to_json(split.symmetric_part);
  fs["antisymmetric_part"] = vector_to_json(split.antisymmetric_part);
  fs["recompose_defect"] = recompose.cwiseAbs().maxCoeff();
  fs["rho_independence_defect"] = rho_independence;
  j["force_split"] = std::move(fs);
  j["split_check"] = grid_split_to_json(grid_split_check(model, rho));

  if (fp.study) {
    if (!fp.model_file.empty())
      throw InvalidSpec("--study needs constant coefficients, not a model file");
    Json study = Json::array();
    for (int n : {fp.cells, 2 * fp.cells, 4 * fp.cells}) {
      const GridModel refined = constant_ring(n, fp.drift, fp.diffusion);
      const GridSplitReport r = grid_split_check(refined, bump_density(n));
      Json row = grid_split_to_json(r);
      row["n_cells"] = n;
      study.push_back(std::move(row));
    }
    j["study"] = std::move(study);
  }
  j["tolerance"] = tol;
  j["ok"] = j["split_check"]["defect_dv_lemma"].get<double>() <= tol;
  return j;
}

struct SimulateOptions {
  double t_end = 1e4;
  int x0 = 0;
  std::uint64_t seed = 42;
  int replicas = 1;
  bool export_trajectory = false;
};

Json cmd_simulate(const CommonOptions& common, const SimulateOptions& sim) {
  const ChainSpec spec = load_chain(common.input);
  const Density pi = stationary(spec);
  const auto [mob, force] = mobility_force(spec, pi);
  const EdgeField j_analytic = flux(mob, force);
  const double e_analytic = entropy_production(j_analytic, force);

  std::uint64_t seed = sim.seed;
  if (const char* env = std::getenv("NONREV_SEED")) seed = std::strtoull(env, nullptr, 10);

  Json replicas = Json::array();
  double mean_entropy = 0.0;
  for (int k = 0; k < sim.replicas; ++k) {
    const Trajectory traj = simulate(spec, sim.x0, sim.t_end, seed + k);
    const auto [rho_hat, j_hat] = empirical_measures(traj, spec);
    const double e_hat = entropy_rate_estimate(traj, spec);
    mean_entropy += e_hat;

    Json r;
    r["seed"] = seed + k;
    r["n_jumps"] = static_cast<std::int64_t>(traj.states.size()) - 1;
    r["rho_hat"] = vector_to_json(rho_hat.values);
    r["j_hat"] = edge_triplets(j_hat);
    r["entropy_rate_estimate"] = e_hat;
    if (sim.export_trajectory) {
      Json t = Json::array();
      Json s = Json::array();
      for (std::size_t i = 0; i < traj.times.size(); ++i) {
        t.push_back(traj.times[i]);
        s.push_back(traj.states[i]);
      }
      r["trajectory"] = Json{{"times", std::move(t)}, {"states", std::move(s)}};
    }
    replicas.push_back(std::move(r));
  }
  mean_entropy /= sim.replicas;

  Json j;
  j["command"] = "simulate";
  j["t_end"] = sim.t_end;
  j["x0"] = sim.x0;
  j["replicas"] = std::move(replicas);
  j["mean_entropy_rate_estimate"] = mean_entropy;
  Json analytic;
  analytic["pi"] = vector_to_json(pi.values);
  analytic["flux_at_pi"] = edge_triplets(j_analytic);
  analytic["entropy_production_at_pi"] = e_analytic;
  j["analytic"] = std::move(analytic);
  j["relative_entropy_rate_error"] =
      std::abs(mean_entropy - e_analytic) / std::max(1e-300, e_analytic);
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"force-flux analysis of non-reversible Markov jump processes",
               "nonrev"};
  app.require_subcommand(1);

  CommonOptions common;
  IsoOptions iso;
  FpOptions fp;
  SimulateOptions sim;
  std::string kind = "edge";
  std::string edges_csv;
  std::string flux_arg = "physical";

  auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
    if (needs_input)
      cmd->add_option("input", common.input, "chain JSON file")->required();
    cmd->add_option("--rho", common.rho,
                    "density: file path, 'stationary', or 'uniform'");
    cmd->add_option("--tol", common.tol, "override report tolerance");
    cmd->add_flag("--pretty", common.pretty, "indent JSON output");
  };
  auto add_iso = [&](CLI::App* cmd) {
    cmd->add_option("--iso", iso.mode,
                    "dual | identity | flip-all | flip | two-edge");
    cmd->add_option("--flip-edges", iso.flip_edges,
                    "comma-separated edge indices for --iso flip");
    cmd->add_option("--e1", iso.perturbed_edge, "perturbed edge (two-edge)");
    cmd->add_option("--e2", iso.balancing_edge, "balancing edge (two-edge)");
    cmd->add_option("--delta", iso.delta, "perturbation size (two-edge)");
  };

  add_common(app.add_subcommand("validate", "check a chain specification"));
  add_common(app.add_subcommand("stationary", "stationary distribution"));
  add_common(app.add_subcommand("forces", "mobility, force, flux, entropy"));
  {
    auto* cmd = app.add_subcommand("entropy-split",
                                   "Bregman split of the entropy production");
    add_common(cmd);
    add_iso(cmd);
  }
  add_common(app.add_subcommand("adjoint", "time-reversed chain and dual force"));
  {
    auto* cmd = app.add_subcommand("iso-family", "iso-dissipation force member");
    add_common(cmd);
    add_iso(cmd);
  }
  {
    auto* cmd = app.add_subcommand("hamiltonian", "Hamiltonian diagnostics");
    add_common(cmd);
    cmd->add_option("--kind", kind, "edge | state");
  }
  add_common(app.add_subcommand("dv-rate", "occupation rate function"));
  {
    auto* cmd = app.add_subcommand("decompose", "two-part Hamiltonian split");
    add_common(cmd);
    cmd->add_option("--edges", edges_csv, "edge subset of the first part");
    cmd->add_option("--flux", flux_arg, "physical | zero | edge-field file");
  }
  std::string fp_rho = "bump";
  {
    auto* cmd = app.add_subcommand("fp-demo", "periodic drift-diffusion demo");
    cmd->add_option("--model", fp.model_file, "grid model JSON file");
    cmd->add_option("--cells", fp.cells, "cells of the constant-drift ring");
    cmd->add_option("--drift", fp.drift, "constant drift");
    cmd->add_option("--diffusion", fp.diffusion, "constant diffusion");
    cmd->add_flag("--study", fp.study, "mesh-refinement study (n, 2n, 4n)");
    cmd->add_option("--rho", fp_rho, "bump | stationary | uniform | file");
    cmd->add_option("--tol", common.tol, "override report tolerance");
    cmd->add_flag("--pretty", common.pretty, "indent JSON output");
  }
  {
    auto* cmd = app.add_subcommand("simulate", "Gillespie simulation");
    add_common(cmd);
    cmd->add_option("--t-end", sim.t_end, "simulation horizon");
    cmd->add_option("--x0", sim.x0, "initial state");
    cmd->add_option("--seed", sim.seed, "RNG seed (NONREV_SEED overrides)");
    cmd->add_option("--replicas", sim.replicas, "independent trajectories");
    cmd->add_flag("--export-trajectory", sim.export_trajectory,
                  "include jump times and states in the report");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help() << "\n";
      return 0;
    }
    err << "error: " << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

  try {
    Json report;
    if (app.got_subcommand("validate"))
      report = cmd_validate(common);
    else if (app.got_subcommand("stationary"))
      report = cmd_stationary(common);
    else if (app.got_subcommand("forces"))
      report = cmd_forces(common);
    else if (app.got_subcommand("entropy-split"))
      report = cmd_entropy_split(common, iso);
    else if (app.got_subcommand("adjoint"))
      report = cmd_adjoint(common);
    else if (app.got_subcommand("iso-family"))
      report = cmd_iso_family(common, iso);
    else if (app.got_subcommand("hamiltonian"))
      report = cmd_hamiltonian(common, kind);
    else if (app.got_subcommand("dv-rate"))
      report = cmd_dv_rate(common);
    else if (app.got_subcommand("decompose"))
      report = cmd_decompose(common, edges_csv, flux_arg);
    else if (app.got_subcommand("fp-demo")) {
      common.rho = fp_rho;
      report = cmd_fp_demo(common, fp);
    } else if (app.got_subcommand("simulate")) {
      sim.replicas = std::max(1, sim.replicas);
      report = cmd_simulate(common, sim);
    }
    emit(out, report, common.pretty);
    return 0;
  } catch (const Error& e) {
    Json error;
    error["error"] = Json{{"type", e.kind()}, {"message", e.what()}};
    emit(out, error, common.pretty);
    return 1;
  }
}

}  // namespace nonrev
