#include "nonrev/variational.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nonrev {

namespace {

void require_kind(const HamiltonianHandle& h, HamiltonianHandle::Kind kind,
                  const char* what) {
  if (h.kind != kind) throw InvalidSpec(std::string(what) + ": wrong handle kind");
}

HamiltonianHandle edge_hamiltonian_impl(Mobility mob, EdgeField force,
                                        std::vector<int> active) {
  const int dim = force.size();
  const Vector a = mob.values;
  const Vector half_f = force.values / 2.0;

  HamiltonianHandle h;
  h.kind = HamiltonianHandle::Kind::Edge;
  h.dim = dim;
  h.gauge_invariant = false;
  h.vanishes_at_zero = true;

  h.value = [a, half_f, active](const Vector& xi) {
    double total = 0.0;
    for (int e : active)
      total += a(e) * (std::cosh(half_f(e) + xi(e)) - std::cosh(half_f(e)));
    return total;
  };
  h.gradient = [a, half_f, active, dim](const Vector& xi) {
    Vector g = Vector::Zero(dim);
    for (int e : active) g(e) = a(e) * std::sinh(half_f(e) + xi(e));
    return g;
  };
  h.hessian = [a, half_f, active, dim](const Vector& xi) {
    Matrix m = Matrix::Zero(dim, dim);
    for (int e : active) m(e, e) = a(e) * std::cosh(half_f(e) + xi(e));
    return m;
  };
  h.edge_context = HamiltonianHandle::EdgeContext{std::move(mob),
                                                  std::move(force),
                                                  std::move(active)};
  return h;
}

// Restriction of Psi / Psi* / <.,.> to the active edges of a context.
double psi_active(const HamiltonianHandle::EdgeContext& ctx, const Vector& j) {
  double total = 0.0;
  for (int e : ctx.active) {
    const double a = ctx.mobility.values(e);
    const double je = j(e);
    total += 2.0 * je * std::asinh(je / a) - 2.0 * std::hypot(a, je) + 2.0 * a;
  }
  return total;
}

double psi_star_active(const HamiltonianHandle::EdgeContext& ctx,
                       const Vector& f) {
  double total = 0.0;
  for (int e : ctx.active) {
    const double a = ctx.mobility.values(e);
    total += 2.0 * a * (std::cosh(f(e) / 2.0) - 1.0);
  }
  return total;
}

double pairing_active(const HamiltonianHandle::EdgeContext& ctx,
                      const Vector& u, const Vector& v) {
  double total = 0.0;
  for (int e : ctx.active) total += u(e) * v(e);
  return total;
}

std::optional<double> measure_pairing_coefficient(const HamiltonianHandle& h,
                                                  const Vector& j,
                                                  double lagrangian) {
  if (!h.edge_context) return std::nullopt;
  const auto& ctx = *h.edge_context;
  const double jf = pairing_active(ctx, j, ctx.force.values);
  if (std::abs(jf) < 1e-9) return std::nullopt;
  const double psi_j = psi_active(ctx, j);
  const double psi_star_f = psi_star_active(ctx, ctx.force.values);
  // L = 1/2 [ Psi(j) - c <j,F> + Psi*(F) ]  =>  c as measured:
  return (psi_j + psi_star_f - 2.0 * lagrangian) / jf;
}

HamiltonianHandle sum_handles(const HamiltonianHandle& h1,
                              const HamiltonianHandle& h2) {
  if (h1.dim != h2.dim || h1.kind != h2.kind)
    throw InvalidSpec("cannot sum Hamiltonians on different spaces");
  HamiltonianHandle h;
  h.kind = h1.kind;
  h.dim = h1.dim;
  h.gauge_invariant = h1.gauge_invariant && h2.gauge_invariant;
  h.vanishes_at_zero = h1.vanishes_at_zero && h2.vanishes_at_zero;
  auto v1 = h1.value, v2 = h2.value;
  auto g1 = h1.gradient, g2 = h2.gradient;
  auto m1 = h1.hessian, m2 = h2.hessian;
  h.value = [v1, v2](const Vector& xi) { return v1(xi) + v2(xi); };
  h.gradient = [g1, g2](const Vector& xi) -> Vector { return g1(xi) + g2(xi); };
  h.hessian = [m1, m2](const Vector& xi) -> Matrix { return m1(xi) + m2(xi); };
  if (h1.edge_context && h2.edge_context &&
      same_support(h1.edge_context->mobility.support,
                   h2.edge_context->mobility.support) &&
      h1.edge_context->mobility.values == h2.edge_context->mobility.values &&
      h1.edge_context->force.values == h2.edge_context->force.values) {
    std::vector<int> active = h1.edge_context->active;
    active.insert(active.end(), h2.edge_context->active.begin(),
                  h2.edge_context->active.end());
    std::sort(active.begin(), active.end());
    if (std::adjacent_find(active.begin(), active.end()) == active.end()) {
      h.edge_context = HamiltonianHandle::EdgeContext{
          h1.edge_context->mobility, h1.edge_context->force, std::move(active)};
    }
  }
  return h;
}

}  // namespace

HamiltonianHandle hamiltonian_from_psi(const ChainSpec& spec,
                                       const Density& rho) {
  auto [mob, force] = mobility_force(spec, rho);
  std::vector<int> all(mob.size());
  for (int e = 0; e < mob.size(); ++e) all[e] = e;
  return edge_hamiltonian_impl(std::move(mob), std::move(force),
                               std::move(all));
}

HamiltonianHandle edge_subset_hamiltonian(const Mobility& mob,
                                          const EdgeField& force,
                                          std::vector<int> edges) {
  require_same_support(mob.support, force.support);
  for (int e : edges)
    if (e < 0 || e >= mob.size()) throw InvalidSpec("edge index out of range");
  return edge_hamiltonian_impl(mob, force, std::move(edges));
}

HamiltonianHandle hamiltonian_from_generator(const ChainSpec& spec,
                                             const Density& rho) {
  const int n = spec.n_states();
  if (rho.size() != n) throw InvalidSpec("density size mismatch");
  const Matrix rates = spec.rates;
  const Vector p = rho.values;

  HamiltonianHandle h;
  h.kind = HamiltonianHandle::Kind::State;
  h.dim = n;
  h.gauge_invariant = true;
  h.vanishes_at_zero = true;

  h.value = [rates, p, n](const Vector& xi) {
    double total = 0.0;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (rates(x, y) > 0.0)
          total += p(x) * rates(x, y) * std::expm1(xi(y) - xi(x));
    return total;
  };
  h.gradient = [rates, p, n](const Vector& xi) {
    Vector g = Vector::Zero(n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (rates(x, y) > 0.0) {
          const double flow = p(x) * rates(x, y) * std::exp(xi(y) - xi(x));
          g(y) += flow;
          g(x) -= flow;
        }
    return g;
  };
  h.hessian = [rates, p, n](const Vector& xi) {
    Matrix m = Matrix::Zero(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (rates(x, y) > 0.0) {
          const double flow = p(x) * rates(x, y) * std::exp(xi(y) - xi(x));
          m(y, y) += flow;
          m(x, x) += flow;
          m(x, y) -= flow;
          m(y, x) -= flow;
        }
    return m;
  };
  return h;
}

HamiltonianHandle linear_hamiltonian(Vector w, HamiltonianHandle::Kind kind) {
  const int dim = static_cast<int>(w.size());
  HamiltonianHandle h;
  h.kind = kind;
  h.dim = dim;
  h.gauge_invariant = kind == HamiltonianHandle::Kind::State &&
                      std::abs(w.sum()) <= 1e-12 * (1.0 + w.cwiseAbs().sum());
  h.vanishes_at_zero = true;
  h.value = [w](const Vector& xi) { return w.dot(xi); };
  h.gradient = [w](const Vector&) { return w; };
  h.hessian = [dim](const Vector&) { return Matrix::Zero(dim, dim); };
  return h;
}

HamiltonianHandle subtract_linear(const HamiltonianHandle& h, const Vector& w) {
  if (static_cast<int>(w.size()) != h.dim)
    throw InvalidSpec("linear term has wrong dimension");
  HamiltonianHandle out = h;
  auto v = h.value;
  auto g = h.gradient;
  out.value = [v, w](const Vector& xi) { return v(xi) - w.dot(xi); };
  out.gradient = [g, w](const Vector& xi) -> Vector { return g(xi) - w; };
  out.edge_context.reset();
  out.gauge_invariant =
      h.gauge_invariant && std::abs(w.sum()) <= 1e-12 * (1.0 + w.cwiseAbs().sum());
  return out;
}

double recover_psi_star(const HamiltonianHandle& h, const EdgeField& force,
                        const EdgeField& xi) {
  require_kind(h, HamiltonianHandle::Kind::Edge, "recover_psi_star");
  require_same_support(force.support, xi.support);
  const Vector at_xi = 0.5 * (xi.values - force.values);
  const Vector at_zero = -0.5 * force.values;
  return 2.0 * (h.value(at_xi) - h.value(at_zero));
}

LagrangianValue legendre(const HamiltonianHandle& h, const Vector& j,
                         const NewtonConfig& cfg,
                         const std::optional<Vector>& x0) {
  if (static_cast<int>(j.size()) != h.dim)
    throw InvalidSpec("flux has wrong dimension");
  if (h.gauge_invariant &&
      std::abs(j.sum()) > 1e-10 * (1.0 + j.cwiseAbs().maxCoeff()))
    throw NoConvergence(
        "state-level flux must sum to zero (gauge-incompatible argument)");

  auto value = h.value;
  auto grad = h.gradient;
  auto objective = [value, j](const Vector& xi) { return value(xi) - j.dot(xi); };
  auto objective_grad = [grad, j](const Vector& xi) -> Vector {
    return grad(xi) - j;
  };
  const Vector start = x0 ? *x0 : Vector::Zero(h.dim);
  const NewtonResult res =
      newton_minimize(objective, objective_grad, h.hessian, start, cfg,
                      h.gauge_invariant);

  LagrangianValue out;
  out.optimizer = h.gauge_invariant ? gauge_fix(res.x) : res.x;
  out.value = -res.value;  // sup <j,xi> - H = -min (H - <j,xi>)
  out.residual = res.residual;
  out.measured_pairing_coefficient =
      measure_pairing_coefficient(h, j, out.value);
  return out;
}

LagrangianValue legendre(const HamiltonianHandle& h, const EdgeField& j,
                         const NewtonConfig& cfg) {
  require_kind(h, HamiltonianHandle::Kind::Edge, "legendre");
  return legendre(h, j.values, cfg);
}

MinHamiltonianResult min_hamiltonian(const HamiltonianHandle& h,
                                     const NewtonConfig& cfg) {
  const NewtonResult res =
      newton_minimize(h.value, h.gradient, h.hessian, Vector::Zero(h.dim), cfg,
                      h.gauge_invariant);
  MinHamiltonianResult out;
  out.value = res.value;
  out.xi_star = h.gauge_invariant ? gauge_fix(res.x) : res.x;
  out.residual = res.residual;
  return out;
}

bool convexity_probe(const HamiltonianHandle& h, int trials, double tol,
                     unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Vector a(h.dim), b(h.dim);
    for (int i = 0; i < h.dim; ++i) {
      a(i) = normal(rng);
      b(i) = normal(rng);
    }
    const double mid = h.value(0.5 * (a + b));
    const double avg = 0.5 * (h.value(a) + h.value(b));
    if (mid > avg + tol * (1.0 + std::abs(avg))) return false;
  }
  return true;
}

bool reversibility_probe(const HamiltonianHandle& h, const Vector& ds,
                         int trials, double tol, unsigned seed) {
  if (static_cast<int>(ds.size()) != h.dim)
    throw InvalidSpec("dS has wrong dimension");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Vector xi(h.dim);
    for (int i = 0; i < h.dim; ++i) xi(i) = normal(rng);
    const double lhs = h.value(xi);
    const double rhs = h.value(ds - xi);
    if (std::abs(lhs - rhs) > tol * (1.0 + std::abs(lhs))) return false;
  }
  return true;
}

SplitReport decompose(const HamiltonianHandle& h1, const HamiltonianHandle& h2,
                      const Vector& j, const NewtonConfig& cfg) {
  if (!h1.vanishes_at_zero || !h2.vanishes_at_zero)
    throw InvalidSpec("decompose requires H1(0) = H2(0) = 0");
  if (!convexity_probe(h1))
    throw NonConvexPart("H1 failed the midpoint convexity probe");
  if (!convexity_probe(h2))
    throw NonConvexPart("H2 failed the midpoint convexity probe");

  const HamiltonianHandle h = sum_handles(h1, h2);
  const LagrangianValue full = legendre(h, j, cfg);
  const Vector& xi_prime = full.optimizer;

  SplitReport report;
  report.lagrangian = full.value;
  report.xi_prime = xi_prime;
  report.residual = full.residual;
  report.measured_pairing_coefficient = full.measured_pairing_coefficient;

  report.part1.flux_argument = h1.gradient(xi_prime);
  report.part2.flux_argument = h2.gradient(xi_prime);
  // xi' is already the maximizer of <s_i, xi> - H_i (its gradient vanishes
  // there); the Newton call just certifies the value with a residual.
  report.part1.value =
      legendre(h1, report.part1.flux_argument, cfg, xi_prime).value;
  report.part2.value =
      legendre(h2, report.part2.flux_argument, cfg, xi_prime).value;
  report.sum_defect = std::abs(report.lagrangian - report.part1.value -
                               report.part2.value);
  return report;
}

double reversible_value(const HamiltonianHandle& h2, const Vector& ds) {
  if (!reversibility_probe(h2, ds))
    throw NotReversible("H2 is not symmetric about dS/2");
  // Psi2*(xi) = 2 [ H2((xi + dS)/2) - H2(dS/2) ]; value at xi = dS.
  return h2.value(ds) - h2.value(0.5 * ds);
}

double reversible_value(const HamiltonianHandle& h2, const StatePotential& ds) {
  return reversible_value(h2, ds.values);
}

StatePotential entropy_differential(const Density& rho, const Density& pi) {
  if (rho.size() != pi.size()) throw InvalidSpec("density size mismatch");
  if ((rho.values.array() <= 0.0).any() || (pi.values.array() <= 0.0).any())
    throw ZeroDensity("entropy differential needs strictly positive measures");
  return StatePotential(
      gauge_fix((rho.values.array() / pi.values.array()).log()));
}

double constant_part_value(const HamiltonianHandle& h1, double h2_of_rho,
                           const NewtonConfig& cfg) {
  return legendre(h1, Vector::Zero(h1.dim), cfg).value - h2_of_rho;
}

LinearPartReport linear_part_value(const Vector& w_field,
                                   const HamiltonianHandle& h2,
                                   const Vector& ds, const NewtonConfig& cfg) {
  if (static_cast<int>(w_field.size()) != h2.dim)
    throw InvalidSpec("W has wrong dimension");
  if (!reversibility_probe(h2, ds))
    throw NotReversible("H2 is not symmetric about dS/2");

  LinearPartReport report;
  const LagrangianValue l2 = legendre(h2, Vector(-w_field), cfg);
  report.lagrangian_zero = l2.value;
  report.residual = l2.residual;

  // Dissipation potential generated by H2 around dS.
  auto h2v = h2.value;
  auto h2g = h2.gradient;
  auto h2m = h2.hessian;
  const double h2_half_ds = h2v(0.5 * ds);
  auto psi2_star = [h2v, ds, h2_half_ds](const Vector& xi) {
    return 2.0 * (h2v(0.5 * (xi + ds)) - h2_half_ds);
  };
  report.psi2_star_of_ds = psi2_star(ds);
  report.w_ds_pairing = w_field.dot(ds);

  // Psi2(-W) = sup_xi { <-W, xi> - Psi2*(xi) }.
  auto grad = [h2g, ds, w_field](const Vector& xi) -> Vector {
    return h2g(0.5 * (xi + ds)) + w_field;
  };
  auto objective = [psi2_star, w_field](const Vector& xi) {
    return psi2_star(xi) + w_field.dot(xi);
  };
  auto hess = [h2m, ds](const Vector& xi) -> Matrix {
    return 0.5 * h2m(0.5 * (xi + ds));
  };
  const NewtonResult conj = newton_minimize(objective, grad, hess,
                                            Vector::Zero(h2.dim), cfg,
                                            h2.gauge_invariant);
  report.psi2_of_minus_w = -conj.value;
  report.residual = std::max(report.residual, conj.residual);

  report.expansion_value = 0.5 * report.psi2_of_minus_w +
                           0.5 * report.psi2_star_of_ds + report.w_ds_pairing;
  report.expansion_defect =
      std::abs(report.expansion_value - report.lagrangian_zero);

  report.orthogonal_value =
      report.psi2_of_minus_w + psi2_star(Vector(-0.5 * ds));
  report.orthogonal_defect =
      std::abs(report.orthogonal_value - report.lagrangian_zero);
  return report;
}

DonskerVaradhanResult donsker_varadhan(const ChainSpec& spec,
                                       const Density& rho,
                                       const NewtonConfig& cfg) {
  const HamiltonianHandle h = hamiltonian_from_generator(spec, rho);
  const LagrangianValue lv = legendre(h, Vector::Zero(h.dim), cfg);

  DonskerVaradhanResult out;
  out.value = lv.value;
  out.xi_star = lv.optimizer;
  out.residual = lv.residual;

  // Classical form through u = e^{xi}: -sum_x rho(x) (L u)(x) / u(x) with L
  // acting on observables.
  const Matrix l_backward = generator(spec).transpose();
  const Vector u = out.xi_star.array().exp();
  const Vector lu = l_backward * u;
  out.value_u_form = -(rho.values.array() * lu.array() / u.array()).sum();
  out.defect = std::abs(out.value - out.value_u_form);
  return out;
}

}  // namespace nonrev
