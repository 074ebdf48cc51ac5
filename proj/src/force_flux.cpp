#include "nonrev/force_flux.hpp"

#include <cmath>
#include <string>

namespace nonrev {

std::pair<Mobility, EdgeField> mobility_force(const ChainSpec& spec,
                                              const Density& rho) {
  const EdgeSet support = edge_set(spec);
  Vector a(support.size());
  Vector f(support.size());
  for (int e = 0; e < support.size(); ++e) {
    const auto [x, y] = support.edge(e);
    if (rho(x) <= 0.0 || rho(y) <= 0.0)
      throw ZeroDensity("density vanishes on state touching edge (" +
                        std::to_string(x) + "," + std::to_string(y) + ")");
    const double fwd = rho(x) * spec.rate(x, y);
    const double bwd = rho(y) * spec.rate(y, x);
    a(e) = 2.0 * std::sqrt(fwd * bwd);
    f(e) = std::log(fwd / bwd);
  }
  return {Mobility(support, std::move(a)), EdgeField(support, std::move(f))};
}

EdgeField flux(const Mobility& mob, const EdgeField& force) {
  require_same_support(mob.support, force.support);
  Vector j = mob.values.array() * (force.values.array() / 2.0).sinh();
  return EdgeField(force.support, std::move(j));
}

double pairing(const EdgeField& u, const EdgeField& v) {
  require_same_support(u.support, v.support);
  return u.values.dot(v.values);
}

double psi_star(const Mobility& mob, const EdgeField& f) {
  require_same_support(mob.support, f.support);
  return (2.0 * mob.values.array() * ((f.values.array() / 2.0).cosh() - 1.0))
      .sum();
}

double psi(const Mobility& mob, const EdgeField& j) {
  require_same_support(mob.support, j.support);
  double total = 0.0;
  for (int e = 0; e < mob.size(); ++e) {
    const double a = mob.values(e);
    const double je = j.values(e);
    total += 2.0 * je * std::asinh(je / a) - 2.0 * std::hypot(a, je) + 2.0 * a;
  }
  return total;
}

EdgeField psi_star_grad(const Mobility& mob, const EdgeField& f) {
  return flux(mob, f);
}

EdgeField psi_grad(const Mobility& mob, const EdgeField& j) {
  require_same_support(mob.support, j.support);
  Vector g(j.size());
  for (int e = 0; e < j.size(); ++e)
    g(e) = 2.0 * std::asinh(j.values(e) / mob.values(e));
  return EdgeField(j.support, std::move(g));
}

double entropy_production(const EdgeField& j, const EdgeField& force) {
  return 2.0 * pairing(j, force);
}

double bregman(const Mobility& mob, const EdgeField& j1, const EdgeField& j2) {
  require_same_support(j1.support, j2.support);
  const EdgeField grad2 = psi_grad(mob, j2);
  return psi(mob, j1) - psi(mob, j2) -
         (j1.values - j2.values).dot(grad2.values);
}

double DissipationPair::psi_via_oracle(const EdgeField& j,
                                       const OracleGrid& grid) const {
  require_same_support(mobility.support, j.support);
  // Psi* is separable, so its conjugate is the sum of per-edge conjugates.
  double total = 0.0;
  for (int e = 0; e < j.size(); ++e) {
    const double a = mobility.values(e);
    auto edge_psi_star = [a](const Vector& x) {
      return 2.0 * a * (std::cosh(x(0) / 2.0) - 1.0);
    };
    Vector slope(1);
    slope(0) = j.values(e);
    total += legendre_oracle(edge_psi_star, slope, grid);
  }
  return total;
}

DissipationPair dissipation_pair(const ChainSpec& spec, const Density& rho) {
  return DissipationPair{mobility_force(spec, rho).first};
}

namespace {

double psi_star_edge_term(double a, double f) {
  return 2.0 * a * (std::cosh(f / 2.0) - 1.0);
}

EdgeField apply_flip(const Mobility&, const EdgeField& force,
                     const FlipEdges& flip) {
  Vector v = force.values;
  for (int e : flip.edges) {
    if (e < 0 || e >= force.size())
      throw InvalidSpec("flip index out of range");
    v(e) = -v(e);
  }
  return EdgeField(force.support, std::move(v));
}

EdgeField apply_two_edge_move(const Mobility& mob, const EdgeField& force,
                              const TwoEdgeMove& move) {
  const int e1 = move.perturbed_edge;
  const int e2 = move.balancing_edge;
  if (e1 == e2 || e1 < 0 || e2 < 0 || e1 >= force.size() || e2 >= force.size())
    throw InvalidSpec("two-edge move needs two distinct edges in range");

  Vector v = force.values;
  v(e1) += move.delta;

  // The balancing edge must contribute whatever the rest leaves of the
  // level; its contribution 2a(cosh(f/2)-1) is nonnegative and increasing
  // in |f|.
  const double level = psi_star(mob, force);
  double rest = 0.0;
  for (int e = 0; e < force.size(); ++e)
    if (e != e2) rest += psi_star_edge_term(mob.values(e), v(e));
  const double target = level - rest;
  if (target < -1e-12 * std::max(1.0, level))
    throw LevelSetInfeasible("requested perturbation overshoots the level (" +
                             std::to_string(-target) + " short)");

  const double a2 = mob.values(e2);
  const double sign = force.values(e2) >= 0.0 ? 1.0 : -1.0;
  const double clamped = std::max(target, 0.0);

  // Bisection on t = |f_e2| for 2 a2 (cosh(t/2) - 1) = target.
  double hi = 1.0;
  while (psi_star_edge_term(a2, hi) < clamped) {
    hi *= 2.0;
    if (hi > 1e4) throw LevelSetInfeasible("balancing edge cannot reach level");
  }
  double lo = 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (psi_star_edge_term(a2, mid) < clamped)
      lo = mid;
    else
      hi = mid;
  }
  v(e2) = sign * 0.5 * (lo + hi);
  return EdgeField(force.support, std::move(v));
}

}  // namespace

EdgeField iso_force_family(const Mobility& mob, const EdgeField& force,
                           const IsoSelector& selector) {
  require_same_support(mob.support, force.support);
  EdgeField out = std::visit(
      [&](const auto& sel) -> EdgeField {
        using T = std::decay_t<decltype(sel)>;
        if constexpr (std::is_same_v<T, FlipEdges>)
          return apply_flip(mob, force, sel);
        else if constexpr (std::is_same_v<T, TwoEdgeMove>)
          return apply_two_edge_move(mob, force, sel);
        else
          return sel.field;
      },
      selector);
  require_same_support(out.support, force.support);
  const double defect = std::abs(psi_star(mob, out) - psi_star(mob, force));
  if (defect > 1e-10 * std::max(1.0, psi_star(mob, force)))
    throw NotOnLevelSet("iso force misses the level set by " +
                        std::to_string(defect));
  return out;
}

std::pair<EdgeField, EdgeField> force_split(const EdgeField& force,
                                            const EdgeField& force_iso) {
  require_same_support(force.support, force_iso.support);
  EdgeField fs(force.support, 0.5 * (force.values + force_iso.values));
  EdgeField fa(force.support, 0.5 * (force.values - force_iso.values));
  return {std::move(fs), std::move(fa)};
}

EntropyDecomposition entropy_decomposition(const ChainSpec& spec,
                                           const Density& rho,
                                           const EdgeField& force_iso) {
  const auto [mob, force] = mobility_force(spec, rho);
  require_same_support(force.support, force_iso.support);

  EntropyDecomposition out;
  out.level_set_defect =
      std::abs(psi_star(mob, force_iso) - psi_star(mob, force));
  if (out.level_set_defect > 1e-8)
    throw NotOnLevelSet("iso force off the level set by " +
                        std::to_string(out.level_set_defect));

  const EdgeField j = flux(mob, force);
  const EdgeField j_iso = flux(mob, force_iso);
  const EdgeField minus_j_iso(j_iso.support, -j_iso.values);

  out.entropy_production = entropy_production(j, force);
  out.term1 = bregman(mob, j, minus_j_iso);
  out.term2 = bregman(mob, j, j_iso);
  out.defect = std::abs(out.entropy_production - out.term1 - out.term2);
  return out;
}

}  // namespace nonrev
