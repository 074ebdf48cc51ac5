#include "nonrev/duality.hpp"

#include <cmath>

namespace nonrev {

ChainSpec adjoint_chain(const ChainSpec& spec) {
  const Density pi = stationary(spec);
  const int n = spec.n_states();
  Matrix r = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) r(x, y) = pi(y) * spec.rate(y, x) / pi(x);
  return ChainSpec(std::move(r), spec.labels);
}

AdjointRepresentation representation(const ChainSpec& spec,
                                     const Density& mu) {
  const int n = spec.n_states();
  if (mu.size() != n) throw InvalidSpec("reference measure has wrong size");
  if ((mu.values.array() <= 0.0).any())
    throw ZeroReference("reference measure must be strictly positive");

  const Density pi = stationary(spec);
  const Matrix w = generator(spec);

  AdjointRepresentation rep;
  rep.mu = mu;
  rep.h = mu.values.array() / pi.values.array();

  rep.wplus_mu.resize(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      rep.wplus_mu(x, y) = w(y, x) * mu(x) / mu(y);

  rep.wstar.resize(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      rep.wstar(x, y) = rep.wplus_mu(x, y) * rep.h(y) / rep.h(x);

  const Matrix pi_adjoint = generator(adjoint_chain(spec));
  rep.reconstruction_defect = (rep.wstar - pi_adjoint).cwiseAbs().maxCoeff();
  return rep;
}

EdgeField dual_force(const ChainSpec& spec, const Density& rho) {
  const ChainSpec adj = adjoint_chain(spec);
  auto [mob, force] = mobility_force(adj, rho);
  (void)mob;
  return force;
}

std::pair<EdgeField, EdgeField> canonical_split(const ChainSpec& spec,
                                                const Density& rho) {
  const auto [mob, force] = mobility_force(spec, rho);
  (void)mob;
  return force_split(force, dual_force(spec, rho));
}

}  // namespace nonrev
