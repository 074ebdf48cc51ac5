#pragma once

#include "nonrev/force_flux.hpp"

namespace nonrev {

// Time-reversed (adjoint) chain: r*_xy = pi(y) r_yx / pi(x). It shares the
// stationary measure pi, and applying the construction twice recovers the
// original rates.
ChainSpec adjoint_chain(const ChainSpec& spec);

// mu-indexed representation of the adjoint generator. For any strictly
// positive reference measure mu with h = mu/pi,
//
//   (W+_mu)_{x,y} = W_{y,x} mu(x)/mu(y)      (adjoint w.r.t. the 1/mu weight)
//   W* = h^{-1} o W+_mu o h
//
// and W* is the same operator for every mu: the representations differ, the
// operator does not. reconstruction_defect records the entrywise gap to the
// pi-adjoint generator.
struct AdjointRepresentation {
  Density mu;
  Vector h;         // h(x) = mu(x)/pi(x)
  Matrix wplus_mu;  // adjoint of W w.r.t. mu^{-1}
  Matrix wstar;     // h^{-1} o W+_mu o h
  double reconstruction_defect = 0.0;
};

// Throws ZeroReference when mu vanishes somewhere.
AdjointRepresentation representation(const ChainSpec& spec, const Density& mu);

// Force of the adjoint chain at rho. Satisfies the dissipation equality
// Psi*(rho, F) = Psi*(rho, F*): the mobility is adjoint-invariant
// (r_xy r_yx = r*_xy r*_yx) and the total edge activity is preserved by
// global balance. Both facts are verified numerically in the tests rather
// than assumed.
EdgeField dual_force(const ChainSpec& spec, const Density& rho);

// Force split with the dual force as the iso-dissipation member:
// F_S = (F + F*)/2, F_A = (F - F*)/2. At rho = pi, F_A vanishes exactly
// when the chain satisfies detailed balance.
std::pair<EdgeField, EdgeField> canonical_split(const ChainSpec& spec,
                                                const Density& rho);

}  // namespace nonrev
