#pragma once

#include <variant>
#include <vector>

#include "nonrev/edge_field.hpp"
#include "nonrev/solvers.hpp"

namespace nonrev {

// Edge mobility and force at a density rho:
//
//   a_xy = 2 sqrt(rho(x) r_xy rho(y) r_yx),
//   F_xy = log( rho(x) r_xy / (rho(y) r_yx) ),
//
// on the bidirectional edge support. rho must be strictly positive on every
// state touching an edge (ZeroDensity otherwise); one-sided rates raise
// ZeroRate.
std::pair<Mobility, EdgeField> mobility_force(const ChainSpec& spec,
                                              const Density& rho);

// Net probability current j_xy = a_xy sinh(F_xy / 2).
EdgeField flux(const Mobility& mob, const EdgeField& force);

// Dual pairing <u,v> = sum over undirected edges of u_xy v_xy (one half of
// the ordered-pair sum). With this convention d/df Psi*(f) = a sinh(f/2) is
// exactly the flux, with no stray factors of two.
double pairing(const EdgeField& u, const EdgeField& v);

// Dissipation potentials, the Legendre pair generating j = a sinh(F/2):
//
//   Psi*(f) = sum_e 2 a_e (cosh(f_e/2) - 1)
//   Psi (j) = sum_e [ 2 j_e arsinh(j_e/a_e) - 2 sqrt(a_e^2+j_e^2) + 2 a_e ]
//
// Both are even and convex in the edge argument, vanish at zero, and are
// separable over edges.
double psi_star(const Mobility& mob, const EdgeField& f);
double psi(const Mobility& mob, const EdgeField& j);

// Gradients: d Psi*/df = a sinh(f/2), d Psi/dj = 2 arsinh(j/a).
EdgeField psi_star_grad(const Mobility& mob, const EdgeField& f);
EdgeField psi_grad(const Mobility& mob, const EdgeField& j);

// Entropy production rate e = 2 <j, F>.
double entropy_production(const EdgeField& j, const EdgeField& force);

// Bregman divergence of Psi between two fluxes:
//   D[j1 || j2] = Psi(j1) - Psi(j2) - <j1 - j2, grad Psi(j2)>.
double bregman(const Mobility& mob, const EdgeField& j1, const EdgeField& j2);

// Closed-form dissipation pair bundled with a brute-force conjugacy oracle.
// psi_via_oracle computes Psi(j) by the grid-sup Legendre transform of
// Psi*, edge by edge (both potentials are separable), independent of the
// closed form it cross-checks.
struct DissipationPair {
  Mobility mobility;

  double psi_value(const EdgeField& j) const { return psi(mobility, j); }
  double psi_star_value(const EdgeField& f) const { return psi_star(mobility, f); }
  EdgeField psi_gradient(const EdgeField& j) const { return psi_grad(mobility, j); }
  EdgeField psi_star_gradient(const EdgeField& f) const {
    return psi_star_grad(mobility, f);
  }
  double psi_via_oracle(const EdgeField& j, const OracleGrid& grid = {}) const;
};

DissipationPair dissipation_pair(const ChainSpec& spec, const Density& rho);

// --- iso-dissipation forces -------------------------------------------------
//
// An iso-dissipation force is any field on the level set Psi*(.) = Psi*(F).
// The level set is a continuum; the selectors below pick members:
//   FlipEdges     per-edge sign flips (Psi* is even edgewise),
//   TwoEdgeMove   perturb one edge by delta, restore the level on another
//                 edge by a bisection solve,
//   ProvidedForce an externally constructed member, e.g. the dual force.

struct FlipEdges {
  std::vector<int> edges;  // indices into the support; empty = identity
};

struct TwoEdgeMove {
  int perturbed_edge = 0;
  int balancing_edge = 1;
  double delta = 0.0;
};

struct ProvidedForce {
  EdgeField field;
};

using IsoSelector = std::variant<FlipEdges, TwoEdgeMove, ProvidedForce>;

// Returns a force on the Psi* level set of F, |Psi*(F_iso) - Psi*(F)| <=
// 1e-10. Throws LevelSetInfeasible when the balancing equation of a
// TwoEdgeMove has no solution, NotOnLevelSet when a ProvidedForce misses the
// level set.
EdgeField iso_force_family(const Mobility& mob, const EdgeField& force,
                           const IsoSelector& selector);

// F_S = (F + F_iso)/2, F_A = (F - F_iso)/2; recomposes exactly.
std::pair<EdgeField, EdgeField> force_split(const EdgeField& force,
                                            const EdgeField& force_iso);

struct EntropyDecomposition {
  double entropy_production = 0.0;  // 2 <j, F>
  double term1 = 0.0;               // D[j || -j_iso]
  double term2 = 0.0;               // D[j ||  j_iso]
  double defect = 0.0;              // |e - term1 - term2|
  double level_set_defect = 0.0;    // |Psi*(F_iso) - Psi*(F)|
};

// Bregman decomposition of the entropy production over an iso-dissipation
// force: e = D[j || -j_iso] + D[j || j_iso] with j_iso = a sinh(F_iso/2).
// Throws NotOnLevelSet when |Psi*(F_iso) - Psi*(F)| > 1e-8 (looser than
// arithmetic tolerance: iso-forces may come from a bisection solve).
EntropyDecomposition entropy_decomposition(const ChainSpec& spec,
                                           const Density& rho,
                                           const EdgeField& force_iso);

}  // namespace nonrev
