#pragma once

#include <optional>

#include "nonrev/duality.hpp"
#include "nonrev/force_flux.hpp"
#include "nonrev/solvers.hpp"

namespace nonrev {

// Evaluatable convex Hamiltonian in the tilting variable, with the density
// baked in at construction. Edge-level handles act on edge fields, state-
// level handles on state potentials (and are invariant under adding
// constants; optimizers are reported in the sum-zero gauge).
struct HamiltonianHandle {
  enum class Kind { Edge, State };

  Kind kind = Kind::Edge;
  int dim = 0;
  bool gauge_invariant = false;
  bool vanishes_at_zero = true;  // H(rho, 0) = 0

  ScalarFn value;
  GradFn gradient;
  HessFn hessian;

  // For edge-level handles built from (spec, rho): the mobility/force data
  // behind the handle, restricted to the active edges. Reports use it to
  // measure the pairing coefficient of the Lagrangian closed form.
  struct EdgeContext {
    Mobility mobility;
    EdgeField force;
    std::vector<int> active;  // edge indices contributing to this handle
  };
  std::optional<EdgeContext> edge_context;
};

// Edge-level Hamiltonian H(rho, xi) = 1/2 [ Psi*(F + 2 xi) - Psi*(F) ],
// in closed form sum_e a_e [ cosh(F_e/2 + xi_e) - cosh(F_e/2) ].
// Its gradient at zero is the physical flux a sinh(F/2).
HamiltonianHandle hamiltonian_from_psi(const ChainSpec& spec,
                                       const Density& rho);

// Same closed form, but summing only over the given edge subset. Together
// with the complement it gives an exact two-Hamiltonian split of the full
// edge Hamiltonian.
HamiltonianHandle edge_subset_hamiltonian(const Mobility& mob,
                                          const EdgeField& force,
                                          std::vector<int> edges);

// State-level Hamiltonian from the generator:
// H(rho, xi) = sum_x rho(x) sum_{y != x} r_xy (e^{xi(y) - xi(x)} - 1).
// Gauge-invariant; equals the edge-level Hamiltonian contracted through
// discrete gradients on symmetric-support chains.
HamiltonianHandle hamiltonian_from_generator(const ChainSpec& spec,
                                             const Density& rho);

// Linear Hamiltonian <w, xi>, the antisymmetric part in the linear-part
// decomposition lemma.
HamiltonianHandle linear_hamiltonian(Vector w, HamiltonianHandle::Kind kind);

// h minus the linear term <w, xi>; used to peel a drift term off a state
// Hamiltonian.
HamiltonianHandle subtract_linear(const HamiltonianHandle& h, const Vector& w);

// Recovers the dissipation potential from an edge-level Hamiltonian:
// Psi*(xi) = 2 [ H((xi - F)/2) - H(-F/2) ].
double recover_psi_star(const HamiltonianHandle& h, const EdgeField& force,
                        const EdgeField& xi);

struct LagrangianValue {
  double value = 0.0;
  Vector optimizer;        // xi'
  double residual = 0.0;   // ||grad (H - <j,.>)||_inf at xi'
  std::optional<double> measured_pairing_coefficient;
};

// Legendre transform L(rho, j) = sup_xi { <j, xi> - H(rho, xi) } by damped
// Newton on the strictly convex objective, started at xi = 0 (or x0).
// State-level fluxes must sum to zero, else the sup is infinite. When the
// handle carries edge context and <j, F> is not degenerate, the report
// includes c with L = 1/2 [ Psi(j) - c <j, F> + Psi*(F) ] as measured.
LagrangianValue legendre(const HamiltonianHandle& h, const Vector& j,
                         const NewtonConfig& cfg = {},
                         const std::optional<Vector>& x0 = std::nullopt);
LagrangianValue legendre(const HamiltonianHandle& h, const EdgeField& j,
                         const NewtonConfig& cfg = {});

struct MinHamiltonianResult {
  double value = 0.0;
  Vector xi_star;
  double residual = 0.0;
};

// min_xi H(rho, xi); by duality this equals -L(rho, 0).
MinHamiltonianResult min_hamiltonian(const HamiltonianHandle& h,
                                     const NewtonConfig& cfg = {});

// Midpoint convexity probe: 64 random pairs, tolerance 1e-9.
bool convexity_probe(const HamiltonianHandle& h, int trials = 64,
                     double tol = 1e-9, unsigned seed = 2718u);

// Symmetry probe H(xi) == H(dS - xi): 64 random xi, tolerance 1e-9.
bool reversibility_probe(const HamiltonianHandle& h, const Vector& ds,
                         int trials = 64, double tol = 1e-9,
                         unsigned seed = 3141u);

struct SplitPart {
  double value = 0.0;
  Vector flux_argument;  // s_i = grad H_i(xi')
};

struct SplitReport {
  double lagrangian = 0.0;
  SplitPart part1;
  SplitPart part2;
  Vector xi_prime;
  double residual = 0.0;
  double sum_defect = 0.0;  // |L - L1 - L2|
  std::optional<double> measured_pairing_coefficient;
};

// Two-Hamiltonian decomposition: with H = H1 + H2 and xi' solving
// grad H(xi') = j,
//   L(rho, j) = L1(rho, grad H1(xi')) + L2(rho, grad H2(xi')),
// both parts nonnegative. Throws NonConvexPart when a part fails the
// convexity probe.
SplitReport decompose(const HamiltonianHandle& h1, const HamiltonianHandle& h2,
                      const Vector& j, const NewtonConfig& cfg = {});

// Zero-flux value of a reversible Hamiltonian: L2(rho, 0) = 1/2 Psi2*(dS)
// with Psi2*(xi) = 2 [ H2((xi + dS)/2) - H2(dS/2) ]. Throws NotReversible
// when the symmetry probe fails.
double reversible_value(const HamiltonianHandle& h2, const Vector& ds);
double reversible_value(const HamiltonianHandle& h2, const StatePotential& ds);

// Relative-entropy differential log(rho/pi) in the sum-zero gauge, the
// natural symmetry potential of state Hamiltonians of detailed-balance
// chains.
StatePotential entropy_differential(const Density& rho, const Density& pi);

// H = H1 + H2 with H2 independent of xi: L(rho, 0) = L1(rho, 0) - H2.
double constant_part_value(const HamiltonianHandle& h1, double h2_of_rho,
                           const NewtonConfig& cfg = {});

struct LinearPartReport {
  double lagrangian_zero = 0.0;    // L(rho,0) = L2(rho, -W)
  double psi2_of_minus_w = 0.0;    // Psi2(-W)
  double psi2_star_of_ds = 0.0;    // Psi2*(dS)
  double w_ds_pairing = 0.0;       // <W, dS>
  double expansion_value = 0.0;    // 1/2 Psi2(-W) + 1/2 Psi2*(dS) + <W,dS>
  double expansion_defect = 0.0;
  double orthogonal_value = 0.0;   // Psi2(-W) + Psi2*(-dS/2)
  double orthogonal_defect = 0.0;
  double residual = 0.0;
};

// H = <W, xi> + H2 with H2 reversible w.r.t. dS. The asserted identity is
// L(rho, 0) = L2(rho, -W) (an exact consequence of the definition); the
// report also evaluates the textbook expansion in Psi2/Psi2* and the
// orthogonal-case formula and records their numeric defects instead of
// asserting them.
LinearPartReport linear_part_value(const Vector& w_field,
                                   const HamiltonianHandle& h2,
                                   const Vector& ds,
                                   const NewtonConfig& cfg = {});

struct DonskerVaradhanResult {
  double value = 0.0;         // sup_xi -H(rho, xi), state level
  double value_u_form = 0.0;  // -sum_x rho(x) (L u)(x)/u(x) at u = e^{xi*}
  double defect = 0.0;
  Vector xi_star;
  double residual = 0.0;
};

// Rate function of the empirical occupation measure. Vanishes exactly at
// the stationary distribution and is positive elsewhere.
DonskerVaradhanResult donsker_varadhan(const ChainSpec& spec,
                                       const Density& rho,
                                       const NewtonConfig& cfg = {});

}  // namespace nonrev
