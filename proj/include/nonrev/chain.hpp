#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nonrev/types.hpp"

namespace nonrev {

// Finite-state Markov jump process given by its transition rates r_xy >= 0,
// x != y. The diagonal is implied (-sum of the row's off-diagonal rates) and
// never stored. Instances are treated as immutable once built; all operations
// below are pure functions.
struct ChainSpec {
  Matrix rates;                     // rates(x,y) = r_xy, zero diagonal
  std::vector<std::string> labels;  // optional, size 0 or n_states

  ChainSpec() = default;
  explicit ChainSpec(Matrix r, std::vector<std::string> state_labels = {});

  int n_states() const { return static_cast<int>(rates.rows()); }
  double rate(int x, int y) const { return rates(x, y); }
  std::string label(int x) const;
};

struct ValidationReport {
  int n_states = 0;
  bool rates_nonnegative = true;
  bool support_symmetric = true;
  bool irreducible = true;
  // Ordered pairs (x,y) with r_xy > 0 but r_yx == 0.
  std::vector<std::pair<int, int>> asymmetric_edges;
  int n_strongly_connected_components = 1;

  bool ok() const { return rates_nonnegative && support_symmetric && irreducible; }
};

// Reachability-closure check of irreducibility plus support symmetry and
// rate positivity. Never throws; downstream operations reject invalid specs.
ValidationReport validate(const ChainSpec& spec);

// Forward (density) generator W with W(y,x) = r_xy for x != y, columns
// summing to zero: d/dt rho = W rho. The backward generator (acting on
// observables) is its transpose.
Matrix generator(const ChainSpec& spec);

// Unique stationary distribution: W pi = 0, sum pi = 1, pi > 0.
// Dense LU on W with one row replaced by the normalization constraint, plus
// one iterative-refinement pass. Throws SingularSystem when the null space
// is not one-dimensional or the solution is not strictly positive.
Density stationary(const ChainSpec& spec);

struct EvolveResult {
  std::vector<double> times;
  std::vector<Density> densities;  // aligned with times

  const Density& final() const { return densities.back(); }
};

// Fixed-step RK4 integration of d/dt rho = W rho on [0, t_end]. The last
// step is shortened to land exactly on t_end. Throws StepTooLarge if an
// intermediate density entry drops below -1e-8.
EvolveResult evolve(const ChainSpec& spec, const Density& rho0, double t_end,
                    double dt);

// pi(x) r_xy == pi(y) r_yx on every edge, within tol * scale.
bool detailed_balance(const ChainSpec& spec, const Density& pi,
                      double tol = 1e-12);

}  // namespace nonrev
