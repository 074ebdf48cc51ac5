#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "nonrev/errors.hpp"

namespace nonrev {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Probability vector over the states of a chain (or cell masses of a grid).
// Entries are nonnegative and sum to one within 1e-12.
struct Density {
  Vector values;

  Density() = default;
  explicit Density(Vector v);

  int size() const { return static_cast<int>(values.size()); }
  double operator()(int x) const { return values(x); }
};

Density uniform_density(int n);
Density point_density(int n, int x);

// Real function on states, used as the tilting argument of state-level
// Hamiltonians. Gauge: entries sum to zero (state Hamiltonians are invariant
// under adding constants, so the gauge just pins a representative).
struct StatePotential {
  Vector values;

  StatePotential() = default;
  explicit StatePotential(Vector v);

  int size() const { return static_cast<int>(values.size()); }
  double operator()(int x) const { return values(x); }
};

// Subtract the mean so entries sum to zero.
Vector gauge_fix(const Vector& xi);

}  // namespace nonrev
