#pragma once

#include <functional>

#include "nonrev/types.hpp"

namespace nonrev {

struct NewtonConfig {
  double grad_tol = 1e-10;
  int max_iter = 200;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
};

struct NewtonResult {
  Vector x;
  double value = 0.0;
  double residual = 0.0;  // ||grad||_inf at x
  int iterations = 0;
};

using ScalarFn = std::function<double(const Vector&)>;
using GradFn = std::function<Vector(const Vector&)>;
using HessFn = std::function<Matrix(const Vector&)>;

// Damped Newton with Armijo backtracking for smooth convex minimization.
// gauge_invariant marks objectives constant along the all-ones direction
// (state Hamiltonians): the Hessian is regularized by a rank-one term in
// that direction, which leaves the step on the quotient untouched. Falls
// back to a gradient step when the Hessian solve fails; throws NoConvergence
// after max_iter iterations.
NewtonResult newton_minimize(const ScalarFn& value, const GradFn& grad,
                             const HessFn& hess, const Vector& x0,
                             const NewtonConfig& cfg = {},
                             bool gauge_invariant = false);

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for a scalar unimodal function on [a, b].
GoldenResult golden_section_minimize(const std::function<double(double)>& f,
                                     double a, double b, double tol = 1e-12);

struct OracleGrid {
  double lo = -20.0;
  double hi = 20.0;
  int points = 4001;   // per dimension
  int zoom_passes = 2; // extra passes re-gridding around the argmax
};

// Brute-force Legendre transform sup_x { <slope,x> - f(x) } over a tensor
// grid, one or two dimensions. A single pass has accuracy O(step^2 *
// curvature); each zoom pass re-grids the cell around the argmax, so the
// final accuracy is the squared final step times the curvature. Throws
// RangeClipped when the first-pass argmax lies on the grid boundary.
double legendre_oracle(const ScalarFn& f, const Vector& slope,
                       const OracleGrid& grid = {});

// One classical RK4 step for x' = f(x). on_stage, when given, sees every
// internal stage state (feasibility checks).
Vector rk4_step(const std::function<Vector(const Vector&)>& f, const Vector& x,
                double dt,
                const std::function<void(const Vector&)>& on_stage = {});

}  // namespace nonrev
