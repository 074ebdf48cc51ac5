#include "nonrev/solvers.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>

namespace nonrev {

NewtonResult newton_minimize(const ScalarFn& value, const GradFn& grad,
                             const HessFn& hess, const Vector& x0,
                             const NewtonConfig& cfg, bool gauge_invariant) {
  Vector x = x0;
  for (int iter = 0; iter <= cfg.max_iter; ++iter) {
    const Vector g = grad(x);
    const double residual = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
    if (residual <= cfg.grad_tol)
      return NewtonResult{x, value(x), residual, iter};

    Matrix h = hess(x);
    if (gauge_invariant) {
      // Objective is constant along the all-ones direction, so the Hessian
      // is singular there; a rank-one shift restores definiteness without
      // moving the step off the quotient (the gradient sums to zero).
      const double sigma =
          std::max(1e-3, h.cwiseAbs().maxCoeff() / h.rows());
      h += sigma * Matrix::Ones(h.rows(), h.cols());
    }

    auto try_solve = [&](const Matrix& m, Vector& d) {
      Eigen::LDLT<Matrix> ldlt(m);
      if (ldlt.info() != Eigen::Success) return false;
      d = ldlt.solve(-g);
      return d.allFinite() && g.dot(d) < 0.0;
    };

    Vector direction;
    if (!try_solve(h, direction)) {
      // Singular Hessian (e.g. a Hamiltonian supported on an edge subset):
      // a small ridge restores solvability; coordinates with zero gradient
      // and zero curvature then simply stay put.
      const double ridge = 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff());
      const Matrix damped = h + ridge * Matrix::Identity(h.rows(), h.cols());
      if (!try_solve(damped, direction)) direction = -g;
    }

    // Armijo backtracking line search. The acceptance threshold carries a
    // small rounding allowance so steps near the optimum, where the true
    // decrease sits below the evaluation noise, are not rejected.
    const double phi0 = value(x);
    const double noise = 1e-14 * (1.0 + std::abs(phi0));
    const double slope = g.dot(direction);
    double t = 1.0;
    while (t > 1e-16) {
      const double phi = value(x + t * direction);
      if (std::isfinite(phi) && phi <= phi0 + cfg.armijo_c * t * slope + noise)
        break;
      t *= cfg.backtrack;
    }
    if (t <= 1e-16)
      throw NoConvergence("newton_minimize: line search failed at iteration " +
                          std::to_string(iter));
    x += t * direction;
  }
  throw NoConvergence("newton_minimize: no convergence after " +
                      std::to_string(cfg.max_iter) + " iterations");
}

GoldenResult golden_section_minimize(const std::function<double(double)>& f,
                                     double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double x = 0.5 * (a + b);
  return GoldenResult{x, f(x)};
}

namespace {

struct GridScan {
  Vector argmax;
  double value;
  bool on_boundary;
};

GridScan scan_grid(const ScalarFn& f, const Vector& slope, const Vector& lo,
                   const Vector& hi, int points) {
  const int dims = static_cast<int>(slope.size());
  GridScan best{Vector::Zero(dims), -std::numeric_limits<double>::infinity(),
                false};
  Vector x(dims);
  if (dims == 1) {
    const double step = (hi(0) - lo(0)) / (points - 1);
    int best_i = 0;
    for (int i = 0; i < points; ++i) {
      x(0) = lo(0) + i * step;
      const double g = slope(0) * x(0) - f(x);
      if (g > best.value) {
        best.value = g;
        best.argmax = x;
        best_i = i;
      }
    }
    best.on_boundary = best_i == 0 || best_i == points - 1;
  } else {
    const double step0 = (hi(0) - lo(0)) / (points - 1);
    const double step1 = (hi(1) - lo(1)) / (points - 1);
    int best_i = 0, best_j = 0;
    for (int i = 0; i < points; ++i) {
      x(0) = lo(0) + i * step0;
      for (int j = 0; j < points; ++j) {
        x(1) = lo(1) + j * step1;
        const double g = slope(0) * x(0) + slope(1) * x(1) - f(x);
        if (g > best.value) {
          best.value = g;
          best.argmax = x;
          best_i = i;
          best_j = j;
        }
      }
    }
    best.on_boundary = best_i == 0 || best_i == points - 1 || best_j == 0 ||
                       best_j == points - 1;
  }
  return best;
}

}  // namespace

double legendre_oracle(const ScalarFn& f, const Vector& slope,
                       const OracleGrid& grid) {
  const int dims = static_cast<int>(slope.size());
  if (dims < 1 || dims > 2)
    throw std::invalid_argument("legendre_oracle supports 1 or 2 dimensions");
  if (grid.points < 3) throw std::invalid_argument("grid too coarse");

  Vector lo = Vector::Constant(dims, grid.lo);
  Vector hi = Vector::Constant(dims, grid.hi);
  GridScan best = scan_grid(f, slope, lo, hi, grid.points);
  if (best.on_boundary)
    throw RangeClipped("legendre_oracle: argmax on grid boundary");

  for (int pass = 0; pass < grid.zoom_passes; ++pass) {
    const Vector cell = (hi - lo) / (grid.points - 1);
    lo = best.argmax - cell;
    hi = best.argmax + cell;
    const GridScan refined = scan_grid(f, slope, lo, hi, grid.points);
    if (refined.value > best.value) best = refined;
  }
  return best.value;
}

Vector rk4_step(const std::function<Vector(const Vector&)>& f, const Vector& x,
                double dt, const std::function<void(const Vector&)>& on_stage) {
  auto check = [&](const Vector& s) {
    if (on_stage) on_stage(s);
  };
  const Vector k1 = f(x);
  const Vector s2 = x + 0.5 * dt * k1;
  check(s2);
  const Vector k2 = f(s2);
  const Vector s3 = x + 0.5 * dt * k2;
  check(s3);
  const Vector k3 = f(s3);
  const Vector s4 = x + dt * k3;
  check(s4);
  const Vector k4 = f(s4);
  Vector next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  check(next);
  return next;
}

}  // namespace nonrev
