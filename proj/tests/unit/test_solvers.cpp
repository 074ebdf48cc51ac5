#include <doctest.h>

#include <Eigen/LU>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "nonrev/solvers.hpp"

using namespace nonrev;

TEST_CASE("newton finds the minimum of sum cosh") {
  const int n = 4;
  auto value = [n](const Vector& x) { return x.array().cosh().sum() - n; };
  auto grad = [](const Vector& x) -> Vector { return x.array().sinh(); };
  auto hess = [](const Vector& x) -> Matrix {
    return Vector(x.array().cosh()).asDiagonal();
  };
  Vector x0 = Vector::Constant(n, 1.5);
  const NewtonResult res = newton_minimize(value, grad, hess, x0);
  CHECK(res.residual <= 1e-10);
  CHECK(res.x.cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(res.value) < 1e-12);
}

TEST_CASE("newton on a quadratic matches the dense linear solve") {
  std::mt19937_64 rng(5);
  Matrix m = Matrix::Random(5, 5);
  Matrix a = m * m.transpose() + 5.0 * Matrix::Identity(5, 5);
  Vector b = testing::random_vector(rng, 5);

  auto value = [&](const Vector& x) { return 0.5 * x.dot(a * x) - b.dot(x); };
  auto grad = [&](const Vector& x) -> Vector { return a * x - b; };
  auto hess = [&](const Vector&) -> Matrix { return a; };
  const NewtonResult res =
      newton_minimize(value, grad, hess, Vector::Zero(5));

  const Vector oracle = Eigen::PartialPivLU<Matrix>(a).solve(b);
  CHECK((res.x - oracle).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("newton agrees with golden section on a 1-D tilted objective") {
  // Occupation-rate objective of the two-state chain at the flat density,
  // reduced to the gauge coordinate t = xi_2 - xi_1.
  const double p = 0.5 * 2.0;
  const double q = 0.5 * 1.0;
  auto f = [&](double t) { return p * std::expm1(t) + q * std::expm1(-t); };

  const GoldenResult gold = golden_section_minimize(f, -5.0, 5.0);

  auto value = [&](const Vector& x) { return f(x(0)); };
  auto grad = [&](const Vector& x) -> Vector {
    Vector g(1);
    g(0) = p * std::exp(x(0)) - q * std::exp(-x(0));
    return g;
  };
  auto hess = [&](const Vector& x) -> Matrix {
    Matrix h(1, 1);
    h(0, 0) = p * std::exp(x(0)) + q * std::exp(-x(0));
    return h;
  };
  const NewtonResult res = newton_minimize(value, grad, hess, Vector::Zero(1));
  CHECK(res.value == doctest::Approx(gold.value).epsilon(1e-8));
  // Closed form: min = 2 sqrt(pq) - (p + q).
  CHECK(res.value ==
        doctest::Approx(2.0 * std::sqrt(p * q) - p - q).epsilon(1e-10));
}

TEST_CASE("newton reports NoConvergence on an unbounded objective") {
  auto value = [](const Vector& x) { return x(0); };
  auto grad = [](const Vector&) -> Vector { return Vector::Ones(1); };
  auto hess = [](const Vector&) -> Matrix { return Matrix::Zero(1, 1); };
  CHECK_THROWS_AS(newton_minimize(value, grad, hess, Vector::Zero(1)),
                  NoConvergence);
}

TEST_CASE("legendre oracle: self-conjugate quadratic") {
  auto f = [](const Vector& x) { return 0.5 * x(0) * x(0); };
  Vector slope(1);
  slope(0) = 1.0;
  CHECK(legendre_oracle(f, slope) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("legendre oracle: single-edge dissipation potential") {
  // Conjugate of 2a(cosh(f/2)-1) at slope j is the closed form
  // 2 j arsinh(j/a) - 2 sqrt(a^2+j^2) + 2a.
  const double a = 1.0;
  auto f = [a](const Vector& x) {
    return 2.0 * a * (std::cosh(x(0) / 2.0) - 1.0);
  };
  for (double j : {0.3, -1.2, 2.0}) {
    Vector slope(1);
    slope(0) = j;
    const double closed =
        2.0 * j * std::asinh(j / a) - 2.0 * std::hypot(a, j) + 2.0 * a;
    CHECK(legendre_oracle(f, slope) == doctest::Approx(closed).epsilon(1e-6));
  }
}

TEST_CASE("legendre oracle: slope outside the gradient range clips") {
  auto f = [](const Vector& x) { return 0.5 * x(0) * x(0); };
  Vector slope(1);
  slope(0) = 30.0;  // argmax at x = 30, beyond the default [-20, 20]
  CHECK_THROWS_AS(legendre_oracle(f, slope), RangeClipped);
}

TEST_CASE("legendre oracle: two-dimensional separable check") {
  auto f = [](const Vector& x) {
    return 2.0 * (std::cosh(x(0) / 2.0) - 1.0) +
           3.0 * (std::cosh(x(1) / 2.0) - 1.0);
  };
  Vector slope(2);
  slope << 0.7, -0.4;
  auto edge = [](double a, double j) {
    return 2.0 * j * std::asinh(j / a) - 2.0 * std::hypot(a, j) + 2.0 * a;
  };
  const double closed = edge(1.0, 0.7) + edge(1.5, -0.4);
  OracleGrid grid;
  grid.points = 801;
  grid.zoom_passes = 3;
  CHECK(legendre_oracle(f, slope, grid) ==
        doctest::Approx(closed).epsilon(1e-6));
}

TEST_CASE("rk4 step has fourth-order local accuracy") {
  auto f = [](const Vector& x) -> Vector { return -x; };
  Vector x0 = Vector::Ones(1);
  const double dt = 0.1;
  const Vector x1 = rk4_step(f, x0, dt);
  CHECK(std::abs(x1(0) - std::exp(-dt)) < 1e-6);

  const Vector x1_half = rk4_step(f, rk4_step(f, x0, dt / 2), dt / 2);
  const double err_full = std::abs(x1(0) - std::exp(-dt));
  const double err_half = std::abs(x1_half(0) - std::exp(-dt));
  CHECK(err_half < err_full / 8.0);  // at least cubic gain per halving
}

TEST_CASE("golden section locates an asymmetric minimum") {
  auto f = [](double t) { return std::exp(t) - 2.0 * t; };
  const GoldenResult res = golden_section_minimize(f, -2.0, 3.0);
  CHECK(res.x == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(res.value == doctest::Approx(2.0 - 2.0 * std::log(2.0)).epsilon(1e-12));
}
