#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nonrev/gillespie.hpp"

using namespace nonrev;
using namespace nonrev::testing;

TEST_CASE("simulate: a two-state loop alternates states") {
  const Trajectory traj = simulate(make_c2(), 0, 50.0, 1);
  REQUIRE(traj.states.size() > 10);
  for (std::size_t k = 1; k < traj.states.size(); ++k)
    CHECK(traj.states[k] == 1 - traj.states[k - 1]);
  for (std::size_t k = 1; k < traj.times.size(); ++k)
    CHECK(traj.times[k] > traj.times[k - 1]);
}

TEST_CASE("simulate: identical seeds give identical trajectories") {
  const Trajectory a = simulate(make_r3(), 0, 100.0, 77);
  const Trajectory b = simulate(make_r3(), 0, 100.0, 77);
  CHECK(a.times == b.times);
  CHECK(a.states == b.states);

  const Trajectory c = simulate(make_r3(), 0, 100.0, 78);
  CHECK(a.states != c.states);
}

TEST_CASE("simulate: holding times follow the exponential law") {
  const ChainSpec spec = make_c2();
  const Trajectory traj = simulate(spec, 0, 2e4, 11);
  double hold = 0.0;
  double count = 0.0;
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k)
    if (traj.states[k] == 0) {
      hold += traj.times[k + 1] - traj.times[k];
      count += 1.0;
    }
  const double mean = hold / count;
  const double expected = 0.5;  // exit rate of state 0 is 2
  CHECK(std::abs(mean - expected) < 3.0 * expected / std::sqrt(count));
}

TEST_CASE("empirical measures on the ring approach pi and the cyclic flux") {
  const ChainSpec spec = make_r3();
  const Trajectory traj = simulate(spec, 0, 1e5, 42);
  const auto [rho_hat, j_hat] = empirical_measures(traj, spec);

  CHECK(std::abs(rho_hat.values.sum() - 1.0) < 1e-14);
  for (int x = 0; x < 3; ++x)
    CHECK(std::abs(rho_hat(x) - 1.0 / 3.0) < 0.01);
  CHECK(std::abs(j_hat.at(0, 1) - 1.0 / 3.0) < 0.02);
  CHECK(std::abs(j_hat.at(1, 2) - 1.0 / 3.0) < 0.02);
  CHECK(std::abs(j_hat.at(2, 0) - 1.0 / 3.0) < 0.02);
}

TEST_CASE("empirical flux of a detailed-balance chain decays like T^{-1/2}") {
  std::mt19937_64 rng(7);
  const ChainSpec spec = random_db_chain(rng, 4);
  double prev = 0.0;
  for (double t_end : {1e3, 1e5}) {
    const Trajectory traj = simulate(spec, 0, t_end, 5);
    const auto [rho_hat, j_hat] = empirical_measures(traj, spec);
    const double mag = j_hat.values.cwiseAbs().maxCoeff();
    if (t_end > 1e3) CHECK(mag < prev);
    prev = mag;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("entropy rate estimate matches 2<j,F> on the ring") {
  const ChainSpec spec = make_r3();
  const Trajectory traj = simulate(spec, 0, 1e5, 42);
  const double estimate = entropy_rate_estimate(traj, spec);
  const double analytic = 2.0 * std::log(2.0);
  CHECK(std::abs(estimate - analytic) / analytic < 0.05);
}

TEST_CASE("entropy rate estimate: detailed balance gives zero") {
  std::mt19937_64 rng(7);
  const ChainSpec spec = random_db_chain(rng, 4);
  const Trajectory traj = simulate(spec, 0, 1e4, 3);
  CHECK(std::abs(entropy_rate_estimate(traj, spec)) < 0.01);
}

TEST_CASE("entropy rate estimate: doubling all rates doubles the value") {
  const ChainSpec spec = make_r3();
  Matrix doubled = spec.rates * 2.0;
  const ChainSpec fast(std::move(doubled));
  const double slow_rate =
      entropy_rate_estimate(simulate(spec, 0, 1e4, 99), spec);
  const double fast_rate =
      entropy_rate_estimate(simulate(fast, 0, 1e4, 99), fast);
  CHECK(fast_rate / slow_rate == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("entropy rate estimate throws on one-way jumps") {
  Matrix r = Matrix::Zero(2, 2);
  r(0, 1) = 1.0;
  r(1, 0) = 0.0;
  const ChainSpec spec(std::move(r));
  const Trajectory traj = simulate(spec, 0, 10.0, 1);
  REQUIRE(traj.states.size() >= 2);  // one jump into the absorbing state
  CHECK_THROWS_AS(entropy_rate_estimate(traj, spec), InfiniteContribution);
}

TEST_CASE("empty trajectories are rejected") {
  Trajectory empty;
  CHECK_THROWS_AS(empirical_measures(empty, make_c2()), EmptyTrajectory);
  CHECK_THROWS_AS(entropy_rate_estimate(empty, make_c2()), EmptyTrajectory);
}
