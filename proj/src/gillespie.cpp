#include "nonrev/gillespie.hpp"

#include <cmath>
#include <random>
#include <string>

namespace nonrev {

Trajectory simulate(const ChainSpec& spec, int x0, double t_end,
                    std::uint64_t seed) {
  const int n = spec.n_states();
  if (x0 < 0 || x0 >= n) throw InvalidSpec("initial state out of range");
  if (t_end <= 0.0) throw InvalidSpec("simulation horizon must be positive");

  std::mt19937_64 rng(seed);
  // Inverse-CDF uniforms keep trajectories independent of the standard
  // library's distribution internals.
  auto uniform = [&rng]() {
    return (rng() >> 11) * 0x1.0p-53;  // [0, 1)
  };

  Trajectory traj;
  traj.seed = seed;
  traj.t_end = t_end;
  traj.n_states = n;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);

  int x = x0;
  double t = 0.0;
  while (true) {
    const double exit_rate = spec.rates.row(x).sum();
    if (exit_rate <= 0.0) break;  // absorbing state: trajectory stalls
    const double hold = -std::log(1.0 - uniform()) / exit_rate;
    t += hold;
    if (t >= t_end) break;

    // Pick the target in proportion to its rate.
    double u = uniform() * exit_rate;
    int y = -1;
    for (int cand = 0; cand < n; ++cand) {
      u -= spec.rates(x, cand);
      if (u <= 0.0 && spec.rates(x, cand) > 0.0) {
        y = cand;
        break;
      }
    }
    if (y < 0) {
      for (int cand = n - 1; cand >= 0; --cand)
        if (spec.rates(x, cand) > 0.0) {
          y = cand;
          break;
        }
    }
    x = y;
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

std::pair<Density, EdgeField> empirical_measures(const Trajectory& traj,
                                                 const ChainSpec& spec) {
  if (traj.states.empty() || traj.t_end <= 0.0)
    throw EmptyTrajectory("trajectory has no content");
  const int n = spec.n_states();

  Vector occupation = Vector::Zero(n);
  const std::size_t jumps = traj.times.size();
  for (std::size_t k = 0; k < jumps; ++k) {
    const double start = traj.times[k];
    const double stop = k + 1 < jumps ? traj.times[k + 1] : traj.t_end;
    occupation(traj.states[k]) += stop - start;
  }
  occupation /= traj.t_end;

  const EdgeSet support = edge_set(spec);
  Vector net = Vector::Zero(support.size());
  for (std::size_t k = 1; k < jumps; ++k) {
    const int x = traj.states[k - 1];
    const int y = traj.states[k];
    const int e = support.index(x, y);
    if (e >= 0) net(e) += x < y ? 1.0 : -1.0;
  }
  net /= traj.t_end;

  return {Density(occupation / occupation.sum()),
          EdgeField(support, std::move(net))};
}

double entropy_rate_estimate(const Trajectory& traj, const ChainSpec& spec) {
  if (traj.states.empty() || traj.t_end <= 0.0)
    throw EmptyTrajectory("trajectory has no content");
  double total = 0.0;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    const int x = traj.states[k - 1];
    const int y = traj.states[k];
    const double fwd = spec.rate(x, y);
    const double bwd = spec.rate(y, x);
    if (bwd <= 0.0)
      throw InfiniteContribution("jump " + std::to_string(k) +
                                 " used an edge with zero reverse rate");
    total += std::log(fwd / bwd);
  }
  return 2.0 * total / traj.t_end;
}

}  // namespace nonrev
