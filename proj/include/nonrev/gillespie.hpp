#pragma once

#include <cstdint>

#include "nonrev/force_flux.hpp"

namespace nonrev {

// One continuous-time trajectory. states[k] is entered at times[k];
// times[0] = 0 holds the initial state, subsequent entries are jump times.
// The trajectory is truncated at t_end (the final holding interval is
// clipped there).
struct Trajectory {
  std::vector<double> times;
  std::vector<int> states;
  std::uint64_t seed = 0;
  double t_end = 0.0;
  int n_states = 0;
};

// Exponential-clock jump simulation, reproducible per seed (mt19937_64 with
// inverse-CDF sampling for both the holding times and the jump targets, so
// trajectories are bit-stable across runs of the same build).
Trajectory simulate(const ChainSpec& spec, int x0, double t_end,
                    std::uint64_t seed);

// Empirical occupation measure (time fraction per state) and empirical edge
// flux (net jump count over the undirected support, divided by total time).
std::pair<Density, EdgeField> empirical_measures(const Trajectory& traj,
                                                 const ChainSpec& spec);

// Entropy production estimator. The time-averaged sum of log(r_xy / r_yx)
// over jumps converges to <j, F> at stationarity; the returned value is
// twice that, matching the e = 2 <j, F> normalization used throughout.
// Throws InfiniteContribution when a jump crossed an edge with zero reverse
// rate.
double entropy_rate_estimate(const Trajectory& traj, const ChainSpec& spec);

}  // namespace nonrev
