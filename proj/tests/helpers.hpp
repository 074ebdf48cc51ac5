#pragma once

#include <random>

#include "nonrev/chain.hpp"
#include "nonrev/types.hpp"

namespace nonrev::testing {

// Two-state chain with r12 = 2, r21 = 1; pi = (1/3, 2/3).
inline ChainSpec make_c2() {
  Matrix r = Matrix::Zero(2, 2);
  r(0, 1) = 2.0;
  r(1, 0) = 1.0;
  return ChainSpec(std::move(r));
}

// Three-cycle, clockwise rate 2, counterclockwise rate 1; pi uniform.
inline ChainSpec make_r3() {
  Matrix r = Matrix::Zero(3, 3);
  r(0, 1) = r(1, 2) = r(2, 0) = 2.0;
  r(1, 0) = r(2, 1) = r(0, 2) = 1.0;
  return ChainSpec(std::move(r));
}

// Irreducible chain with symmetric support: a ring backbone plus random
// chords, all rates drawn from [0.2, 2.5].
inline ChainSpec random_chain(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> rate(0.2, 2.5);
  std::bernoulli_distribution chord(0.4);
  Matrix r = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    const int y = (x + 1) % n;
    r(x, y) = rate(rng);
    r(y, x) = rate(rng);
  }
  for (int x = 0; x < n; ++x)
    for (int y = x + 2; y < n; ++y) {
      if ((x + 1) % n == y || (y + 1) % n == x) continue;
      if (chord(rng)) {
        r(x, y) = rate(rng);
        r(y, x) = rate(rng);
      }
    }
  return ChainSpec(std::move(r));
}

// Detailed-balance chain: r_xy = c_xy / w_x with symmetric conductances,
// stationary measure proportional to w.
inline ChainSpec random_db_chain(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unif(0.3, 2.0);
  Vector w(n);
  for (int x = 0; x < n; ++x) w(x) = unif(rng);
  Matrix r = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      const double c = unif(rng);
      r(x, y) = c / w(x);
      r(y, x) = c / w(y);
    }
  return ChainSpec(std::move(r));
}

inline Density random_positive_density(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  Vector v(n);
  for (int x = 0; x < n; ++x) v(x) = unif(rng);
  v /= v.sum();
  return Density(std::move(v));
}

inline Vector random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

}  // namespace nonrev::testing
